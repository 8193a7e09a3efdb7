"""
Command-line interface.

Each pipeline stage is also usable standalone through the module
interchange formats (records .jsonl, edge-list .tsv, partition .tsv),
so failures are debuggable per stage; `run` executes everything and
writes the bundle plus per-module reports.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import server as server_mod
from .clustering import ClusterOptions, read_partition, spectral_partition, write_partition
from .compare import (
    classify_patterns,
    project_partition,
    overlap_rate,
    read_factor_tsv,
    similarity_graph_json,
    write_projection_tsv,
)
from .ingest import RecordSet, write_records_jsonl
from .labeling import CorpusIndex, label_cluster
from .metrics import compute_metrics, write_metrics_tsv
from .network import (
    build_network,
    cited_keys,
    merge_networks,
    read_edgelist,
    select_top_cited,
    slice_records,
    write_edgelist,
)
from .pipeline import (
    AnalysisConfig,
    ConfigError,
    PipelineError,
    export_graphml,
    load_inputs,
    network_from_bundle,
    partition_from_bundle,
    read_bundle,
    run_pipeline,
    write_bundle,
)
from .summarize import summarize_cluster
from .temporal import write_bursts_tsv, BurstResult, BurstInterval

CONFIG_ENV = "COCITER_CONFIG"

log = logging.getLogger("cociter")


def _add_config_flags(p: argparse.ArgumentParser, fields: set[str]) -> None:
    """Flags mirror AnalysisConfig fields one-to-one, kebab-cased."""
    if "unit" in fields:
        p.add_argument("--unit", choices=("cited_author", "cited_reference"))
    if "start_year" in fields:
        p.add_argument("--start-year", type=int)
    if "end_year" in fields:
        p.add_argument("--end-year", type=int)
    if "slice_len" in fields:
        p.add_argument("--slice-len", type=int)
    if "top_n" in fields:
        p.add_argument("--top-n", type=int)
    if "measure" in fields:
        p.add_argument("--measure", choices=("cosine", "dice", "jaccard"))
    if "doc_types" in fields:
        p.add_argument("--doc-types", nargs="+", choices=("article", "review", "other"))
    if "seed" in fields:
        p.add_argument("--seed", type=int)
    if "restarts" in fields:
        p.add_argument("--restarts", type=int)
    if "max_k" in fields:
        p.add_argument("--max-k", type=int)
    if "burst_s" in fields:
        p.add_argument("--burst-s", type=float)
    if "burst_gamma" in fields:
        p.add_argument("--burst-gamma", type=float)
    if "label_depth" in fields:
        p.add_argument("--label-depth", type=int)
    if "summary_k" in fields:
        p.add_argument("--summary-k", type=int)
    if "summary_ranker" in fields:
        p.add_argument("--summary-ranker", choices=("energy", "gtf", "gtf_idf"))
    if "output_dir" in fields:
        p.add_argument("--output-dir")
    if "port" in fields:
        p.add_argument("--port", type=int)


_ALL_FIELDS = set(AnalysisConfig.__dataclass_fields__)


def _config_from_args(args: argparse.Namespace) -> AnalysisConfig:
    """defaults < config file ($COCITER_CONFIG or --config) < CLI flags."""
    merged: dict = {}
    config_path = getattr(args, "config", None) or os.environ.get(CONFIG_ENV)
    if config_path:
        merged.update(json.loads(Path(config_path).read_text(encoding="utf-8")))
    for name in _ALL_FIELDS - {"inputs"}:
        value = getattr(args, name, None)
        if value is not None:
            merged[name] = value
    if getattr(args, "inputs", None):
        merged["inputs"] = list(args.inputs)
    return AnalysisConfig.from_json(merged)


def _records_and_partition(args):
    records = load_inputs([args.records])
    partition_text = Path(args.partition).read_text(encoding="utf-8")
    partition = read_partition(partition_text)
    return records, partition


def _citers_by_cluster(records, partition, unit):
    citers = {cid: [] for cid in partition.clusters}
    for record in sorted(records, key=lambda r: r.uid):
        keys = cited_keys(record, unit)
        for cid, members in partition.clusters.items():
            if keys & members:
                citers[cid].append(record)
    return citers


def _write_or_print(text: str, out: str | None) -> None:
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_ingest(args) -> int:
    rs = load_inputs(args.inputs)
    write_records_jsonl(rs, args.output)
    prov = rs.provenance
    print(
        f"read {prov.records_read} records from {len(prov.files)} file(s); "
        f"rejected {prov.records_rejected}, skipped lines {prov.lines_skipped}, "
        f"malformed CR lines {prov.malformed_cr_lines}"
    )
    return 0


def cmd_network(args) -> int:
    config = _config_from_args(args)
    rs = load_inputs([args.records])
    if config.doc_types is not None:
        allowed = set(config.doc_types)
        rs = RecordSet(tuple(r for r in rs if r.doc_type in allowed), rs.provenance)
    slices = slice_records(rs, config.start_year, config.end_year, config.slice_len)
    nets = []
    for sl in slices:
        keys = select_top_cited(sl, config.top_n, config.unit) if sl.records else []
        nets.append(build_network(sl, keys, config.measure, config.unit))
    merged = merge_networks(nets)
    _write_or_print(write_edgelist(merged), args.output)
    print(f"network: {len(merged.nodes)} nodes, {len(merged.links)} links", file=sys.stderr)
    return 0


def cmd_cluster(args) -> int:
    net = read_edgelist(Path(args.edges).read_text(encoding="utf-8"))
    opts = ClusterOptions(
        seed=args.seed if args.seed is not None else 42,
        restarts=args.restarts if args.restarts is not None else 10,
        max_k=args.max_k if args.max_k is not None else 50,
    )
    partition = spectral_partition(net, opts)
    _write_or_print(write_partition(partition), args.output)
    print(f"k={partition.k} ncut={partition.ncut_value:.6f}", file=sys.stderr)
    return 0


def cmd_metrics(args) -> int:
    net = read_edgelist(Path(args.edges).read_text(encoding="utf-8"))
    partition = read_partition(Path(args.partition).read_text(encoding="utf-8"), net)
    node, part = compute_metrics(net, partition)
    _write_or_print(write_metrics_tsv(partition, node, part), args.output)
    return 0


def cmd_label(args) -> int:
    records, partition = _records_and_partition(args)
    citers = _citers_by_cluster(records, partition, args.unit or "cited_reference")
    corpus = CorpusIndex(list(records))
    depth = args.label_depth if args.label_depth is not None else 3
    labels = {
        cid: label_cluster(cid, [r.uid for r in citers[cid]], corpus, depth=depth).to_json()
        for cid in sorted(partition.clusters)
    }
    _write_or_print(json.dumps(labels, indent=2, sort_keys=True) + "\n", args.output)
    return 0


def cmd_summarize(args) -> int:
    records, partition = _records_and_partition(args)
    citers = _citers_by_cluster(records, partition, args.unit or "cited_reference")
    k = args.summary_k if args.summary_k is not None else 5
    ranker = args.summary_ranker or "energy"
    summaries = {
        cid: summarize_cluster(cid, citers[cid], k, ranker).to_json()
        for cid in sorted(partition.clusters)
    }
    _write_or_print(json.dumps(summaries, indent=2, sort_keys=True) + "\n", args.output)
    return 0


def cmd_compare(args) -> int:
    partition = read_partition(Path(args.partition).read_text(encoding="utf-8"))
    solution = read_factor_tsv(Path(args.factors).read_text(encoding="utf-8"))
    table = project_partition(partition, solution)
    rate = overlap_rate(partition, solution)
    _write_or_print(write_projection_tsv(table), args.output)
    if args.similarity_json:
        Path(args.similarity_json).write_text(similarity_graph_json(table), encoding="utf-8")
    patterns = classify_patterns(table)
    print(f"overlap_rate={rate:.2f}", file=sys.stderr)
    for kind in ("type1", "type2", "type3"):
        for entry in patterns[kind]:
            print(f"{kind}: {entry}", file=sys.stderr)
    return 0


def cmd_run(args) -> int:
    config = _config_from_args(args)
    bundle = run_pipeline(config)
    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    bundle_path = write_bundle(bundle, out_dir / "bundle.json")

    net = network_from_bundle(bundle)
    partition = partition_from_bundle(bundle)
    (out_dir / "edges.tsv").write_text(write_edgelist(net), encoding="utf-8")
    (out_dir / "partition.tsv").write_text(write_partition(partition), encoding="utf-8")
    node, part = compute_metrics(net, partition)
    (out_dir / "metrics.tsv").write_text(write_metrics_tsv(partition, node, part), encoding="utf-8")
    bursts = {
        key: BurstResult(
            node=key,
            intervals=tuple(
                BurstInterval(iv["start_year"], iv["end_year"], iv["weight"])
                for iv in entry["intervals"]
            ),
            burstness=entry["burstness"],
        )
        for key, entry in bundle["bursts"].items()
    }
    (out_dir / "bursts.tsv").write_text(
        write_bursts_tsv(bursts, bundle["node_metrics"]["betweenness"], bundle["sigma"]),
        encoding="utf-8",
    )
    (out_dir / "labels.json").write_text(
        json.dumps(bundle["labels"], indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    (out_dir / "summaries.json").write_text(
        json.dumps(bundle["summaries"], indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    (out_dir / "network.graphml").write_text(export_graphml(bundle), encoding="utf-8")
    print(f"bundle written to {bundle_path}")
    print(
        f"k={bundle['partition']['k']} "
        f"Q={bundle['partition_metrics']['modularity_q']:.4f} "
        f"mean_sil={bundle['partition_metrics']['mean_silhouette']:.4f}"
    )
    return 0


def cmd_export(args) -> int:
    bundle = read_bundle(args.bundle)
    _write_or_print(export_graphml(bundle), args.output)
    return 0


def cmd_serve(args) -> int:
    bundle = read_bundle(args.bundle)
    port = args.port if args.port is not None else bundle["config"]["port"]
    server_mod.serve(bundle, port, static_dir=args.static_dir)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cociter",
        description="Multiple-perspective co-citation network analysis toolkit",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log stage timings")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse export files to line-delimited JSON records")
    p.add_argument("inputs", nargs="+")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("network", help="build and merge per-slice co-citation networks")
    p.add_argument("records")
    p.add_argument("-o", "--output")
    _add_config_flags(p, {"unit", "start_year", "end_year", "slice_len", "top_n", "measure", "doc_types"})
    p.add_argument("--config")
    p.set_defaults(func=cmd_network)

    p = sub.add_parser("cluster", help="spectral normalized-cut partition of an edge list")
    p.add_argument("edges")
    p.add_argument("-o", "--output")
    _add_config_flags(p, {"seed", "restarts", "max_k"})
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("metrics", help="betweenness, silhouette, and modularity reports")
    p.add_argument("edges")
    p.add_argument("partition")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("label", help="nine ranked label lists per cluster")
    p.add_argument("records")
    p.add_argument("partition")
    p.add_argument("-o", "--output")
    _add_config_flags(p, {"unit", "label_depth"})
    p.set_defaults(func=cmd_label)

    p = sub.add_parser("summarize", help="extractive summaries per cluster")
    p.add_argument("records")
    p.add_argument("partition")
    p.add_argument("-o", "--output")
    _add_config_flags(p, {"unit", "summary_k", "summary_ranker"})
    p.set_defaults(func=cmd_summarize)

    p = sub.add_parser("compare", help="project a partition onto an external factor solution")
    p.add_argument("partition")
    p.add_argument("factors")
    p.add_argument("-o", "--output")
    p.add_argument("--similarity-json")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("run", help="run every stage and write the analysis bundle")
    p.add_argument("inputs", nargs="*")
    p.add_argument("--config", help=f"JSON config file (or ${CONFIG_ENV})")
    _add_config_flags(p, _ALL_FIELDS)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("export", help="export a bundle as GraphML")
    p.add_argument("bundle")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("serve", help="serve the read-only JSON API over a bundle")
    p.add_argument("bundle")
    p.add_argument("--port", type=int)
    p.add_argument("--static-dir", help="also host this directory at /")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except (ConfigError, PipelineError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
