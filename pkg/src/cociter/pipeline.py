"""
End-to-end orchestration: ingest -> slicing -> network -> clustering ->
metrics -> bursts -> labels -> summaries -> time spans, assembled into a
serializable analysis bundle plus GraphML export.

The bundle is a plain JSON document (bundle_version 1) written through
a canonical serializer, so identical configurations produce
byte-identical files and files round-trip bit-exactly.
"""
from __future__ import annotations

import json
import logging
import os
import tempfile
import time
import xml.etree.ElementTree as ET
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Sequence

from .clustering import ClusterOptions, Partition, partition_from_groups, spectral_partition
from .ingest import RecordSet, Record, merge_record_sets, parse_wos_path, read_records_jsonl
from .labeling import CorpusIndex, label_cluster
from .metrics import compute_metrics
from .network import (
    MEASURES,
    UNITS,
    CoCitationNetwork,
    Link,
    Node,
    build_network,
    cited_keys,
    merge_networks,
    select_top_cited,
    slice_records,
)
from .summarize import RANKERS, summarize_cluster
from .temporal import BurstOptions, detect_bursts, sigma, time_span

__all__ = [
    "BUNDLE_VERSION",
    "AnalysisConfig",
    "ConfigError",
    "PipelineError",
    "run_pipeline",
    "canonical_json",
    "write_bundle",
    "read_bundle",
    "validate_bundle",
    "export_graphml",
    "network_from_bundle",
    "partition_from_bundle",
]

log = logging.getLogger(__name__)

BUNDLE_VERSION = 1


class ConfigError(ValueError):
    """An analysis configuration that fails validation."""


class PipelineError(RuntimeError):
    """A stage failure; the message names the stage and the cause."""


@dataclass(frozen=True)
class AnalysisConfig:
    inputs: tuple[str, ...] = ()
    unit: str = "cited_reference"
    start_year: int = 1996
    end_year: int = 2008
    slice_len: int = 1
    top_n: int = 150
    measure: str = "cosine"
    doc_types: tuple[str, ...] | None = None
    seed: int = 42
    restarts: int = 10
    max_k: int = 50
    burst_s: float = 2.0
    burst_gamma: float = 1.0
    label_depth: int = 3
    summary_k: int = 5
    summary_ranker: str = "energy"
    output_dir: str = "out"
    port: int = 8765

    def validate(self) -> None:
        if self.unit not in UNITS:
            raise ConfigError(f"unit must be one of {UNITS}, got {self.unit!r}")
        if self.measure not in MEASURES:
            raise ConfigError(f"measure must be one of {MEASURES}, got {self.measure!r}")
        if self.summary_ranker not in RANKERS:
            raise ConfigError(f"summary_ranker must be one of {RANKERS}")
        if not (1900 <= self.start_year <= self.end_year <= 2100):
            raise ConfigError(f"bad year range {self.start_year}..{self.end_year}")
        if self.slice_len < 1:
            raise ConfigError("slice_len must be >= 1")
        if self.top_n < 1:
            raise ConfigError("top_n must be >= 1")
        if self.restarts < 1:
            raise ConfigError("restarts must be >= 1")
        if self.max_k < 2:
            raise ConfigError("max_k must be >= 2")
        if self.burst_s <= 1.0:
            raise ConfigError("burst_s must be > 1")
        if self.burst_gamma <= 0.0:
            raise ConfigError("burst_gamma must be > 0")
        if self.label_depth < 1:
            raise ConfigError("label_depth must be >= 1")
        if self.summary_k < 0:
            raise ConfigError("summary_k must be >= 0")
        if not (1 <= self.port <= 65535):
            raise ConfigError(f"port {self.port} out of range")
        if self.doc_types is not None:
            bad = set(self.doc_types) - {"article", "review", "other"}
            if bad:
                raise ConfigError(f"unknown doc_types {sorted(bad)}")

    def to_json(self) -> dict:
        obj = asdict(self)
        obj["inputs"] = list(self.inputs)
        obj["doc_types"] = None if self.doc_types is None else list(self.doc_types)
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "AnalysisConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(obj) - known
        if unknown:
            raise ConfigError(f"unknown config fields {sorted(unknown)}")
        kwargs = dict(obj)
        if "inputs" in kwargs:
            kwargs["inputs"] = tuple(kwargs["inputs"])
        if kwargs.get("doc_types") is not None:
            kwargs["doc_types"] = tuple(kwargs["doc_types"])
        config = cls(**kwargs)
        config.validate()
        return config


def load_inputs(paths: Sequence[str | Path]) -> RecordSet:
    sets = []
    for path in paths:
        path = Path(path)
        if path.suffix in (".jsonl", ".ndjson"):
            sets.append(read_records_jsonl(path))
        else:
            sets.append(parse_wos_path(path))
    return merge_record_sets(sets)


def _stage(name: str):
    def wrap(fn):
        def run(*args, **kwargs):
            t0 = time.perf_counter()
            try:
                result = fn(*args, **kwargs)
            except Exception as exc:
                raise PipelineError(f"stage {name!r} failed: {exc}") from exc
            log.info("stage %-10s done in %.3fs", name, time.perf_counter() - t0)
            return result

        return run

    return wrap


def _member_year_table(records: Sequence[Record], unit: str) -> dict[str, int]:
    years: dict[str, int] = {}
    for record in records:
        for ref in record.cited_refs:
            key = ref.author_key if unit == "cited_author" else ref.ref_key
            if ref.year is not None and key not in years:
                years[key] = ref.year
    return years


def run_pipeline(config: AnalysisConfig, records: RecordSet | None = None) -> dict:
    """Execute every stage and return the analysis bundle.

    `records` bypasses file ingest (synthetic corpora, tests); otherwise
    config.inputs are read. Any stage error raises PipelineError naming
    the stage.
    """
    config.validate()

    if records is None:
        records = _stage("ingest")(load_inputs)(config.inputs)
    if config.doc_types is not None:
        allowed = set(config.doc_types)
        records = RecordSet(
            tuple(r for r in records if r.doc_type in allowed), records.provenance
        )

    slices = _stage("slicing")(slice_records)(
        records, config.start_year, config.end_year, config.slice_len
    )
    in_range = [r for sl in slices for r in sl.records]
    if not in_range:
        raise PipelineError("stage 'slicing' failed: no records in range")

    def build_all():
        nets = []
        for sl in slices:
            keys = select_top_cited(sl, config.top_n, config.unit) if sl.records else []
            nets.append(build_network(sl, keys, config.measure, config.unit))
        merged = merge_networks(nets)
        if not merged.nodes:
            raise ValueError("no cited entities in range")
        return merged

    net = _stage("network")(build_all)()

    opts = ClusterOptions(seed=config.seed, restarts=config.restarts, max_k=config.max_k)
    partition = _stage("clustering")(spectral_partition)(net, opts)

    node_metrics, part_metrics = _stage("metrics")(compute_metrics)(net, partition)

    def burst_all():
        base: dict[int, int] = {y: 0 for y in range(config.start_year, config.end_year + 1)}
        for record in in_range:
            base[record.year] += len(record.cited_refs)
        burst_opts = BurstOptions(s=config.burst_s, gamma=config.burst_gamma)
        results = {}
        for key in net.node_keys():
            series = {y: net.nodes[key].per_year_counts.get(y, 0) for y in base}
            results[key] = detect_bursts(series, base, burst_opts, node=key)
        return results

    bursts = _stage("bursts")(burst_all)()
    sigmas = {
        key: sigma(node_metrics.betweenness[key], bursts[key].burstness)
        for key in net.node_keys()
    }

    member_keys = {
        cid: sorted(members) for cid, members in partition.clusters.items()
    }
    citers_of: dict[int, list[Record]] = {cid: [] for cid in partition.clusters}
    for record in sorted(in_range, key=lambda r: r.uid):
        keys = cited_keys(record, config.unit)
        for cid, members in partition.clusters.items():
            if keys & members:
                citers_of[cid].append(record)

    def label_all():
        corpus = CorpusIndex(in_range)
        return {
            cid: label_cluster(
                cid,
                [r.uid for r in citers_of[cid]],
                corpus,
                depth=config.label_depth,
            )
            for cid in sorted(partition.clusters)
        }

    labels = _stage("labels")(label_all)()

    def summarize_all():
        configured = {}
        pool = {}
        for cid in sorted(partition.clusters):
            configured[cid] = summarize_cluster(
                cid, citers_of[cid], config.summary_k, config.summary_ranker
            )
            # Full ranked lists for every ranker, so the read-only API can
            # answer any ranker/k without the source records.
            pool[cid] = {
                ranker: [
                    s.to_json()
                    for s in summarize_cluster(cid, citers_of[cid], None, ranker).sentences
                ]
                for ranker in RANKERS
            }
        return configured, pool

    summaries, summary_pool = _stage("summaries")(summarize_all)()

    def spans_all():
        ref_years = _member_year_table(in_range, config.unit)
        spans = {}
        for cid, members in partition.clusters.items():
            if config.unit == "cited_author":
                member_years = [
                    net.nodes[m].first_cited_year
                    for m in members
                    if net.nodes[m].first_cited_year is not None
                ]
            else:
                member_years = [ref_years[m] for m in members if m in ref_years]
            citer_years = [r.year for r in citers_of[cid] if r.year is not None]
            if not citer_years or not member_years:
                spans[cid] = None
                continue
            spans[cid] = time_span(member_years, citer_years, cluster_id=cid)
        return spans

    spans = _stage("time_spans")(spans_all)()

    timeline = {
        "clusters": [
            {
                "cluster_id": cid,
                "label": labels[cid].display_label,
                "members": [
                    {
                        "key": key,
                        "first_cited_year": net.nodes[key].first_cited_year,
                        "rings": {str(y): c for y, c in net.nodes[key].per_year_counts.items()},
                    }
                    for key in sorted(
                        member_keys[cid],
                        key=lambda m: (
                            net.nodes[m].first_cited_year is None,
                            net.nodes[m].first_cited_year,
                            m,
                        ),
                    )
                ],
            }
            for cid in sorted(partition.clusters)
        ]
    }

    bundle = {
        "bundle_version": BUNDLE_VERSION,
        "config": config.to_json(),
        "network": {
            "unit": net.unit,
            "measure": net.measure,
            "nodes": [
                {
                    "key": key,
                    "first_cited_year": net.nodes[key].first_cited_year,
                    "per_year_counts": {str(y): c for y, c in net.nodes[key].per_year_counts.items()},
                    "citers": sorted(net.citer_index.get(key, ())),
                }
                for key in net.node_keys()
            ],
            "links": [
                {
                    "i": link.i,
                    "j": link.j,
                    "weight": link.weight,
                    "raw_count": link.raw_count,
                    "first_slice_year": link.first_slice_year,
                }
                for link in sorted(net.links, key=lambda l: (l.i, l.j))
            ],
        },
        "partition": {
            "k": partition.k,
            "ncut": partition.ncut_value,
            "assignment": dict(sorted(partition.assignment.items())),
        },
        "node_metrics": {
            "betweenness": dict(sorted(node_metrics.betweenness.items())),
            "silhouette": dict(sorted(node_metrics.silhouette.items())),
        },
        "partition_metrics": {
            "modularity_q": part_metrics.modularity_q,
            "per_cluster_silhouette": {
                str(cid): val for cid, val in sorted(part_metrics.per_cluster_silhouette.items())
            },
            "mean_silhouette": part_metrics.mean_silhouette,
            "flags": list(part_metrics.flags),
        },
        "bursts": {
            key: {
                "burstness": res.burstness,
                "intervals": [
                    {"start_year": iv.start_year, "end_year": iv.end_year, "weight": iv.weight}
                    for iv in res.intervals
                ],
            }
            for key, res in sorted(bursts.items())
        },
        "sigma": dict(sorted(sigmas.items())),
        "labels": {str(cid): labels[cid].to_json() for cid in sorted(labels)},
        "summaries": {str(cid): summaries[cid].to_json() for cid in sorted(summaries)},
        "summary_pool": {str(cid): summary_pool[cid] for cid in sorted(summary_pool)},
        "citers": {
            str(cid): [
                {
                    "uid": r.uid,
                    "year": r.year,
                    "title": r.title,
                    "cited_members": sorted(
                        cited_keys(r, config.unit) & partition.clusters[cid]
                    ),
                }
                for r in citers_of[cid]
            ]
            for cid in sorted(citers_of)
        },
        "time_spans": {
            str(cid): (
                None
                if span is None
                else {
                    "mean_citer_year": span.mean_citer_year,
                    "mean_member_year": span.mean_member_year,
                    "tau": span.tau,
                }
            )
            for cid, span in sorted(spans.items())
        },
        "timeline": timeline,
    }
    validate_bundle(bundle)
    return bundle


def validate_bundle(bundle: dict) -> None:
    """Referential integrity: every cluster id used anywhere must exist
    in the partition, and every metric covers every node."""
    if bundle.get("bundle_version") != BUNDLE_VERSION:
        raise ValueError(f"unsupported bundle_version {bundle.get('bundle_version')!r}")
    k = bundle["partition"]["k"]
    cids = set(range(k))
    assigned = set(bundle["partition"]["assignment"].values())
    if not assigned <= cids:
        raise ValueError("assignment references cluster ids outside 0..k-1")
    for section in ("labels", "summaries", "summary_pool", "citers", "time_spans"):
        refs = {int(c) for c in bundle[section]}
        if not refs <= cids:
            raise ValueError(f"{section} references unknown cluster ids {sorted(refs - cids)}")
    node_keys = {n["key"] for n in bundle["network"]["nodes"]}
    for section in ("betweenness", "silhouette"):
        if set(bundle["node_metrics"][section]) != node_keys:
            raise ValueError(f"node_metrics.{section} does not cover the node set")
    if set(bundle["sigma"]) != node_keys or set(bundle["bursts"]) != node_keys:
        raise ValueError("sigma/bursts do not cover the node set")


def canonical_json(obj: dict) -> str:
    """The bundle serializer: sorted keys, two-space indent, exact float
    repr. Loading and re-dumping reproduces the bytes."""
    return json.dumps(obj, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


def write_bundle(bundle: dict, path: str | Path) -> Path:
    """Atomic bundle write: temp file in the target directory, then
    rename over the destination."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = canonical_json(bundle)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".bundle-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def read_bundle(path: str | Path) -> dict:
    bundle = json.loads(Path(path).read_text(encoding="utf-8"))
    validate_bundle(bundle)
    return bundle


def network_from_bundle(bundle: dict) -> CoCitationNetwork:
    nodes = {
        n["key"]: Node(
            key=n["key"],
            per_year_counts={int(y): c for y, c in n["per_year_counts"].items()},
            first_cited_year=n["first_cited_year"],
        )
        for n in bundle["network"]["nodes"]
    }
    links = tuple(
        Link(l["i"], l["j"], l["weight"], l["raw_count"], l["first_slice_year"])
        for l in bundle["network"]["links"]
    )
    citer_index = {n["key"]: frozenset(n["citers"]) for n in bundle["network"]["nodes"]}
    return CoCitationNetwork(
        bundle["network"]["unit"], bundle["network"]["measure"], nodes, links, citer_index
    )


def partition_from_bundle(bundle: dict) -> Partition:
    net = network_from_bundle(bundle)
    groups: dict[int, set[str]] = {}
    for node, cid in bundle["partition"]["assignment"].items():
        groups.setdefault(cid, set()).add(node)
    return partition_from_groups(net, groups.values())


_GRAPHML_NS = "http://graphml.graphdrawing.org/xmlns"

_NODE_ATTRS = (
    ("label", "string"),
    ("cluster", "int"),
    ("citations", "int"),
    ("betweenness", "double"),
    ("burstness", "double"),
    ("sigma", "double"),
    ("first_cited_year", "int"),
)
_EDGE_ATTRS = (
    ("weight", "double"),
    ("raw_count", "int"),
    ("first_slice_year", "int"),
)


def export_graphml(bundle: dict) -> str:
    """Render the bundle's network, partition, and node metrics as a
    GraphML document with declared attribute keys."""
    ET.register_namespace("", _GRAPHML_NS)
    root = ET.Element(f"{{{_GRAPHML_NS}}}graphml")
    key_ids = {}
    for domain, attrs in (("node", _NODE_ATTRS), ("edge", _EDGE_ATTRS)):
        for name, attr_type in attrs:
            key_id = f"d{len(key_ids)}"
            key_ids[(domain, name)] = key_id
            ET.SubElement(
                root,
                f"{{{_GRAPHML_NS}}}key",
                id=key_id,
                attrib={"for": domain, "attr.name": name, "attr.type": attr_type},
            )
    graph = ET.SubElement(
        root, f"{{{_GRAPHML_NS}}}graph", id="cocitation", edgedefault="undirected"
    )

    assignment = bundle["partition"]["assignment"]
    betweenness = bundle["node_metrics"]["betweenness"]
    bursts = bundle["bursts"]
    sigmas = bundle["sigma"]
    for node in bundle["network"]["nodes"]:
        key = node["key"]
        el = ET.SubElement(graph, f"{{{_GRAPHML_NS}}}node", id=key)
        values = {
            "label": key,
            "cluster": assignment[key],
            "citations": sum(node["per_year_counts"].values()),
            "betweenness": betweenness[key],
            "burstness": bursts[key]["burstness"],
            "sigma": sigmas[key],
            "first_cited_year": node["first_cited_year"],
        }
        for name, _ in _NODE_ATTRS:
            if values[name] is None:
                continue
            data = ET.SubElement(el, f"{{{_GRAPHML_NS}}}data", key=key_ids[("node", name)])
            data.text = str(values[name])
    for link in bundle["network"]["links"]:
        el = ET.SubElement(
            graph, f"{{{_GRAPHML_NS}}}edge", source=link["i"], target=link["j"]
        )
        for name, _ in _EDGE_ATTRS:
            data = ET.SubElement(el, f"{{{_GRAPHML_NS}}}data", key=key_ids[("edge", name)])
            data.text = str(link[name])
    ET.indent(root)
    body = ET.tostring(root, encoding="unicode")
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + body + "\n"
