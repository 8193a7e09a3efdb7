#!/usr/bin/env python3
"""Record deterministic API fixtures for the explorer's contract tests.

Builds the same synthetic corpus the backend test suite uses, runs the
full pipeline, and snapshots one JSON payload per endpoint exactly as
the read-only API would serve it.
"""
import json
from pathlib import Path

from cociter.harness import generate_corpus
from cociter.pipeline import AnalysisConfig, run_pipeline
from cociter.server import BundleApi

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def main() -> None:
    corpus = generate_corpus(n_records=90, n_communities=3, refs_per_community=10, seed=23)
    config = AnalysisConfig(
        unit="cited_reference",
        start_year=1996,
        end_year=2008,
        slice_len=13,
        top_n=24,
        summary_k=3,
    )
    bundle = run_pipeline(config, records=corpus)
    api = BundleApi(bundle)

    some_node = bundle["network"]["nodes"][0]["key"]
    payloads = {
        "meta": api.meta({}),
        "network": api.network({}),
        "clusters": api.clusters({}),
        "cluster0_labels": api.cluster_labels("0", {}),
        "cluster0_summary": api.cluster_summary("0", {"ranker": ["energy"], "k": ["3"]}),
        "cluster0_citers": api.cluster_citers("0", {}),
        "node_history": api.node_history(some_node, {}),
        "timeline": api.timeline({}),
    }
    FIXTURES.mkdir(parents=True, exist_ok=True)
    for name, payload in payloads.items():
        path = FIXTURES / f"{name}.json"
        path.write_text(
            json.dumps(payload, ensure_ascii=False, sort_keys=True, indent=2) + "\n",
            encoding="utf-8",
        )
        print(f"wrote {path.relative_to(FIXTURES.parent.parent)}")


if __name__ == "__main__":
    main()
