"""The whole pipeline in one call: records in, analysis bundle out.

The bundle is a canonical JSON document (same config -> same bytes); it
feeds the GraphML exporter and the read-only API that the browser
explorer consumes:

    cociter serve out/bundle.json --port 8765 --static-dir frontend/dist
"""
import tempfile
from pathlib import Path

from cociter import AnalysisConfig, export_graphml, generate_corpus, run_pipeline, write_bundle

corpus = generate_corpus(n_records=300, n_communities=5, refs_per_community=15, seed=3)
config = AnalysisConfig(
    unit="cited_reference",
    start_year=1996,
    end_year=2008,
    slice_len=1,
    top_n=60,
    measure="cosine",
    summary_k=3,
    seed=42,
)
bundle = run_pipeline(config, records=corpus)

print(f"k = {bundle['partition']['k']}")
print(f"Q = {bundle['partition_metrics']['modularity_q']:.4f}")
print(f"mean silhouette = {bundle['partition_metrics']['mean_silhouette']:.4f}")
print()
for cid_text, labels in sorted(bundle["labels"].items(), key=lambda kv: int(kv[0])):
    span = bundle["time_spans"][cid_text]
    tau = f", tau = {span['tau']:.1f}" if span else ""
    print(f"  cluster {cid_text}: {labels['display_label']!r}{tau}")

out_dir = Path(tempfile.mkdtemp(prefix="cociter-demo-"))
bundle_path = write_bundle(bundle, out_dir / "bundle.json")
(out_dir / "network.graphml").write_text(export_graphml(bundle), encoding="utf-8")
print(f"\nbundle:  {bundle_path}")
print(f"graphml: {out_dir / 'network.graphml'}")
print(f"serve:   python3 -m cociter.cli serve {bundle_path} --port 8765")
