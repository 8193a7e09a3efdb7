"""Parse a field-tagged bibliographic export into validated records.

Run from the repository root:  python3 demos/01_parse_exports.py
"""
from pathlib import Path

from cociter import normalize_author, parse_cited_reference
from cociter.ingest import parse_wos_path

SAMPLE = Path(__file__).resolve().parent.parent / "tests" / "data" / "wos_sample.txt"

rs = parse_wos_path(SAMPLE)
print(f"parsed {len(rs)} records from {SAMPLE.name}")
print(f"provenance: {rs.provenance}")
print()

for record in rs.records[:3]:
    print(f"{record.uid}  ({record.year}, {record.doc_type})")
    print(f"  title: {record.title}")
    print(f"  index terms: {list(record.index_terms)}")
    for ref in record.cited_refs:
        print(f"  cites -> {ref.ref_key}")
    print()

# Author keys are normalized the way citation databases print them:
for raw in ["Kuhlthau, C. C.", "van Rijsbergen, C.J.", "SPINK A"]:
    print(f"{raw!r:28s} -> {normalize_author(raw)}")

# A cited-reference line round-trips through its parsed form:
ref = parse_cited_reference("SMALL H, 1973, J AM SOC INFORM SCI, V24, P265")
print(f"\nCR line parsed: {ref}")
print(f"rendered back : {ref.as_cr_line()}")
