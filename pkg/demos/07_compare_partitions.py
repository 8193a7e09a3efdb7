"""Project a computed partition onto an external factor solution and
report the overlap rate and correspondence patterns.

Factor loadings normally arrive as a TSV (key, factor, loading); here a
small synthetic solution is built in place.
"""
from cociter import build_network, generate_corpus, select_top_cited, slice_records, spectral_partition
from cociter.compare import (
    FactorSolution,
    classify_patterns,
    overlap_rate,
    project_partition,
    write_projection_tsv,
)

rs = generate_corpus(n_records=200, n_communities=3, refs_per_community=10, seed=21)
(sl,) = slice_records(rs, 1996, 2008, 13)
net = build_network(sl, select_top_cited(sl, 27, "cited_reference"), "cosine", "cited_reference")
partition = spectral_partition(net)

# a factor solution that mostly agrees with the partition but merges two
# clusters into one factor and leaves a few members unloaded
factors: dict[str, set[str]] = {"retrieval": set(), "bibliometrics": set()}
loadings = {}
for idx, (key, cid) in enumerate(sorted(partition.assignment.items())):
    if idx % 7 == 0:
        continue  # unloaded -> no match
    factor = "retrieval" if cid == 0 else "bibliometrics"
    factors[factor].add(key)
    loadings[(key, factor)] = 0.4 + 0.05 * cid
solution = FactorSolution({f: frozenset(m) for f, m in factors.items()}, loadings)

table = project_partition(partition, solution)
print(write_projection_tsv(table))
print(f"overall overlap rate: {overlap_rate(partition, solution):.2f}")
patterns = classify_patterns(table)
for kind, entries in patterns.items():
    for entry in entries:
        print(f"{kind}: {entry}")
