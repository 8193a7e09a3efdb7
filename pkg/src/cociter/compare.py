"""
Compare a computed partition against an external factor solution.

Members are matched to the factor where they load highest in absolute
value; clusters are projected as distributions over factors plus a
no-match category, and the overall overlap rate counts matched members
across the whole partition.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .clustering import Partition

__all__ = [
    "NO_MATCH",
    "FactorSolution",
    "ProjectionTable",
    "match_member",
    "project_cluster",
    "overlap_rate",
    "classify_patterns",
    "read_factor_tsv",
    "write_projection_tsv",
    "similarity_graph_json",
]

NO_MATCH = "[no match]"


@dataclass(frozen=True)
class FactorSolution:
    """Factor memberships plus per-(member, factor) loadings."""

    factors: dict[str, frozenset[str]]
    loadings: dict[tuple[str, str], float]

    def __post_init__(self):
        for (key, factor), value in self.loadings.items():
            if not math.isfinite(value):
                raise ValueError(f"non-finite loading for ({key!r}, {factor!r})")
            if factor not in self.factors or key not in self.factors[factor]:
                raise ValueError(f"loading for ({key!r}, {factor!r}) outside factor membership")

    def loadings_of(self, key: str) -> dict[str, float]:
        return {f: v for (k, f), v in self.loadings.items() if k == key}


def read_factor_tsv(text: str) -> FactorSolution:
    """Read the factor interchange TSV: key<TAB>factor_name<TAB>loading."""
    factors: dict[str, set[str]] = {}
    loadings: dict[tuple[str, str], float] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ValueError(f"bad factor row {line!r}")
        key, factor, loading = parts
        factors.setdefault(factor, set()).add(key)
        loadings[(key, factor)] = float(loading)
    return FactorSolution({f: frozenset(m) for f, m in factors.items()}, loadings)


def match_member(key: str, solution: FactorSolution) -> tuple[str, bool]:
    """The factor with the greatest absolute loading for `key`, or the
    no-match category when the member has no loadings. Exact ties pick
    the lexicographically first factor name and are flagged."""
    loadings = solution.loadings_of(key)
    if not loadings:
        return NO_MATCH, False
    top = max(abs(v) for v in loadings.values())
    candidates = sorted(f for f, v in loadings.items() if abs(v) == top)
    return candidates[0], len(candidates) > 1


@dataclass(frozen=True)
class ProjectionTable:
    """Per-cluster distributions over factor names plus no-match."""

    distributions: dict[int, dict[str, float]]
    counts: dict[int, dict[str, int]]

    def __post_init__(self):
        for cid, dist in self.distributions.items():
            total = sum(dist.values())
            if abs(total - 1.0) > 1e-9:
                raise ValueError(f"cluster {cid} projection sums to {total}, not 1")


def project_cluster(
    members: Sequence[str] | frozenset[str], matches: Mapping[str, str]
) -> tuple[dict[str, float], dict[str, int]]:
    """Distribution of a cluster's members over their matched factors."""
    members = sorted(members)
    if not members:
        raise ValueError("cannot project an empty cluster")
    counts: dict[str, int] = {}
    for member in members:
        factor = matches.get(member, NO_MATCH)
        counts[factor] = counts.get(factor, 0) + 1
    size = len(members)
    return {f: c / size for f, c in counts.items()}, counts


def project_partition(partition: Partition, solution: FactorSolution) -> ProjectionTable:
    matches = {key: match_member(key, solution)[0] for key in partition.assignment}
    distributions = {}
    counts = {}
    for cid, members in partition.clusters.items():
        dist, count = project_cluster(members, matches)
        distributions[cid] = dist
        counts[cid] = count
    return ProjectionTable(distributions, counts)


def overlap_rate(partition: Partition, solution: FactorSolution) -> float:
    """Fraction of partition members matched to any factor."""
    members = sorted(partition.assignment)
    if not members:
        raise ValueError("empty partition")
    matched = sum(1 for m in members if match_member(m, solution)[0] != NO_MATCH)
    return matched / len(members)


def classify_patterns(
    table: ProjectionTable,
    dominant_threshold: float = 0.50,
    split_threshold: float = 0.15,
) -> dict[str, list]:
    """The three correspondence patterns between clusters and factors:
    type 1 (cluster ~ one factor), type 2 (several clusters inside one
    factor), type 3 (one cluster split over >= 3 factors). Thresholds
    are configurable."""
    dominant: dict[int, str] = {}
    for cid, dist in table.distributions.items():
        for factor, frac in dist.items():
            if factor != NO_MATCH and frac >= dominant_threshold:
                dominant[cid] = factor
    by_factor: dict[str, list[int]] = {}
    for cid, factor in dominant.items():
        by_factor.setdefault(factor, []).append(cid)
    type1 = [(cid, factor) for factor, cids in sorted(by_factor.items()) for cid in sorted(cids) if len(cids) == 1]
    type2 = [(sorted(cids), factor) for factor, cids in sorted(by_factor.items()) if len(cids) > 1]
    type3 = []
    for cid, dist in table.distributions.items():
        spread = sorted(
            f for f, frac in dist.items() if f != NO_MATCH and frac >= split_threshold
        )
        if len(spread) >= 3:
            type3.append((cid, spread))
    return {"type1": type1, "type2": type2, "type3": sorted(type3)}


def write_projection_tsv(table: ProjectionTable) -> str:
    """Projection report: cluster, factor, matched count, percentage (two
    decimals), one block per cluster ordered by descending share."""
    out = ["cluster\tfactor\tmatched\tpercent"]
    for cid in sorted(table.distributions):
        dist = table.distributions[cid]
        for factor in sorted(dist, key=lambda f: (-dist[f], f)):
            out.append(
                f"{cid}\t{factor}\t{table.counts[cid][factor]}\t{100.0 * dist[factor]:.2f}"
            )
    return "\n".join(out) + "\n"


def similarity_graph_json(
    table: ProjectionTable, min_overlap: float = 0.10
) -> str:
    """Cluster/factor bipartite graph with edges at >= `min_overlap`
    projection fraction, as JSON."""
    factors = sorted(
        {f for dist in table.distributions.values() for f in dist if f != NO_MATCH}
    )
    edges = []
    for cid in sorted(table.distributions):
        for factor, frac in sorted(table.distributions[cid].items()):
            if factor != NO_MATCH and frac >= min_overlap:
                edges.append({"cluster": cid, "factor": factor, "weight": frac})
    doc = {
        "clusters": sorted(table.distributions),
        "factors": factors,
        "edges": edges,
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
