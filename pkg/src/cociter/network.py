"""
Co-citation network construction.

A network is built per time slice from the cited-entity sets of citing
records (unit: cited authors or cited references), weighted by cosine,
Dice, or Jaccard similarity over citer sets, and slices are merged into
a single progressive network by pooling citer sets.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .ingest import Record, RecordSet

__all__ = [
    "UNITS",
    "MEASURES",
    "TimeSlice",
    "Node",
    "Link",
    "CoCitationNetwork",
    "cited_keys",
    "slice_records",
    "select_top_cited",
    "build_network",
    "merge_networks",
    "write_edgelist",
    "read_edgelist",
]

UNITS = ("cited_author", "cited_reference")
MEASURES = ("cosine", "dice", "jaccard")


def similarity(measure: str, inter: int, size_a: int, size_b: int) -> float:
    """Link weight from co-citation count and the two citer-set sizes."""
    if inter == 0:
        return 0.0
    if measure == "cosine":
        return inter / math.sqrt(size_a * size_b)
    if measure == "jaccard":
        return inter / (size_a + size_b - inter)
    if measure == "dice":
        return 2.0 * inter / (size_a + size_b)
    raise ValueError(f"unknown measure {measure!r}")


@dataclass(frozen=True)
class TimeSlice:
    start_year: int
    end_year: int
    records: tuple[Record, ...]

    def __post_init__(self):
        if self.start_year > self.end_year:
            raise ValueError("slice start_year > end_year")
        for r in self.records:
            if r.year is None or not (self.start_year <= r.year <= self.end_year):
                raise ValueError(f"record {r.uid} dated outside slice")


def slice_records(rs: RecordSet | Sequence[Record], start: int, end: int, slice_len: int) -> list[TimeSlice]:
    """Split records into consecutive, non-overlapping slices covering
    [start, end]; the final slice may be shorter. Records with unknown
    year are excluded."""
    if start > end:
        raise ValueError(f"empty year range {start}..{end}")
    if slice_len < 1:
        raise ValueError("slice_len must be >= 1")
    records = list(rs)
    slices = []
    for s in range(start, end + 1, slice_len):
        e = min(s + slice_len - 1, end)
        members = tuple(r for r in records if r.year is not None and s <= r.year <= e)
        slices.append(TimeSlice(s, e, members))
    return slices


def cited_keys(record: Record, unit: str) -> set[str]:
    """The set of cited-entity keys of one record (deduplicated: a record
    citing an author k times counts once)."""
    if unit == "cited_author":
        return {ref.author_key for ref in record.cited_refs if ref.author_key}
    if unit == "cited_reference":
        return {ref.ref_key for ref in record.cited_refs}
    raise ValueError(f"unknown unit {unit!r}")


def select_top_cited(sl: TimeSlice, n: int, unit: str) -> list[str]:
    """The n most cited entity keys within the slice.

    Ties break by earlier first-cited year within the slice, then by
    key, so the selection is deterministic. Returns fewer than n keys
    when the slice has fewer cited entities.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    counts: dict[str, int] = {}
    first_year: dict[str, int] = {}
    for record in sl.records:
        for key in cited_keys(record, unit):
            counts[key] = counts.get(key, 0) + 1
            year = record.year
            if key not in first_year or year < first_year[key]:
                first_year[key] = year
    ordered = sorted(counts, key=lambda k: (-counts[k], first_year[k], k))
    return ordered[:n]


@dataclass(frozen=True)
class Node:
    key: str
    per_year_counts: dict[int, int]
    first_cited_year: int | None


@dataclass(frozen=True)
class Link:
    i: str
    j: str
    weight: float
    raw_count: int
    first_slice_year: int

    def __post_init__(self):
        if self.i >= self.j:
            raise ValueError("links are stored once with i < j")


@dataclass(frozen=True)
class CoCitationNetwork:
    unit: str
    measure: str
    nodes: dict[str, Node]
    links: tuple[Link, ...]
    citer_index: dict[str, frozenset[str]] = field(default_factory=dict)

    def node_keys(self) -> list[str]:
        return sorted(self.nodes)

    def total_citations(self, key: str) -> int:
        return sum(self.nodes[key].per_year_counts.values())

    def weight_of(self, a: str, b: str) -> float:
        if a > b:
            a, b = b, a
        for link in self.links:
            if link.i == a and link.j == b:
                return link.weight
        return 0.0

    def weight_lookup(self) -> dict[tuple[str, str], float]:
        return {(l.i, l.j): l.weight for l in self.links}

    def neighbors(self) -> dict[str, list[str]]:
        adj: dict[str, list[str]] = {k: [] for k in self.nodes}
        for link in self.links:
            adj[link.i].append(link.j)
            adj[link.j].append(link.i)
        for k in adj:
            adj[k].sort()
        return adj

    def weight_matrix(self, order: Sequence[str] | None = None):
        """Dense symmetric weight matrix over `order` (default: sorted keys)."""
        import numpy as np

        keys = list(order) if order is not None else self.node_keys()
        index = {k: i for i, k in enumerate(keys)}
        W = np.zeros((len(keys), len(keys)))
        for link in self.links:
            if link.i in index and link.j in index:
                a, b = index[link.i], index[link.j]
                W[a, b] = W[b, a] = link.weight
        return keys, W


def build_network(sl: TimeSlice, keys: Iterable[str], measure: str, unit: str) -> CoCitationNetwork:
    """Build the co-citation network among `keys` from one slice.

    Every pair co-cited at least once gets a link weighted by the chosen
    measure; pairs never cited together are omitted.
    """
    if measure not in MEASURES:
        raise ValueError(f"unknown measure {measure!r}")
    keyset = set(keys)
    citers: dict[str, set[str]] = {k: set() for k in keyset}
    per_year: dict[str, dict[int, int]] = {k: {} for k in keyset}
    pairs: set[tuple[str, str]] = set()
    for record in sl.records:
        cited = sorted(cited_keys(record, unit) & keyset)
        for key in cited:
            citers[key].add(record.uid)
            per_year[key][record.year] = per_year[key].get(record.year, 0) + 1
        for a_i in range(len(cited)):
            for b_i in range(a_i + 1, len(cited)):
                pairs.add((cited[a_i], cited[b_i]))
    nodes = {
        k: Node(
            key=k,
            per_year_counts=dict(sorted(per_year[k].items())),
            first_cited_year=min(per_year[k]) if per_year[k] else None,
        )
        for k in sorted(keyset)
    }
    links = []
    for a, b in sorted(pairs):
        inter = len(citers[a] & citers[b])
        links.append(
            Link(
                i=a,
                j=b,
                weight=similarity(measure, inter, len(citers[a]), len(citers[b])),
                raw_count=inter,
                first_slice_year=sl.start_year,
            )
        )
    citer_index = {k: frozenset(citers[k]) for k in sorted(keyset)}
    return CoCitationNetwork(unit, measure, nodes, tuple(links), citer_index)


def merge_networks(nets: Sequence[CoCitationNetwork]) -> CoCitationNetwork:
    """Merge per-slice networks into one progressive network.

    Citer sets are pooled (set union), so merged weights equal a
    whole-period build over the same keys; raw co-citation counts sum
    over slices; a link keeps the earliest slice year it appeared in.
    """
    if not nets:
        raise ValueError("nothing to merge")
    units = {n.unit for n in nets}
    measures = {n.measure for n in nets}
    if len(units) > 1:
        raise ValueError(f"cannot merge networks of mixed units {sorted(units)}")
    if len(measures) > 1:
        raise ValueError(f"cannot merge networks of mixed measures {sorted(measures)}")
    unit, measure = nets[0].unit, nets[0].measure

    pooled: dict[str, set[str]] = {}
    per_year: dict[str, dict[int, int]] = {}
    raw: dict[tuple[str, str], int] = {}
    first_slice: dict[tuple[str, str], int] = {}
    for net in nets:
        for key, node in net.nodes.items():
            pooled.setdefault(key, set()).update(net.citer_index.get(key, ()))
            dest = per_year.setdefault(key, {})
            for year, count in node.per_year_counts.items():
                dest[year] = dest.get(year, 0) + count
        for link in net.links:
            pair = (link.i, link.j)
            raw[pair] = raw.get(pair, 0) + link.raw_count
            if pair not in first_slice or link.first_slice_year < first_slice[pair]:
                first_slice[pair] = link.first_slice_year

    nodes = {
        k: Node(
            key=k,
            per_year_counts=dict(sorted(per_year[k].items())),
            first_cited_year=min(per_year[k]) if per_year[k] else None,
        )
        for k in sorted(pooled)
    }
    links = []
    for a, b in sorted(raw):
        inter = len(pooled[a] & pooled[b])
        links.append(
            Link(
                i=a,
                j=b,
                weight=similarity(measure, inter, len(pooled[a]), len(pooled[b])),
                raw_count=raw[(a, b)],
                first_slice_year=first_slice[(a, b)],
            )
        )
    citer_index = {k: frozenset(v) for k, v in sorted(pooled.items())}
    return CoCitationNetwork(unit, measure, nodes, tuple(links), citer_index)


def write_edgelist(net: CoCitationNetwork) -> str:
    """Render the tab-separated edge-list interchange format."""
    out = [f"{net.unit} {net.measure}"]
    for link in sorted(net.links, key=lambda l: (l.i, l.j)):
        out.append(
            f"{link.i}\t{link.j}\t{link.weight!r}\t{link.raw_count}\t{link.first_slice_year}"
        )
    return "\n".join(out) + "\n"


def read_edgelist(text: str) -> CoCitationNetwork:
    """Read the edge-list format back into a skeleton network (links and
    node keys only; per-year counts and citer sets are not part of the
    interchange format)."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty edge list")
    header = lines[0].split()
    if len(header) != 2 or header[0] not in UNITS or header[1] not in MEASURES:
        raise ValueError(f"bad edge-list header {lines[0]!r}")
    unit, measure = header
    links = []
    keys: set[str] = set()
    for ln in lines[1:]:
        parts = ln.split("\t")
        if len(parts) != 5:
            raise ValueError(f"bad edge-list row {ln!r}")
        i, j, weight, raw_count, first_year = parts
        keys.update((i, j))
        links.append(Link(min(i, j), max(i, j), float(weight), int(raw_count), int(first_year)))
    nodes = {k: Node(k, {}, None) for k in sorted(keys)}
    return CoCitationNetwork(unit, measure, nodes, tuple(sorted(links, key=lambda l: (l.i, l.j))))
