"""Shared helpers: tiny network builders and synthetic corpora."""
from __future__ import annotations

import random
from pathlib import Path

import pytest

from cociter.ingest import CitedReference, Provenance, Record, RecordSet
from cociter.network import CoCitationNetwork, Link, Node

DATA = Path(__file__).parent / "data"


def net_from_edges(edges, extra_nodes=(), unit="cited_author", measure="cosine"):
    """A CoCitationNetwork from (i, j, weight) triples; nodes get dummy
    citation histories."""
    keys = set(extra_nodes)
    for i, j, _ in edges:
        keys.update((i, j))
    nodes = {k: Node(k, {2000: 1}, 2000) for k in sorted(keys)}
    links = tuple(
        Link(min(i, j), max(i, j), float(w), 1, 2000)
        for i, j, w in sorted(edges, key=lambda e: (min(e[0], e[1]), max(e[0], e[1])))
    )
    return CoCitationNetwork(unit, measure, nodes, links)


def clique_edges(names, weight=1.0):
    return [(a, b, weight) for idx, a in enumerate(names) for b in names[idx + 1 :]]


def random_net(rng: random.Random, n: int, p: float = 0.5, connected: bool = True):
    """Random weighted graph on n nodes; resamples until connected when
    asked (and guarantees no isolated node)."""
    names = [f"n{i:02d}" for i in range(n)]
    while True:
        edges = []
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < p:
                    edges.append((names[i], names[j], round(rng.uniform(0.05, 1.0), 3)))
        net = net_from_edges(edges, extra_nodes=names)
        if not connected:
            return net
        if _is_connected(net):
            return net


def _is_connected(net: CoCitationNetwork) -> bool:
    adj = net.neighbors()
    keys = net.node_keys()
    if not keys:
        return False
    seen = {keys[0]}
    frontier = [keys[0]]
    while frontier:
        new = []
        for v in frontier:
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    new.append(w)
        frontier = new
    return len(seen) == len(keys)


def make_record(uid, year, cited, title="", abstract="", index_terms=(), doc_type="article"):
    """Record whose cited_refs are built from (author, year) pairs or raw
    author keys."""
    refs = []
    for entry in cited:
        if isinstance(entry, tuple):
            author, ref_year = entry
        else:
            author, ref_year = entry, 1990
        refs.append(CitedReference.make(author, ref_year, "J TEST"))
    return Record(
        uid=uid,
        authors=("Tester, A.",),
        year=year,
        title=title,
        abstract=abstract,
        index_terms=tuple(index_terms),
        source="J TEST",
        doc_type=doc_type,
        cited_refs=tuple(refs),
    )


def record_set(records):
    return RecordSet(tuple(records), Provenance(files=("<test>",), records_read=len(records)))


@pytest.fixture
def rng():
    return random.Random(0xC0C1)
