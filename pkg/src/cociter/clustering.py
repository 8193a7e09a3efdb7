"""
Normalized-cut spectral partitioning with automatic cluster count.

The partitioning pipeline follows the symmetric-normalized-Laplacian
recipe: isolated nodes are split off as singletons, the remaining graph
is embedded in the first k eigenvectors (rows normalized), k is chosen
by the largest eigengap, and seeded k-means restarts are scored by the
normalized-cut objective.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .network import CoCitationNetwork

__all__ = [
    "ClusterOptions",
    "Partition",
    "cut",
    "normalized_cut",
    "spectral_partition",
    "partition_from_groups",
    "write_partition",
    "read_partition",
]

log = logging.getLogger(__name__)

# Dense eigensolver guardrail; larger networks are rejected outright.
MAX_DENSE_NODES = 2000

# Eigenvalues below this are treated as zero (connected components).
_EIG_ZERO = 1e-9


@dataclass(frozen=True)
class ClusterOptions:
    seed: int = 42
    restarts: int = 10
    max_k: int = 50

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.max_k < 2:
            raise ValueError("max_k must be >= 2")


@dataclass(frozen=True)
class Partition:
    """A hard, exhaustive assignment of nodes to clusters.

    Cluster ids run 0..k-1 ordered by descending size (ties by smallest
    member key); `clusters` holds the exact fibers of `assignment`.
    """

    assignment: dict[str, int]
    clusters: dict[int, frozenset[str]]
    k: int
    ncut_value: float

    def __post_init__(self):
        fibers: dict[int, set[str]] = {}
        for node, cid in self.assignment.items():
            fibers.setdefault(cid, set()).add(node)
        if {c: frozenset(m) for c, m in fibers.items()} != self.clusters:
            raise ValueError("clusters are not the fibers of assignment")
        if sorted(self.clusters) != list(range(self.k)):
            raise ValueError("cluster ids must be 0..k-1")
        sizes = [(len(self.clusters[c]), min(self.clusters[c])) for c in range(self.k)]
        for a, b in zip(sizes, sizes[1:]):
            if (-a[0], a[1]) > (-b[0], b[1]):
                raise ValueError("cluster ids must be ordered by descending size")

    def members(self, cid: int) -> frozenset[str]:
        return self.clusters[cid]


def _canonical_groups(groups: Iterable[Iterable[str]]) -> list[frozenset[str]]:
    sets = [frozenset(g) for g in groups if g]
    return sorted(sets, key=lambda g: (-len(g), min(g)))


def partition_from_groups(net: CoCitationNetwork, groups: Iterable[Iterable[str]]) -> Partition:
    """Build a canonical Partition from raw member groups and record its
    normalized-cut value."""
    ordered = _canonical_groups(groups)
    assignment: dict[str, int] = {}
    for cid, members in enumerate(ordered):
        for node in members:
            if node in assignment:
                raise ValueError(f"node {node!r} assigned twice")
            assignment[node] = cid
    missing = set(net.nodes) - set(assignment)
    if missing:
        raise ValueError(f"partition not exhaustive, missing {sorted(missing)[:3]}...")
    extra = set(assignment) - set(net.nodes)
    if extra:
        raise ValueError(f"partition has unknown nodes {sorted(extra)[:3]}...")
    part = Partition(
        assignment=assignment,
        clusters={cid: members for cid, members in enumerate(ordered)},
        k=len(ordered),
        ncut_value=0.0,
    )
    ncut = normalized_cut(net, part)
    return Partition(part.assignment, part.clusters, part.k, ncut)


def cut(net: CoCitationNetwork, a: Iterable[str], b: Iterable[str]) -> float:
    """Sum of link weights over ordered pairs (i in A, j in B).

    Overlapping A and B count overlap-internal pairs twice, once per
    order, per the double sum.
    """
    set_a, set_b = set(a), set(b)
    total = 0.0
    for link in net.links:
        if link.i in set_a and link.j in set_b:
            total += link.weight
        if link.j in set_a and link.i in set_b:
            total += link.weight
    return total


def _degrees(net: CoCitationNetwork) -> dict[str, float]:
    deg = {k: 0.0 for k in net.nodes}
    for link in net.links:
        deg[link.i] += link.weight
        deg[link.j] += link.weight
    return deg


def normalized_cut(net: CoCitationNetwork, partition: Partition) -> float:
    """Sum over clusters of boundary weight divided by cluster volume.

    A zero-volume cluster (all members isolated) contributes 0 and is
    logged; it has no boundary to normalize.
    """
    deg = _degrees(net)
    boundary = {cid: 0.0 for cid in partition.clusters}
    for link in net.links:
        ci = partition.assignment[link.i]
        cj = partition.assignment[link.j]
        if ci != cj:
            boundary[ci] += link.weight
            boundary[cj] += link.weight
    total = 0.0
    for cid, members in partition.clusters.items():
        vol = sum(deg[m] for m in members)
        if vol <= 0.0:
            if boundary[cid] > 0.0:
                raise AssertionError("zero-volume cluster with boundary weight")
            log.warning("cluster %d has zero volume; its ncut term is 0", cid)
            continue
        total += boundary[cid] / vol
    return total


def _kmeans(X: np.ndarray, k: int, rng: np.random.Generator, max_iter: int = 300) -> np.ndarray:
    """Seeded k-means with k-means++ initialization; converges when the
    assignment stabilizes. Empty clusters are reseeded to the point
    farthest from its center (deterministic)."""
    n = X.shape[0]
    centers = np.empty((k, X.shape[1]))
    centers[0] = X[int(rng.integers(n))]
    d2 = ((X - centers[0]) ** 2).sum(axis=1)
    for c in range(1, k):
        total = float(d2.sum())
        if total <= 0.0:
            idx = int(rng.integers(n))
        else:
            idx = int(rng.choice(n, p=d2 / total))
        centers[c] = X[idx]
        d2 = np.minimum(d2, ((X - centers[c]) ** 2).sum(axis=1))

    labels = np.full(n, -1)
    for _ in range(max_iter):
        dist = ((X[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        new_labels = dist.argmin(axis=1)
        for c in range(k):
            if not (new_labels == c).any():
                far = int(dist.min(axis=1).argmax())
                new_labels[far] = c
        if (new_labels == labels).all():
            break
        labels = new_labels
        for c in range(k):
            centers[c] = X[labels == c].mean(axis=0)
    return labels


def _sweep_splits(W: np.ndarray, d: np.ndarray, fiedler: np.ndarray, inv_sqrt: np.ndarray):
    """Prefix index sets of the Fiedler orderings (symmetric and
    random-walk scalings) whose threshold cut minimizes the normalized
    cut along each sweep."""
    m = W.shape[0]
    total_vol = float(d.sum())
    splits = []
    for vector in (fiedler, fiedler * inv_sqrt):
        order = np.lexsort((np.arange(m), vector))
        best_t, best_value = None, None
        intra = 0.0
        vol_a = 0.0
        for t in range(1, m):
            x = order[t - 1]
            intra += 2.0 * float(W[x, order[: t - 1]].sum())
            vol_a += float(d[x])
            cross = vol_a - intra
            vol_b = total_vol - vol_a
            if vol_a <= 0.0 or vol_b <= 0.0:
                continue
            value = cross / vol_a + cross / vol_b
            if best_value is None or value < best_value:
                best_t, best_value = t, value
        if best_t is not None:
            splits.append(tuple(int(i) for i in order[:best_t]))
    return splits


def _pick_k(lam: np.ndarray, max_k: int, n_components: int) -> int:
    """Largest-eigengap choice of k over [2, k_max]; a flat spectrum
    (no meaningful gap) falls back to the connected-component count."""
    m = lam.shape[0]
    k_max = min(m - 1, max_k)
    if k_max < 2:
        return 1
    gaps = lam[2 : k_max + 1] - lam[1:k_max]  # gap at k = lam[k] - lam[k-1], 0-based
    if gaps.size == 0 or float(gaps.max()) < _EIG_ZERO:
        # Flat spectrum over the whole search range: no gap to speak of.
        # Fall back to the connected-component count (1 for a single
        # homogeneous block such as one clique).
        return min(max(n_components, 1), k_max)
    return int(np.argmax(gaps)) + 2


def spectral_partition(net: CoCitationNetwork, opts: ClusterOptions | None = None) -> Partition:
    """Partition the network by normalized-cut spectral clustering.

    Isolated nodes become singleton clusters first; on the rest, k is
    chosen by the largest eigengap of the symmetric normalized
    Laplacian, nodes are embedded in the first k eigenvectors (rows
    normalized), and the best of `opts.restarts` seeded k-means runs is
    kept by lowest normalized cut (ties by restart index).
    """
    opts = opts or ClusterOptions()
    keys = net.node_keys()
    if not keys:
        raise ValueError("cannot partition an empty network")
    if len(keys) > MAX_DENSE_NODES:
        raise ValueError(
            f"network has {len(keys)} nodes; dense spectral partitioning is "
            f"limited to {MAX_DENSE_NODES}"
        )

    deg = _degrees(net)
    isolated = [k for k in keys if deg[k] <= 0.0]
    connected = [k for k in keys if deg[k] > 0.0]
    singletons = [{k} for k in isolated]

    if len(connected) < 2:
        groups = singletons + [{k} for k in connected]
        return partition_from_groups(net, groups)

    _, W = net.weight_matrix(order=connected)
    d = W.sum(axis=1)
    inv_sqrt = 1.0 / np.sqrt(d)
    L = np.eye(len(connected)) - (inv_sqrt[:, None] * W * inv_sqrt[None, :])
    L = (L + L.T) / 2.0
    try:
        lam, vecs = np.linalg.eigh(L)
    except np.linalg.LinAlgError as exc:
        raise RuntimeError(
            f"eigensolver failed on {len(connected)}x{len(connected)} Laplacian "
            f"(degree range {d.min():.3g}..{d.max():.3g})"
        ) from exc

    n_components = int((lam < _EIG_ZERO).sum())
    k = _pick_k(lam, opts.max_k, n_components)

    if k <= 1:
        return partition_from_groups(net, singletons + [set(connected)])

    U = vecs[:, :k]
    norms = np.linalg.norm(U, axis=1)
    norms[norms == 0.0] = 1.0
    U = U / norms[:, None]

    best: Partition | None = None
    for restart in range(opts.restarts):
        rng = np.random.default_rng([opts.seed, restart])
        labels = _kmeans(U, k, rng)
        groups: dict[int, set[str]] = {}
        for key, label in zip(connected, labels):
            groups.setdefault(int(label), set()).add(key)
        candidate = partition_from_groups(net, singletons + list(groups.values()))
        if best is None or candidate.ncut_value < best.ncut_value:
            best = candidate
    if k == 2:
        # Fiedler sweep: the best threshold split along the second
        # eigenvector often beats k-means on small unbalanced cuts, and
        # the selection criterion is the same lowest normalized cut.
        for split in _sweep_splits(W, d, vecs[:, 1], inv_sqrt):
            side_a = {connected[i] for i in split}
            side_b = set(connected) - side_a
            candidate = partition_from_groups(net, singletons + [side_a, side_b])
            if best is None or candidate.ncut_value < best.ncut_value:
                best = candidate
    assert best is not None
    return best


def write_partition(partition: Partition) -> str:
    """Render the partition interchange format: one header line, then
    node_key<TAB>cluster_id rows."""
    out = [f"k={partition.k} ncut={partition.ncut_value!r}"]
    for node in sorted(partition.assignment):
        out.append(f"{node}\t{partition.assignment[node]}")
    return "\n".join(out) + "\n"


def read_partition(text: str, net: CoCitationNetwork | None = None) -> Partition:
    """Read the partition format back; when `net` is given, the recorded
    ncut is recomputed and verified against it."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("k="):
        raise ValueError("bad partition header")
    header = dict(part.split("=", 1) for part in lines[0].split())
    assignment: dict[str, int] = {}
    for ln in lines[1:]:
        node, _, cid = ln.rpartition("\t")
        assignment[node] = int(cid)
    groups: dict[int, set[str]] = {}
    for node, cid in assignment.items():
        groups.setdefault(cid, set()).add(node)
    ordered = _canonical_groups(groups.values())
    clusters = {cid: members for cid, members in enumerate(ordered)}
    canonical = {node: cid for cid, members in clusters.items() for node in members}
    part = Partition(canonical, clusters, len(clusters), float(header.get("ncut", "0")))
    if net is not None:
        recomputed = normalized_cut(net, part)
        part = Partition(part.assignment, part.clusters, part.k, recomputed)
    return part
