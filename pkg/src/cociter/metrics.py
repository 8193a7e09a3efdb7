"""
Structural metrics over co-citation networks and partitions:
betweenness centrality (Brandes, unweighted shortest paths), weighted
modularity, and silhouette over the 1 - w dissimilarity.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass

import numpy as np

from .clustering import Partition
from .network import CoCitationNetwork

__all__ = [
    "NodeMetrics",
    "PartitionMetrics",
    "betweenness",
    "modularity",
    "silhouette",
    "compute_metrics",
    "write_metrics_tsv",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class NodeMetrics:
    betweenness: dict[str, float]
    silhouette: dict[str, float]


@dataclass(frozen=True)
class PartitionMetrics:
    modularity_q: float
    per_cluster_silhouette: dict[int, float]
    mean_silhouette: float
    flags: tuple[str, ...] = ()


def betweenness(net: CoCitationNetwork) -> dict[str, float]:
    """Betweenness centrality by Brandes accumulation over unweighted
    shortest paths, halved for undirectedness and normalized by
    (n-1)(n-2)/2 into [0, 1]."""
    adj = net.neighbors()
    keys = net.node_keys()
    cb = {k: 0.0 for k in keys}
    for s in keys:
        stack: list[str] = []
        preds: dict[str, list[str]] = {v: [] for v in keys}
        sigma = {v: 0 for v in keys}
        dist = {v: -1 for v in keys}
        sigma[s] = 1
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for w in adj[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = {v: 0.0 for v in keys}
        while stack:
            w = stack.pop()
            for v in preds[w]:
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
            if w != s:
                cb[w] += delta[w]
    n = len(keys)
    norm = (n - 1) * (n - 2) / 2.0
    if norm <= 0:
        return {k: 0.0 for k in keys}
    return {k: cb[k] / 2.0 / norm for k in keys}


def modularity(net: CoCitationNetwork, partition: Partition) -> float:
    """Weighted modularity Q: the within-cluster weight fraction minus
    its degree-model expectation. Returns 0 (logged) for a network with
    no link weight."""
    two_m = 2.0 * sum(link.weight for link in net.links)
    if two_m <= 0.0:
        log.warning("network has zero total weight; Q defined as 0")
        return 0.0
    deg: dict[str, float] = {k: 0.0 for k in net.nodes}
    intra = {cid: 0.0 for cid in partition.clusters}
    for link in net.links:
        deg[link.i] += link.weight
        deg[link.j] += link.weight
        ci = partition.assignment[link.i]
        if ci == partition.assignment[link.j]:
            intra[ci] += link.weight
    q = 0.0
    for cid, members in partition.clusters.items():
        degsum = sum(deg[m] for m in members)
        q += 2.0 * intra[cid] / two_m - (degsum / two_m) ** 2
    return q


def silhouette(
    net: CoCitationNetwork, partition: Partition
) -> tuple[dict[str, float], dict[int, float], float]:
    """Per-node, per-cluster, and mean silhouette over d = 1 - w.

    Unlinked pairs sit at the maximum dissimilarity 1. Members of
    singleton clusters score 0 by convention; a single-cluster
    partition scores 0 everywhere (logged).
    """
    keys = net.node_keys()
    node_sil: dict[str, float] = {}
    if partition.k < 2:
        log.warning("silhouette undefined for k=%d; all values set to 0", partition.k)
        node_sil = {k: 0.0 for k in keys}
    else:
        _, W = net.weight_matrix(order=keys)
        D = 1.0 - W
        np.fill_diagonal(D, 0.0)
        index = {k: i for i, k in enumerate(keys)}
        members = {cid: sorted(m) for cid, m in partition.clusters.items()}
        rows = {cid: np.array([index[m] for m in ms]) for cid, ms in members.items()}
        for key in keys:
            i = index[key]
            own = partition.assignment[key]
            if len(members[own]) < 2:
                node_sil[key] = 0.0
                continue
            own_rows = rows[own]
            a = (D[i, own_rows].sum()) / (len(own_rows) - 1)
            b = min(
                float(D[i, rows[cid]].mean())
                for cid in partition.clusters
                if cid != own
            )
            denom = max(a, b)
            node_sil[key] = 0.0 if denom == 0.0 else (b - a) / denom
    per_cluster = {
        cid: float(np.mean([node_sil[m] for m in ms]))
        for cid, ms in partition.clusters.items()
    }
    mean = float(np.mean([node_sil[k] for k in keys])) if keys else 0.0
    return node_sil, per_cluster, mean


def compute_metrics(net: CoCitationNetwork, partition: Partition) -> tuple[NodeMetrics, PartitionMetrics]:
    flags = []
    total_weight = sum(link.weight for link in net.links)
    if total_weight <= 0.0:
        flags.append("zero_total_weight")
    if partition.k < 2:
        flags.append("single_cluster_silhouette")
    if any(len(m) == 1 for m in partition.clusters.values()):
        flags.append("singleton_clusters")
    node_sil, per_cluster, mean_sil = silhouette(net, partition)
    node = NodeMetrics(betweenness=betweenness(net), silhouette=node_sil)
    part = PartitionMetrics(
        modularity_q=modularity(net, partition),
        per_cluster_silhouette=per_cluster,
        mean_silhouette=mean_sil,
        flags=tuple(flags),
    )
    return node, part


def write_metrics_tsv(
    partition: Partition, node: NodeMetrics, part: PartitionMetrics
) -> str:
    """TSV report: node_key, betweenness, silhouette, cluster_id, then a
    summary line. Q and the mean silhouette print at 4 decimals."""
    out = ["node_key\tbetweenness\tsilhouette\tcluster_id"]
    for key in sorted(partition.assignment):
        out.append(
            f"{key}\t{node.betweenness[key]:.6f}\t{node.silhouette[key]:.6f}"
            f"\t{partition.assignment[key]}"
        )
    out.append(
        f"Q={part.modularity_q:.4f} mean_sil={part.mean_silhouette:.4f} k={partition.k}"
    )
    return "\n".join(out) + "\n"
