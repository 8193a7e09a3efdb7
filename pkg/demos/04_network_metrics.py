"""Structural metrics: betweenness centrality, modularity Q, silhouette.

Small closed-form graphs first, then a planted-community network.
"""
from cociter import betweenness, build_network, generate_corpus, modularity, select_top_cited, silhouette, slice_records, spectral_partition
from cociter.network import CoCitationNetwork, Link, Node


def toy(edges, extra=()):
    keys = set(extra)
    for i, j, _ in edges:
        keys.update((i, j))
    nodes = {k: Node(k, {2000: 1}, 2000) for k in sorted(keys)}
    links = tuple(Link(min(i, j), max(i, j), w, 1, 2000) for i, j, w in edges)
    return CoCitationNetwork("cited_author", "cosine", nodes, links)


path = toy([("a", "b", 1.0), ("b", "c", 1.0)])
print("path a-b-c betweenness:", betweenness(path))  # b carries the only pair

from cociter.clustering import partition_from_groups

cliques = toy(
    [(a, b, 1.0) for i, a in enumerate("pqrs") for b in "pqrs"[i + 1:]]
    + [(a, b, 1.0) for i, a in enumerate("wxyz") for b in "wxyz"[i + 1:]]
)
split = partition_from_groups(cliques, [set("pqrs"), set("wxyz")])
print("two disconnected cliques, split correctly: Q =", modularity(cliques, split))
node_sil, per_cluster, mean_sil = silhouette(cliques, split)
print("perfectly separated clusters: mean silhouette =", mean_sil)

# realistic numbers on a planted corpus
rs = generate_corpus(n_records=250, n_communities=4, refs_per_community=12, seed=6)
(sl,) = slice_records(rs, 1996, 2008, 13)
net = build_network(sl, select_top_cited(sl, 40, "cited_reference"), "cosine", "cited_reference")
part = spectral_partition(net)
print(f"\nplanted corpus: k={part.k}  Q={modularity(net, part):.4f}")
_, per_cluster, mean_sil = silhouette(net, part)
print(f"mean silhouette {mean_sil:.4f}; per cluster:",
      {c: round(v, 3) for c, v in per_cluster.items()})
central = sorted(betweenness(net).items(), key=lambda kv: -kv[1])[:3]
print("highest-betweenness nodes:", [(k[:30], round(v, 4)) for k, v in central])
