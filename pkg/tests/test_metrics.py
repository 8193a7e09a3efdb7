import random
from collections import deque

import pytest

from cociter.clustering import partition_from_groups
from cociter.metrics import betweenness, compute_metrics, modularity, silhouette, write_metrics_tsv

from conftest import clique_edges, net_from_edges, random_net


def brute_betweenness(net):
    """BFS per source, explicit shortest-path counting per pair: for
    every (s, t) count the shortest paths and how many pass through each
    interior node."""
    keys = net.node_keys()
    adj = net.neighbors()

    def bfs_counts(s):
        dist = {s: 0}
        paths = {s: 1}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    paths[w] = 0
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    paths[w] += paths[v]
        return dist, paths

    per = {s: bfs_counts(s) for s in keys}
    raw = {k: 0.0 for k in keys}
    for si, s in enumerate(keys):
        for t in keys[si + 1 :]:
            dist_s, paths_s = per[s]
            if t not in dist_s:
                continue
            d_st = dist_s[t]
            total = paths_s[t]
            dist_t, paths_t = per[t]
            for v in keys:
                if v in (s, t) or v not in dist_s or v not in dist_t:
                    continue
                if dist_s[v] + dist_t[v] == d_st:
                    raw[v] += paths_s[v] * paths_t[v] / total
    n = len(keys)
    norm = (n - 1) * (n - 2) / 2
    return {k: (raw[k] / norm if norm > 0 else 0.0) for k in keys}


def brute_modularity(net, partition):
    """Direct double sum over ordered node pairs."""
    keys = net.node_keys()
    w = {}
    for link in net.links:
        w[(link.i, link.j)] = link.weight
        w[(link.j, link.i)] = link.weight
    two_m = sum(w.values())
    if two_m == 0:
        return 0.0
    deg = {k: sum(w.get((k, j), 0.0) for j in keys) for k in keys}
    q = 0.0
    for i in keys:
        for j in keys:
            if partition.assignment[i] == partition.assignment[j]:
                q += w.get((i, j), 0.0) - deg[i] * deg[j] / two_m
    return q / two_m


def brute_silhouette(net, partition):
    """Nested-loop a/b computation over d = 1 - w."""
    keys = net.node_keys()
    w = {}
    for link in net.links:
        w[(link.i, link.j)] = link.weight
        w[(link.j, link.i)] = link.weight

    def d(i, j):
        return 1.0 - w.get((i, j), 0.0)

    values = {}
    for i in keys:
        own = partition.assignment[i]
        own_members = [m for m in partition.clusters[own] if m != i]
        if not own_members:
            values[i] = 0.0
            continue
        a = sum(d(i, m) for m in own_members) / len(own_members)
        b = min(
            sum(d(i, m) for m in members) / len(members)
            for cid, members in partition.clusters.items()
            if cid != own
        )
        values[i] = 0.0 if max(a, b) == 0 else (b - a) / max(a, b)
    return values


class TestBetweenness:
    def test_path_graph(self):
        net = net_from_edges([("a", "b", 1.0), ("b", "c", 1.0)])
        assert betweenness(net) == {"a": 0.0, "b": 1.0, "c": 0.0}

    def test_complete_graph_all_zero(self):
        net = net_from_edges(clique_edges(["a", "b", "c", "d"]))
        assert all(v == 0.0 for v in betweenness(net).values())

    def test_matches_brute_force_on_random_graphs(self):
        for seed in range(20):
            rng = random.Random(2000 + seed)
            net = random_net(rng, 12, p=0.3, connected=False)
            got = betweenness(net)
            expected = brute_betweenness(net)
            for key in net.node_keys():
                assert got[key] == pytest.approx(expected[key], abs=1e-9), f"seed {seed}"

    def test_unit_length_edges_regardless_of_weight(self):
        heavy = net_from_edges([("a", "b", 0.9), ("b", "c", 0.9)])
        light = net_from_edges([("a", "b", 0.1), ("b", "c", 0.1)])
        assert betweenness(heavy) == betweenness(light)

    def test_relabeling_invariance(self, rng):
        net = random_net(rng, 10, p=0.4, connected=False)
        mapping = {k: f"z{idx}" for idx, k in enumerate(net.node_keys())}
        relabeled = net_from_edges(
            [(mapping[l.i], mapping[l.j], l.weight) for l in net.links],
            extra_nodes=[mapping[k] for k in net.node_keys()],
        )
        got = betweenness(net)
        got_relabeled = betweenness(relabeled)
        for key in net.node_keys():
            assert got[key] == pytest.approx(got_relabeled[mapping[key]], abs=1e-12)

    def test_range(self, rng):
        net = random_net(rng, 9, p=0.5, connected=False)
        for value in betweenness(net).values():
            assert 0.0 <= value <= 1.0


class TestModularity:
    def test_two_disconnected_cliques_split_correctly(self):
        a = ["a1", "a2", "a3", "a4"]
        b = ["b1", "b2", "b3", "b4"]
        net = net_from_edges(clique_edges(a) + clique_edges(b))
        part = partition_from_groups(net, [set(a), set(b)])
        assert modularity(net, part) == pytest.approx(0.5, abs=1e-12)

    def test_everything_in_one_cluster_is_zero(self, rng):
        net = random_net(rng, 8, p=0.5)
        part = partition_from_groups(net, [set(net.node_keys())])
        assert modularity(net, part) == pytest.approx(0.0, abs=1e-12)

    def test_matches_double_sum_oracle(self, rng):
        for _ in range(10):
            net = random_net(rng, 15, p=0.3, connected=False)
            keys = net.node_keys()
            groups = {}
            for key in keys:
                groups.setdefault(rng.randrange(3), set()).add(key)
            part = partition_from_groups(net, groups.values())
            assert modularity(net, part) == pytest.approx(
                brute_modularity(net, part), abs=1e-9
            )

    def test_zero_weight_network_flagged_zero(self):
        net = net_from_edges([], extra_nodes=["a", "b"])
        part = partition_from_groups(net, [{"a"}, {"b"}])
        assert modularity(net, part) == 0.0
        _, pm = compute_metrics(net, part)
        assert "zero_total_weight" in pm.flags

    def test_range(self, rng):
        for _ in range(10):
            net = random_net(rng, 10, p=0.4, connected=False)
            groups = {}
            for key in net.node_keys():
                groups.setdefault(rng.randrange(4), set()).add(key)
            part = partition_from_groups(net, groups.values())
            assert -0.5 <= modularity(net, part) <= 1.0


class TestSilhouette:
    def test_perfect_separation_scores_one(self):
        a = ["a1", "a2", "a3"]
        b = ["b1", "b2", "b3"]
        net = net_from_edges(clique_edges(a, 1.0) + clique_edges(b, 1.0))
        part = partition_from_groups(net, [set(a), set(b)])
        node_sil, per_cluster, mean = silhouette(net, part)
        assert all(v == pytest.approx(1.0) for v in node_sil.values())
        assert mean == pytest.approx(1.0)
        assert all(v == pytest.approx(1.0) for v in per_cluster.values())

    def test_singleton_cluster_member_is_zero(self):
        net = net_from_edges(clique_edges(["a1", "a2", "a3"]), extra_nodes=["solo"])
        part = partition_from_groups(net, [{"a1", "a2", "a3"}, {"solo"}])
        node_sil, _, _ = silhouette(net, part)
        assert node_sil["solo"] == 0.0

    def test_matches_nested_loop_oracle(self, rng):
        for _ in range(10):
            net = random_net(rng, 10, p=0.4, connected=False)
            groups = {}
            for key in net.node_keys():
                groups.setdefault(rng.randrange(3), set()).add(key)
            part = partition_from_groups(net, groups.values())
            got, _, mean = silhouette(net, part)
            expected = brute_silhouette(net, part)
            for key in net.node_keys():
                assert got[key] == pytest.approx(expected[key], abs=1e-9)
                assert -1.0 <= got[key] <= 1.0
            assert mean == pytest.approx(
                sum(expected.values()) / len(expected), abs=1e-9
            )

    def test_single_cluster_flagged_zero(self, rng):
        net = random_net(rng, 6, p=0.6)
        part = partition_from_groups(net, [set(net.node_keys())])
        node_sil, _, mean = silhouette(net, part)
        assert all(v == 0.0 for v in node_sil.values())
        _, pm = compute_metrics(net, part)
        assert "single_cluster_silhouette" in pm.flags

    def test_absorbing_foreign_block_decreases_cluster_silhouette(self):
        a = ["a1", "a2", "a3", "a4"]
        b = ["b1", "b2", "b3", "b4"]
        c = ["c1", "c2", "c3", "c4"]
        edges = clique_edges(a, 1.0) + clique_edges(b, 1.0) + clique_edges(c, 1.0)
        edges += [("a1", "b1", 0.1), ("b2", "c2", 0.1)]
        net = net_from_edges(edges)
        clean = partition_from_groups(net, [set(a), set(b), set(c)])
        bloated = partition_from_groups(net, [set(a) | set(b), set(c)])
        _, per_clean, _ = silhouette(net, clean)
        _, per_bloated, _ = silhouette(net, bloated)
        cid_clean = next(cid for cid, m in clean.clusters.items() if "a1" in m)
        cid_bloated = next(cid for cid, m in bloated.clusters.items() if "a1" in m)
        assert per_bloated[cid_bloated] < per_clean[cid_clean]


def test_metrics_tsv_format(rng):
    net = random_net(rng, 6, p=0.6)
    from cociter.clustering import spectral_partition

    part = spectral_partition(net)
    node, pm = compute_metrics(net, part)
    text = write_metrics_tsv(part, node, pm)
    lines = text.strip().splitlines()
    assert lines[0] == "node_key\tbetweenness\tsilhouette\tcluster_id"
    assert len(lines) == len(net.nodes) + 2
    summary = lines[-1]
    assert summary.startswith("Q=") and f"k={part.k}" in summary
    q_text = summary.split()[0][2:]
    assert len(q_text.split(".")[1]) == 4  # four decimals
