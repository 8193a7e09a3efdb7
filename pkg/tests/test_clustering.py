import itertools
import random
import time

import pytest

from cociter.clustering import (
    ClusterOptions,
    Partition,
    cut,
    normalized_cut,
    partition_from_groups,
    read_partition,
    spectral_partition,
    write_partition,
)
from cociter.network import CoCitationNetwork, Node

from conftest import clique_edges, net_from_edges, random_net


def brute_cut(net, a, b):
    """O(n^2) double loop over ordered pairs, straight off the formula."""
    w = {}
    for link in net.links:
        w[(link.i, link.j)] = link.weight
        w[(link.j, link.i)] = link.weight
    return sum(w.get((i, j), 0.0) for i in a for j in b)


def brute_ncut(net, groups):
    """Independent normalized-cut: per-cluster boundary / volume."""
    keys = net.node_keys()
    total = 0.0
    for group in groups:
        comp = [k for k in keys if k not in group]
        vol = brute_cut(net, group, keys)  # sum of degrees = cut(G_k, V)
        boundary = brute_cut(net, group, comp)
        if vol > 0:
            total += boundary / vol
    return total


class TestCut:
    def test_one_crossing_link(self):
        net = net_from_edges([("a", "b", 0.5)], extra_nodes=["c"])
        assert cut(net, {"a"}, {"b"}) == pytest.approx(0.5)
        assert cut(net, {"a", "c"}, {"b"}) == pytest.approx(0.5)

    def test_empty_set(self):
        net = net_from_edges([("a", "b", 0.5)])
        assert cut(net, {"a"}, set()) == 0.0

    def test_overlapping_sets_counted_per_double_sum(self):
        net = net_from_edges([("a", "b", 1.0)])
        # both orders (a,b) and (b,a) inside the overlap
        assert cut(net, {"a", "b"}, {"a", "b"}) == pytest.approx(2.0)

    def test_matches_brute_force_on_random_sets(self, rng):
        net = random_net(rng, 10, p=0.5, connected=False)
        keys = net.node_keys()
        for _ in range(25):
            a = {k for k in keys if rng.random() < 0.5}
            b = {k for k in keys if rng.random() < 0.5}
            assert cut(net, a, b) == pytest.approx(brute_cut(net, a, b), abs=1e-9)


class TestNormalizedCut:
    def test_disconnected_split_is_zero(self):
        net = net_from_edges(clique_edges(["a", "b", "c"]) + clique_edges(["x", "y", "z"]))
        part = partition_from_groups(net, [{"a", "b", "c"}, {"x", "y", "z"}])
        assert normalized_cut(net, part) == pytest.approx(0.0, abs=1e-12)

    def test_single_cluster_is_zero(self):
        net = net_from_edges(clique_edges(["a", "b", "c"]))
        part = partition_from_groups(net, [{"a", "b", "c"}])
        assert normalized_cut(net, part) == pytest.approx(0.0, abs=1e-12)

    def test_exhaustive_two_partition_oracle(self, rng):
        net = random_net(rng, 8, p=0.6)
        keys = net.node_keys()
        for bits in range(1, 2**7):  # key[0] fixed to side A kills mirror duplicates
            side_a = {keys[0]}
            for idx in range(1, 8):
                if bits & (1 << (idx - 1)):
                    side_a.add(keys[idx])
            side_b = set(keys) - side_a
            if not side_b:
                continue
            part = partition_from_groups(net, [side_a, side_b])
            assert part.ncut_value == pytest.approx(
                brute_ncut(net, [side_a, side_b]), abs=1e-9
            )

    def test_spectral_two_way_near_exhaustive_optimum(self):
        hits = 0
        for seed in range(20):
            rng = random.Random(1000 + seed)
            net = random_net(rng, 8, p=0.6)
            keys = net.node_keys()
            best = None
            for bits in range(1, 2**7):
                side_a = {keys[0]}
                for idx in range(1, 8):
                    if bits & (1 << (idx - 1)):
                        side_a.add(keys[idx])
                side_b = set(keys) - side_a
                if not side_b:
                    continue
                value = brute_ncut(net, [side_a, side_b])
                if best is None or value < best:
                    best = value
            part = spectral_partition(net, ClusterOptions(seed=42, restarts=10, max_k=2))
            assert part.k == 2
            if part.ncut_value <= best * 1.05 + 1e-12:
                hits += 1
        assert hits >= 18, f"spectral 2-way within 5% of optimum on only {hits}/20 fixtures"


class TestSpectralPartition:
    def test_two_cliques_with_weak_bridge(self):
        cliq1 = ["a1", "a2", "a3", "a4"]
        cliq2 = ["b1", "b2", "b3", "b4"]
        edges = clique_edges(cliq1) + clique_edges(cliq2) + [("a1", "b1", 0.01)]
        part = spectral_partition(net_from_edges(edges))
        assert part.k == 2
        assert sorted(map(sorted, part.clusters.values())) == [cliq1, cliq2]

    def test_three_disconnected_triangles(self):
        groups = [["x1", "x2", "x3"], ["y1", "y2", "y3"], ["z1", "z2", "z3"]]
        edges = [e for g in groups for e in clique_edges(g)]
        part = spectral_partition(net_from_edges(edges))
        assert part.k == 3
        assert sorted(map(sorted, part.clusters.values())) == groups

    def test_clique_components_recovered_exactly(self):
        # unequal cliques plus isolated nodes
        groups = [["a1", "a2"], ["b1", "b2", "b3", "b4", "b5"], ["c1", "c2", "c3"]]
        edges = [e for g in groups for e in clique_edges(g)]
        part = spectral_partition(net_from_edges(edges, extra_nodes=["iso1", "iso2"]))
        expected = sorted(map(sorted, groups + [["iso1"], ["iso2"]]))
        assert sorted(map(sorted, part.clusters.values())) == expected

    def test_single_clique_is_one_cluster(self):
        part = spectral_partition(net_from_edges(clique_edges(["a", "b", "c", "d"])))
        assert part.k == 1

    def test_isolated_nodes_become_singletons(self):
        edges = clique_edges(["a", "b", "c"])
        part = spectral_partition(net_from_edges(edges, extra_nodes=["lonely"]))
        assert {"lonely"} in part.clusters.values()

    def _planted(self, seed, n_blocks=3, block=10, p_in=0.9, p_out=0.05):
        rng = random.Random(seed)
        names = [f"b{b}_{i:02d}" for b in range(n_blocks) for i in range(block)]
        edges = []
        for x in range(len(names)):
            for y in range(x + 1, len(names)):
                same = names[x].split("_")[0] == names[y].split("_")[0]
                if rng.random() < (p_in if same else p_out):
                    edges.append((names[x], names[y], 1.0))
        return net_from_edges(edges, extra_nodes=names), names

    def test_planted_partition_recovery(self):
        agreements = []
        for seed in range(20):
            net, names = self._planted(seed)
            t0 = time.perf_counter()
            part = spectral_partition(net, ClusterOptions(seed=7, restarts=10))
            elapsed = time.perf_counter() - t0
            assert elapsed < 1.0, f"instance took {elapsed:.2f}s"
            assert part.k == 3, f"seed {seed}: eigengap chose k={part.k}"
            truth = {name: int(name[1]) for name in names}
            best = 0
            for perm in itertools.permutations(range(3)):
                agree = sum(
                    1 for name in names if perm[part.assignment[name]] == truth[name]
                )
                best = max(best, agree)
            agreements.append(best / len(names))
        mean_agreement = sum(agreements) / len(agreements)
        assert mean_agreement >= 0.95, f"mean block agreement {mean_agreement:.3f}"

    def test_determinism(self):
        rng = random.Random(5)
        net = random_net(rng, 14, p=0.4)
        opts = ClusterOptions(seed=11, restarts=5)
        a = spectral_partition(net, opts)
        b = spectral_partition(net, opts)
        assert a.assignment == b.assignment
        assert a.ncut_value == b.ncut_value

    def test_permutation_invariance(self, rng):
        net = random_net(rng, 12, p=0.4)
        part = spectral_partition(net)
        # same graph with links supplied in reversed order
        reversed_net = CoCitationNetwork(
            net.unit,
            net.measure,
            dict(sorted(net.nodes.items(), reverse=True)),
            tuple(reversed(net.links)),
            net.citer_index,
        )
        part2 = spectral_partition(reversed_net)
        assert sorted(map(sorted, part.clusters.values())) == sorted(
            map(sorted, part2.clusters.values())
        )

    def test_ncut_value_matches_recomputation(self, rng):
        net = random_net(rng, 12, p=0.4)
        part = spectral_partition(net)
        assert part.ncut_value == pytest.approx(normalized_cut(net, part), abs=1e-12)
        assert part.ncut_value == pytest.approx(
            brute_ncut(net, list(part.clusters.values())), abs=1e-9
        )

    def test_cluster_numbering_by_size_then_member(self):
        edges = clique_edges(["a1", "a2"]) + clique_edges(["z1", "z2", "z3"])
        part = spectral_partition(net_from_edges(edges))
        assert part.clusters[0] == frozenset({"z1", "z2", "z3"})
        assert part.clusters[1] == frozenset({"a1", "a2"})

    def test_oversize_network_rejected(self):
        nodes = {f"n{i}": Node(f"n{i}", {2000: 1}, 2000) for i in range(2001)}
        net = CoCitationNetwork("cited_author", "cosine", nodes, ())
        with pytest.raises(ValueError, match="2000"):
            spectral_partition(net)

    def test_hardness_and_exhaustiveness(self, rng):
        net = random_net(rng, 15, p=0.3, connected=False)
        part = spectral_partition(net)
        seen = set()
        for members in part.clusters.values():
            assert members, "empty cluster"
            assert not (members & seen)
            seen |= members
        assert seen == set(net.node_keys())


def test_partition_file_round_trip(rng):
    net = random_net(rng, 10, p=0.5)
    part = spectral_partition(net)
    text = write_partition(part)
    back = read_partition(text, net)
    assert back.assignment == part.assignment
    assert back.k == part.k
    assert back.ncut_value == pytest.approx(part.ncut_value, abs=1e-12)


def test_partition_invariant_enforced():
    with pytest.raises(ValueError):
        Partition({"a": 0, "b": 0}, {0: frozenset({"a"})}, 1, 0.0)
