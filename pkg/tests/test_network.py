import math

import pytest

from cociter.network import (
    build_network,
    cited_keys,
    merge_networks,
    read_edgelist,
    select_top_cited,
    similarity,
    slice_records,
    write_edgelist,
)

from conftest import make_record, record_set


def _random_corpus(rng, n_records=30, authors=12, start=2000, end=2004):
    pool = [f"AUTH {chr(ord('A') + i)}" for i in range(authors)]
    records = []
    for i in range(n_records):
        cited = rng.sample(pool, rng.randint(1, 5))
        records.append(make_record(f"R{i:03d}", rng.randint(start, end), cited))
    return record_set(records)


class TestSliceRecords:
    def test_thirteen_one_year_slices(self):
        rs = record_set([make_record(f"R{y}", y, ["A X"]) for y in range(1996, 2009)])
        slices = slice_records(rs, 1996, 2008, 1)
        assert len(slices) == 13
        assert [s.start_year for s in slices] == list(range(1996, 2009))
        assert all(s.start_year == s.end_year for s in slices)

    def test_single_five_year_slice(self):
        rs = record_set([make_record(f"R{y}", y, ["A X"]) for y in range(2001, 2006)])
        slices = slice_records(rs, 2001, 2005, 5)
        assert len(slices) == 1
        assert (slices[0].start_year, slices[0].end_year) == (2001, 2005)
        assert len(slices[0].records) == 5

    def test_remainder_slice(self):
        rs = record_set([])
        slices = slice_records(rs, 2000, 2002, 2)
        assert [(s.start_year, s.end_year) for s in slices] == [(2000, 2001), (2002, 2002)]

    def test_unknown_year_excluded(self):
        rs = record_set(
            [make_record("R1", 2000, ["A X"]), make_record("R2", None, ["A X"])]
        )
        slices = slice_records(rs, 2000, 2000, 1)
        assert [r.uid for r in slices[0].records] == ["R1"]

    def test_empty_range_errors(self):
        with pytest.raises(ValueError):
            slice_records(record_set([]), 2005, 2000, 1)


class TestSelectTopCited:
    def test_direct_ordering(self):
        records = []
        uid = 0
        for author, count in [("A X", 5), ("B X", 3), ("C X", 1)]:
            for _ in range(count):
                records.append(make_record(f"R{uid}", 2000, [author]))
                uid += 1
        (sl,) = slice_records(record_set(records), 2000, 2000, 1)
        assert select_top_cited(sl, 2, "cited_author") == ["A X", "B X"]

    def test_saturation(self):
        (sl,) = slice_records(
            record_set([make_record("R0", 2000, ["A X", "B X"])]), 2000, 2000, 1
        )
        assert sorted(select_top_cited(sl, 10, "cited_author")) == ["A X", "B X"]

    def test_matches_brute_force_count_sort(self, rng):
        rs = _random_corpus(rng, n_records=50)
        (sl,) = slice_records(rs, 2000, 2004, 5)
        got = select_top_cited(sl, 10, "cited_author")

        counts = {}
        first = {}
        for record in sl.records:
            for key in {ref.author_key for ref in record.cited_refs}:
                counts[key] = counts.get(key, 0) + 1
                first[key] = min(first.get(key, 9999), record.year)
        expected = sorted(counts, key=lambda k: (-counts[k], first[k], k))[:10]
        assert got == expected

    def test_per_record_deduplication(self):
        # one record citing the same author twice counts once
        record = make_record("R0", 2000, [("A X", 1990), ("A X", 1991)])
        (sl,) = slice_records(record_set([record]), 2000, 2000, 1)
        net = build_network(sl, ["A X"], "cosine", "cited_author")
        assert net.total_citations("A X") == 1


class TestBuildNetwork:
    def test_cosine_spot_value(self):
        # |A| = 4, |B| = 9, |A cap B| = 3  ->  3 / sqrt(36) = 0.5
        records = []
        for i in range(3):
            records.append(make_record(f"B{i}", 2000, ["A X", "B X"]))
        records.append(make_record("OA", 2000, ["A X"]))
        for i in range(6):
            records.append(make_record(f"OB{i}", 2000, ["B X"]))
        (sl,) = slice_records(record_set(records), 2000, 2000, 1)
        net = build_network(sl, ["A X", "B X"], "cosine", "cited_author")
        (link,) = net.links
        assert link.weight == pytest.approx(0.5, abs=1e-12)
        assert link.raw_count == 3

    def test_identical_citer_sets_weight_one(self):
        records = [make_record(f"R{i}", 2000, ["A X", "B X"]) for i in range(2)]
        (sl,) = slice_records(record_set(records), 2000, 2000, 1)
        for measure in ("cosine", "jaccard", "dice"):
            net = build_network(sl, ["A X", "B X"], measure, "cited_author")
            assert net.links[0].weight == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("measure", ["cosine", "jaccard", "dice"])
    def test_weights_match_set_intersection_oracle(self, rng, measure):
        rs = _random_corpus(rng, n_records=30)
        (sl,) = slice_records(rs, 2000, 2004, 5)
        keys = select_top_cited(sl, 12, "cited_author")
        net = build_network(sl, keys, measure, "cited_author")

        citers = {k: set() for k in keys}
        for record in sl.records:
            for key in cited_keys(record, "cited_author") & set(keys):
                citers[key].add(record.uid)
        seen = set()
        for link in net.links:
            inter = len(citers[link.i] & citers[link.j])
            union = len(citers[link.i] | citers[link.j])
            na, nb = len(citers[link.i]), len(citers[link.j])
            if measure == "cosine":
                expected = inter / math.sqrt(na * nb)
            elif measure == "jaccard":
                expected = inter / union
            else:
                expected = 2 * inter / (na + nb)
            assert link.weight == pytest.approx(expected, abs=1e-12)
            assert link.raw_count == inter
            assert inter >= 1
            seen.add((link.i, link.j))
        # completeness: every co-cited pair has a link
        for a in keys:
            for b in keys:
                if a < b and citers[a] & citers[b]:
                    assert (a, b) in seen

    def test_intersection_bounded_by_min_citations(self, rng):
        rs = _random_corpus(rng)
        (sl,) = slice_records(rs, 2000, 2004, 5)
        keys = select_top_cited(sl, 12, "cited_author")
        net = build_network(sl, keys, "cosine", "cited_author")
        for link in net.links:
            assert link.raw_count <= min(net.total_citations(link.i), net.total_citations(link.j))

    def test_no_co_citations_yields_linkless_network(self):
        records = [make_record("R0", 2000, ["A X"]), make_record("R1", 2000, ["B X"])]
        (sl,) = slice_records(record_set(records), 2000, 2000, 1)
        net = build_network(sl, ["A X", "B X"], "cosine", "cited_author")
        assert net.links == ()


class TestMergeNetworks:
    def _slices(self, rng, n=3):
        rs = _random_corpus(rng, n_records=45, start=2000, end=2005)
        return rs, slice_records(rs, 2000, 2005, 2)

    def test_self_merge_idempotent_weights(self, rng):
        rs, slices = self._slices(rng)
        keys = select_top_cited(slices[0], 10, "cited_author")
        net = build_network(slices[0], keys, "cosine", "cited_author")
        merged = merge_networks([net, net])
        assert set(merged.nodes) == set(net.nodes)
        for a, b in zip(
            sorted(merged.links, key=lambda l: (l.i, l.j)),
            sorted(net.links, key=lambda l: (l.i, l.j)),
        ):
            assert (a.i, a.j) == (b.i, b.j)
            assert a.raw_count == 2 * b.raw_count
            assert a.weight == pytest.approx(b.weight, abs=1e-12)

    def test_disjoint_union(self):
        r1 = [make_record("R0", 2000, ["A X", "B X"])]
        r2 = [make_record("R1", 2001, ["C X", "D X"])]
        (s1,) = slice_records(record_set(r1), 2000, 2000, 1)
        (s2,) = slice_records(record_set(r2), 2001, 2001, 1)
        n1 = build_network(s1, ["A X", "B X"], "cosine", "cited_author")
        n2 = build_network(s2, ["C X", "D X"], "cosine", "cited_author")
        merged = merge_networks([n1, n2])
        assert sorted(merged.nodes) == ["A X", "B X", "C X", "D X"]
        assert len(merged.links) == 2  # no new cross links

    def test_merge_equals_single_pass_over_union_keys(self, rng):
        rs, slices = self._slices(rng)
        nets = []
        union_keys = set()
        for sl in slices:
            keys = select_top_cited(sl, 8, "cited_author") if sl.records else []
            union_keys.update(keys)
            nets.append(build_network(sl, keys, "cosine", "cited_author"))
        merged = merge_networks(nets)

        # Oracle: one single-pass build over all records restricted to the
        # union key set, with per-slice key visibility respected by
        # restricting each record to the keys selected in its slice.
        slice_keys = {}
        for sl, net in zip(slices, nets):
            for year in range(sl.start_year, sl.end_year + 1):
                slice_keys[year] = set(net.nodes)
        citers = {k: set() for k in union_keys}
        for sl in slices:
            for record in sl.records:
                for key in cited_keys(record, "cited_author") & slice_keys[record.year]:
                    citers[key].add(record.uid)
        for link in merged.links:
            na, nb = len(citers[link.i]), len(citers[link.j])
            inter = len(citers[link.i] & citers[link.j])
            assert link.weight == pytest.approx(inter / math.sqrt(na * nb), abs=1e-12)

    def test_merge_order_independent(self, rng):
        rs, slices = self._slices(rng)
        nets = [
            build_network(sl, select_top_cited(sl, 8, "cited_author"), "cosine", "cited_author")
            for sl in slices
            if sl.records
        ]
        a = merge_networks(nets)
        b = merge_networks(list(reversed(nets)))
        c = merge_networks([merge_networks(nets[:2]), merge_networks(nets[2:])])
        for other in (b, c):
            assert set(a.nodes) == set(other.nodes)
            assert {(l.i, l.j): (l.weight, l.raw_count, l.first_slice_year) for l in a.links} == {
                (l.i, l.j): (l.weight, l.raw_count, l.first_slice_year) for l in other.links
            }

    def test_mixed_units_rejected(self):
        r = [make_record("R0", 2000, ["A X", "B X"])]
        (sl,) = slice_records(record_set(r), 2000, 2000, 1)
        n1 = build_network(sl, ["A X"], "cosine", "cited_author")
        n2 = build_network(sl, [], "cosine", "cited_reference")
        with pytest.raises(ValueError, match="mixed units"):
            merge_networks([n1, n2])

    def test_first_cited_and_first_slice_years(self):
        r1 = [make_record("E0", 2000, ["A X", "B X"])]
        r2 = [make_record("E1", 2002, ["A X", "B X"])]
        (s1,) = slice_records(record_set(r1), 2000, 2001, 2)
        (s2,) = slice_records(record_set(r2), 2002, 2003, 2)
        keys = ["A X", "B X"]
        merged = merge_networks(
            [
                build_network(s1, keys, "cosine", "cited_author"),
                build_network(s2, keys, "cosine", "cited_author"),
            ]
        )
        assert merged.nodes["A X"].first_cited_year == 2000
        assert merged.links[0].first_slice_year == 2000
        assert merged.nodes["A X"].per_year_counts == {2000: 1, 2002: 1}


def test_monotonicity_raw_counts_never_decrease(rng):
    records = [make_record(f"R{i}", 2000, ["A X", "B X"]) for i in range(3)]
    extra = make_record("R99", 2000, ["A X", "B X", "C X"])
    (before,) = slice_records(record_set(records), 2000, 2000, 1)
    (after,) = slice_records(record_set(records + [extra]), 2000, 2000, 1)
    keys = ["A X", "B X", "C X"]
    net_before = build_network(before, keys, "cosine", "cited_author")
    net_after = build_network(after, keys, "cosine", "cited_author")
    raw_before = {(l.i, l.j): l.raw_count for l in net_before.links}
    raw_after = {(l.i, l.j): l.raw_count for l in net_after.links}
    for pair, raw in raw_before.items():
        assert raw_after[pair] >= raw


def test_weight_positive_iff_cocited(rng):
    rs = _random_corpus(rng, n_records=25)
    (sl,) = slice_records(rs, 2000, 2004, 5)
    keys = select_top_cited(sl, 10, "cited_author")
    net = build_network(sl, keys, "cosine", "cited_author")
    for link in net.links:
        assert link.weight > 0
        identical = net.citer_index[link.i] == net.citer_index[link.j]
        assert (link.weight == pytest.approx(1.0, abs=1e-12)) == identical


def test_edgelist_round_trip(rng):
    rs = _random_corpus(rng)
    (sl,) = slice_records(rs, 2000, 2004, 5)
    keys = select_top_cited(sl, 10, "cited_author")
    net = build_network(sl, keys, "cosine", "cited_author")
    text = write_edgelist(net)
    back = read_edgelist(text)
    assert back.unit == net.unit and back.measure == net.measure
    assert {(l.i, l.j): (l.weight, l.raw_count, l.first_slice_year) for l in back.links} == {
        (l.i, l.j): (l.weight, l.raw_count, l.first_slice_year) for l in net.links
    }


def test_similarity_formulas_direct():
    assert similarity("cosine", 3, 4, 9) == pytest.approx(0.5, abs=1e-15)
    assert similarity("jaccard", 2, 4, 4) == pytest.approx(2 / 6, abs=1e-15)
    assert similarity("dice", 2, 4, 4) == pytest.approx(0.5, abs=1e-15)
    assert similarity("cosine", 0, 4, 9) == 0.0
