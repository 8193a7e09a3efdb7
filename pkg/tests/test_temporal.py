import itertools
import random

import pytest

from cociter.temporal import (
    BurstOptions,
    detect_bursts,
    sigma,
    state_costs,
    time_span,
    write_bursts_tsv,
)


def enumerate_min_cost(series, base, opts=None):
    """Exhaustive oracle: try all 2^T state sequences (automaton starts
    low; entering high pays the transition, leaving is free) and return
    the minimum total cost."""
    prepared = state_costs(series, base, opts)
    assert prepared is not None
    years, cost0, cost1, trans = prepared
    t_count = len(years)
    best = None
    for states in itertools.product((0, 1), repeat=t_count):
        cost = 0.0
        prev = 0
        for t, state in enumerate(states):
            if state == 1 and prev == 0:
                cost += trans
            cost += cost1[t] if state else cost0[t]
            prev = state
        if best is None or cost < best:
            best = cost
    return best


def dp_sequence_cost(result, series, base, opts=None):
    """Total cost of the DP's chosen sequence, reconstructed from its
    reported intervals."""
    prepared = state_costs(series, base, opts)
    years, cost0, cost1, trans = prepared
    high_years = set()
    for iv in result.intervals:
        high_years.update(range(iv.start_year, iv.end_year + 1))
    cost = 0.0
    prev = 0
    for t, year in enumerate(years):
        state = 1 if year in high_years else 0
        if state == 1 and prev == 0:
            cost += trans
        cost += cost1[t] if state else cost0[t]
        prev = state
    return cost


class TestDetectBursts:
    def test_flat_series_has_no_burst(self):
        base = {y: 100 for y in range(2000, 2010)}
        series = {y: 5 for y in range(2000, 2010)}
        result = detect_bursts(series, base)
        assert result.intervals == ()
        assert result.burstness == 0.0

    def test_quiet_then_hot_yields_single_interval_over_hot_years(self):
        # 8 quiet years at 1/yr then 3 hot years at 20/yr, base 100/yr
        years = list(range(1996, 2007))
        series = {y: (1 if y < 2004 else 20) for y in years}
        base = {y: 100 for y in years}
        result = detect_bursts(series, base)
        assert len(result.intervals) == 1
        interval = result.intervals[0]
        assert (interval.start_year, interval.end_year) == (2004, 2006)
        assert interval.weight > 0
        assert result.burstness == pytest.approx(interval.weight)

    def test_hirsch_archetype_interval_starts_at_rise(self):
        # zero before 2005, sharp rise 2005-2008
        years = list(range(1996, 2009))
        series = {y: 0 for y in years}
        series.update({2005: 8, 2006: 14, 2007: 19, 2008: 24})
        base = {y: 120 for y in years}
        result = detect_bursts(series, base)
        assert result.intervals, "expected a burst"
        assert result.intervals[0].start_year == 2005

    def test_all_zero_series(self):
        base = {y: 50 for y in range(2000, 2005)}
        result = detect_bursts({y: 0 for y in base}, base)
        assert result.intervals == () and result.burstness == 0.0

    def test_dp_equals_exhaustive_enumeration(self):
        rng = random.Random(99)
        cases = []
        for t_len in (3, 5, 8, 11, 12):
            for _ in range(6):
                years = list(range(1990, 1990 + t_len))
                base = {y: rng.randint(20, 120) for y in years}
                series = {y: rng.randint(0, base[y] // 3) for y in years}
                if sum(series.values()) == 0:
                    series[years[0]] = 1
                cases.append((series, base))
        # plus the canonical hot-tail shape
        years = list(range(1996, 2007))
        cases.append(({y: (1 if y < 2004 else 20) for y in years}, {y: 100 for y in years}))
        for series, base in cases:
            result = detect_bursts(series, base)
            expected = enumerate_min_cost(series, base)
            got = dp_sequence_cost(result, series, base)
            assert got == pytest.approx(expected, abs=1e-12)

    def test_interval_weights_positive_and_ordered(self):
        rng = random.Random(5)
        years = list(range(1990, 2002))
        base = {y: 100 for y in years}
        for _ in range(20):
            series = {y: rng.randint(0, 30) for y in years}
            result = detect_bursts(series, base)
            previous_end = None
            for iv in result.intervals:
                assert iv.weight > 0
                assert iv.start_year <= iv.end_year
                if previous_end is not None:
                    assert iv.start_year > previous_end
                previous_end = iv.end_year

    def test_uniform_scaling_keeps_interval_locations(self):
        years = list(range(1996, 2007))
        series = {y: (1 if y < 2004 else 20) for y in years}
        base = {y: 100 for y in years}
        scaled = detect_bursts({y: 3 * series[y] for y in years}, {y: 3 * base[y] for y in years})
        plain = detect_bursts(series, base)
        assert [(iv.start_year, iv.end_year) for iv in scaled.intervals] == [
            (iv.start_year, iv.end_year) for iv in plain.intervals
        ]

    def test_base_must_cover_series(self):
        with pytest.raises(ValueError):
            detect_bursts({2000: 5}, {2000: 3})
        with pytest.raises(ValueError):
            detect_bursts({1999: 1}, {2000: 5})
        with pytest.raises(ValueError, match="contiguous"):
            detect_bursts({2000: 1}, {2000: 5, 2002: 5})

    def test_options_validated(self):
        with pytest.raises(ValueError):
            BurstOptions(s=1.0)
        with pytest.raises(ValueError):
            BurstOptions(gamma=0.0)


class TestSigma:
    def test_zero_burstness_is_one(self):
        assert sigma(0.5, 0.0) == 1.0

    def test_zero_centrality_is_one(self):
        assert sigma(0.0, 15.75) == 1.0

    def test_direct_power_evaluation(self):
        assert sigma(0.07, 3.21) == pytest.approx(1.07**3.21)
        assert sigma(0.07, 3.21) == pytest.approx(1.2426, abs=5e-5)

    def test_identities_on_random_pairs(self):
        rng = random.Random(3)
        for _ in range(100):
            c = rng.uniform(0, 1)
            b = rng.uniform(0, 20)
            assert sigma(c, 0.0) == 1.0
            assert sigma(0.0, b) == 1.0

    def test_monotone_in_both_arguments_on_grid(self):
        cs = [i / 10 for i in range(11)]
        bs = [i / 2 for i in range(21)]
        for b in bs:
            values = [sigma(c, b) for c in cs]
            assert values == sorted(values)
        for c in cs:
            values = [sigma(c, b) for b in bs]
            assert values == sorted(values)

    def test_always_at_least_one(self):
        rng = random.Random(4)
        for _ in range(200):
            assert sigma(rng.uniform(0, 1), rng.uniform(0, 16)) >= 1.0

    def test_negative_inputs_rejected(self):
        with pytest.raises(ValueError):
            sigma(-0.1, 1.0)


class TestTimeSpan:
    @pytest.mark.parametrize(
        "citer_mean,member_mean,expected_tau",
        [(2000, 1973, 28.0), (2000, 1979, 22.0), (2000, 1992, 9.0), (2003, 1999, 5.0), (2007, 2005, 3.0)],
    )
    def test_paper_style_spans(self, citer_mean, member_mean, expected_tau):
        span = time_span([member_mean], [citer_mean], cluster_id=1)
        assert span.tau == pytest.approx(expected_tau, abs=1e-12)

    def test_same_year_front_and_base(self):
        span = time_span([2005, 2007], [2005, 2007])
        assert span.tau == pytest.approx(1.0)

    def test_means_reported(self):
        span = time_span([1970, 1976], [1999, 2001], cluster_id=3)
        assert span.mean_member_year == pytest.approx(1973.0)
        assert span.mean_citer_year == pytest.approx(2000.0)
        assert span.tau == pytest.approx(28.0)
        assert span.cluster_id == 3

    def test_no_citers_errors(self):
        with pytest.raises(ValueError, match="no citers"):
            time_span([2000], [])


def test_bursts_tsv_format():
    base = {y: 100 for y in range(1996, 2007)}
    series = {y: (1 if y < 2004 else 20) for y in base}
    result = detect_bursts(series, base, node="HIRSCH JE")
    text = write_bursts_tsv({"HIRSCH JE": result}, {"HIRSCH JE": 0.05}, {"HIRSCH JE": 1.5})
    lines = text.strip().splitlines()
    assert lines[0].startswith("node_key\tburstness")
    assert lines[1].startswith("HIRSCH JE\t")
    assert "\t2004\t2006\t" in lines[1]
