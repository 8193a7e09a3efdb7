"""
Temporal metrics: Kleinberg burst detection on yearly citation series,
the sigma novelty score, and research-front time spans.

Burst detection uses the batched two-state automaton: each year t
contributes n_t base events of which r_t cite the node; the low state
emits at the baseline rate p0 = sum(r)/sum(n) and the high state at
p1 = min(s*p0, 0.9999). Switching low->high costs gamma*ln(T); the
minimum-cost state sequence is found by dynamic programming and each
maximal high run becomes a burst interval weighted by the total cost
saved versus staying low.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Mapping

__all__ = [
    "BurstOptions",
    "BurstInterval",
    "BurstResult",
    "TimeSpan",
    "detect_bursts",
    "state_costs",
    "sigma",
    "time_span",
    "write_bursts_tsv",
]

log = logging.getLogger(__name__)

_P_CAP = 0.9999


@dataclass(frozen=True)
class BurstOptions:
    s: float = 2.0
    gamma: float = 1.0

    def __post_init__(self):
        if self.s <= 1.0:
            raise ValueError("burst rate ratio s must be > 1")
        if self.gamma <= 0.0:
            raise ValueError("gamma must be > 0")


@dataclass(frozen=True)
class BurstInterval:
    start_year: int
    end_year: int
    weight: float


@dataclass(frozen=True)
class BurstResult:
    node: str
    intervals: tuple[BurstInterval, ...]
    burstness: float


def _log_binom_pmf(n: int, r: int, p: float) -> float:
    coef = math.lgamma(n + 1) - math.lgamma(r + 1) - math.lgamma(n - r + 1)
    out = coef
    if r > 0:
        out += r * math.log(p)
    if n - r > 0:
        out += (n - r) * math.log(1.0 - p)
    return out


def state_costs(
    series: Mapping[int, int], base: Mapping[int, int], opts: BurstOptions | None = None
) -> tuple[list[int], list[float], list[float], float] | None:
    """Per-year low/high state costs and the transition cost, or None
    when no burst state exists (zero baseline or saturated rate).

    Shared by the DP and by exhaustive-enumeration checks.
    """
    opts = opts or BurstOptions()
    years = sorted(base)
    if years != list(range(years[0], years[-1] + 1)):
        raise ValueError("base years must form a contiguous range")
    for year in series:
        if year not in base:
            raise ValueError(f"series year {year} missing from base")
    r = [int(series.get(y, 0)) for y in years]
    n = [int(base[y]) for y in years]
    if any(v < 0 for v in r) or any(v < 0 for v in n):
        raise ValueError("counts must be >= 0")
    if any(rv > nv for rv, nv in zip(r, n)):
        raise ValueError("base(year) must be >= series(year)")

    total_n = sum(n)
    total_r = sum(r)
    if total_n == 0 or total_r == 0:
        return None
    p0 = total_r / total_n
    p1 = min(opts.s * p0, _P_CAP)
    if p1 <= p0:
        log.warning("baseline rate %.4f leaves no room for a burst state", p0)
        return None
    cost0 = [-_log_binom_pmf(n[t], r[t], p0) for t in range(len(years))]
    cost1 = [-_log_binom_pmf(n[t], r[t], p1) for t in range(len(years))]
    trans = opts.gamma * math.log(len(years))
    return years, cost0, cost1, trans


def detect_bursts(
    series: Mapping[int, int],
    base: Mapping[int, int],
    opts: BurstOptions | None = None,
    node: str = "",
) -> BurstResult:
    """Detect burst intervals in a node's yearly citation series against
    the overall citing activity `base`."""
    prepared = state_costs(series, base, opts)
    if prepared is None:
        return BurstResult(node=node, intervals=(), burstness=0.0)
    years, cost0, cost1, trans = prepared
    t_count = len(years)

    # Minimum-cost state sequence; the automaton starts low, so entering
    # the high state at t=0 already pays the transition.
    lo = cost0[0]
    hi = trans + cost1[0]
    pred_lo = [0] * t_count
    pred_hi = [1] * t_count
    for t in range(1, t_count):
        if lo <= hi:
            new_lo, pred_lo[t] = cost0[t] + lo, 0
        else:
            new_lo, pred_lo[t] = cost0[t] + hi, 1
        if hi <= lo + trans:
            new_hi, pred_hi[t] = cost1[t] + hi, 1
        else:
            new_hi, pred_hi[t] = cost1[t] + lo + trans, 0
        lo, hi = new_lo, new_hi

    states = [0] * t_count
    states[-1] = 0 if lo <= hi else 1
    for t in range(t_count - 1, 0, -1):
        states[t - 1] = pred_lo[t] if states[t] == 0 else pred_hi[t]

    intervals = []
    start = None
    for t in range(t_count):
        if states[t] == 1 and start is None:
            start = t
        if start is not None and (t == t_count - 1 or states[t + 1] == 0):
            weight = sum(cost0[u] - cost1[u] for u in range(start, t + 1))
            intervals.append(BurstInterval(years[start], years[t], weight))
            start = None
    burstness = max((iv.weight for iv in intervals), default=0.0)
    return BurstResult(node=node, intervals=tuple(intervals), burstness=burstness)


def sigma(centrality: float, burstness: float) -> float:
    """The novelty score (centrality+1)^burstness; 1 whenever either
    ingredient is 0."""
    if centrality < 0 or burstness < 0:
        raise ValueError("centrality and burstness must be >= 0")
    return (centrality + 1.0) ** burstness


@dataclass(frozen=True)
class TimeSpan:
    cluster_id: int
    mean_citer_year: float
    mean_member_year: float
    tau: float


def time_span(
    member_years: Iterable[int], citer_years: Iterable[int], cluster_id: int = -1
) -> TimeSpan:
    """Time span between a cluster's research front (citers) and its
    intellectual base (members): mean citer year - mean member year + 1."""
    members = [y for y in member_years if y is not None]
    citers = [y for y in citer_years if y is not None]
    if not citers:
        raise ValueError("cluster has no citers")
    if not members:
        raise ValueError("cluster has no member years")
    mean_citer = sum(citers) / len(citers)
    mean_member = sum(members) / len(members)
    return TimeSpan(
        cluster_id=cluster_id,
        mean_citer_year=mean_citer,
        mean_member_year=mean_member,
        tau=mean_citer - mean_member + 1.0,
    )


def write_bursts_tsv(
    results: Mapping[str, BurstResult],
    centrality: Mapping[str, float],
    sigmas: Mapping[str, float],
) -> str:
    """TSV report: node_key, burstness, burst interval, centrality, sigma.
    Nodes with no burst leave the interval columns empty."""
    out = ["node_key\tburstness\tburst_start\tburst_end\tcentrality\tsigma"]
    for key in sorted(results):
        res = results[key]
        strongest = max(res.intervals, key=lambda iv: iv.weight, default=None)
        start = "" if strongest is None else str(strongest.start_year)
        end = "" if strongest is None else str(strongest.end_year)
        out.append(
            f"{key}\t{res.burstness:.4f}\t{start}\t{end}"
            f"\t{centrality.get(key, 0.0):.6f}\t{sigmas.get(key, 1.0):.4f}"
        )
    return "\n".join(out) + "\n"
