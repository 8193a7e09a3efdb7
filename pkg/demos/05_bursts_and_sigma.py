"""Citation burst detection and the sigma novelty score.

A node's yearly citation series is judged against the total citing
activity per year; the two-state automaton pays a transition cost to
enter the high state, and each burst interval is weighted by the cost
saved versus staying low.
"""
from cociter import detect_bursts, sigma
from cociter.temporal import BurstOptions

years = list(range(1996, 2009))
base = {y: 400 for y in years}

# an h-index-like archetype: silent until 2005, then a sharp rise
series = {y: 0 for y in years}
series.update({2005: 10, 2006: 18, 2007: 26, 2008: 35})
result = detect_bursts(series, base, BurstOptions(s=2.0, gamma=1.0))
print("hot-tail series:")
for iv in result.intervals:
    print(f"  burst {iv.start_year}-{iv.end_year}, weight {iv.weight:.2f}")
print(f"  burstness = {result.burstness:.2f}")

flat = detect_bursts({y: 12 for y in years}, base)
print(f"\nflat series: intervals={flat.intervals} burstness={flat.burstness}")

print("\nsigma = (centrality + 1) ^ burstness")
for centrality, burstness in [(0.0, 15.75), (0.05, 0.0), (0.05, 15.75), (0.12, 4.0)]:
    print(f"  centrality={centrality:4.2f} burstness={burstness:5.2f} -> sigma={sigma(centrality, burstness):.4f}")
