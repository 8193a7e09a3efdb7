"""
Synthetic corpora with planted community structure, and the
network-size experiment harness that tracks how the cluster count,
modularity, and silhouette respond as the number of selected top-cited
entities grows.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .clustering import ClusterOptions, spectral_partition
from .ingest import CitedReference, Record, RecordSet, Provenance
from .metrics import compute_metrics
from .network import build_network, select_top_cited, slice_records

__all__ = ["COMMUNITY_THEMES", "generate_corpus", "SizeRow", "size_experiment", "render_size_report"]

# One vocabulary pool per planted community; titles and abstracts are
# assembled from these so labeling has distinct material per block.
COMMUNITY_THEMES: list[list[str]] = [
    ["interactive information retrieval", "user study", "search behavior", "relevance judgment"],
    ["probabilistic retrieval model", "query expansion", "term weighting", "test collection"],
    ["bibliometric analysis", "citation count", "research productivity", "publication pattern"],
    ["webometric analysis", "academic web", "hyperlink structure", "link motivation"],
    ["h-index", "research evaluation", "ranking scientist", "output indicator"],
    ["knowledge management", "organizational learning", "intellectual capital", "tacit knowledge"],
    ["digital library", "metadata quality", "preservation policy", "access service"],
    ["science mapping", "network visualization", "domain structure", "intellectual turning point"],
    ["scholarly communication", "open access", "journal publishing", "peer review"],
    ["text mining", "topic model", "document clustering", "term extraction"],
]

_SOURCES = [
    "JOURNAL OF INFORMATION SCIENCE",
    "SCIENTOMETRICS",
    "INFORMATION PROCESSING & MANAGEMENT",
    "JOURNAL OF DOCUMENTATION",
]


def generate_corpus(
    n_records: int = 600,
    n_communities: int = 10,
    refs_per_community: int = 60,
    start_year: int = 1996,
    end_year: int = 2008,
    cross_rate: float = 0.03,
    seed: int = 7,
) -> RecordSet:
    """A citing corpus with `n_communities` planted blocks of cited
    references. Every record cites its community's anchor reference plus
    a popularity-skewed sample of the block, so no selected entity ends
    up isolated; a small fraction of records bridge two communities."""
    if n_communities > len(COMMUNITY_THEMES):
        raise ValueError(f"at most {len(COMMUNITY_THEMES)} planted communities supported")
    rng = random.Random(seed)
    ref_pool: list[list[CitedReference]] = []
    for c in range(n_communities):
        refs = []
        for i in range(refs_per_community):
            refs.append(
                CitedReference.make(
                    author_key=f"BLOCK{c:02d} A{i:02d}",
                    year=start_year - 20 + c + (i % 15),
                    source=_SOURCES[i % len(_SOURCES)],
                    volume=i + 1,
                    page=str(10 * i + 1),
                )
            )
        ref_pool.append(refs)

    # Popularity weights fall off with rank so top-N selection is stable.
    weights = [1.0 / (rank + 1.0) for rank in range(refs_per_community)]

    records = []
    for r in range(n_records):
        c = r % n_communities
        theme = COMMUNITY_THEMES[c]
        year = start_year + rng.randrange(end_year - start_year + 1)
        n_cites = rng.randrange(4, 9)
        cited = {0}
        while len(cited) < n_cites:
            cited.add(rng.choices(range(refs_per_community), weights=weights, k=1)[0])
        refs = [ref_pool[c][i] for i in sorted(cited)]
        if rng.random() < cross_rate:
            other = (c + 1 + rng.randrange(n_communities - 1)) % n_communities
            refs.append(ref_pool[other][0])
        p1, p2 = rng.sample(theme, 2)
        title = f"{p1} and {p2}"
        p3 = rng.choice(theme)
        abstract = (
            f"We study {p1} in a {p2} setting. "
            f"The {p3} perspective explains the observed {p2} effects. "
            f"Findings inform {p1} practice."
        )
        records.append(
            Record(
                uid=f"SYN{r:05d}",
                authors=(f"Writer{c:02d}, A.",),
                year=year,
                title=title,
                abstract=abstract,
                index_terms=(theme[0], "information science"),
                source=_SOURCES[r % len(_SOURCES)],
                doc_type="article" if r % 7 else "review",
                cited_refs=tuple(refs),
            )
        )
    return RecordSet(tuple(records), Provenance(files=("<synthetic>",), records_read=len(records)))


@dataclass(frozen=True)
class SizeRow:
    top_n: int
    n_nodes: int
    n_links: int
    k: int
    modularity_q: float
    mean_silhouette: float


def size_experiment(
    rs: RecordSet,
    top_ns: Sequence[int],
    start_year: int,
    end_year: int,
    unit: str = "cited_reference",
    measure: str = "cosine",
    opts: ClusterOptions | None = None,
) -> list[SizeRow]:
    """Cluster the single-slice network at each selection size and
    collect size, link count, cluster count, Q, and mean silhouette."""
    opts = opts or ClusterOptions()
    (sl,) = slice_records(rs, start_year, end_year, end_year - start_year + 1)
    rows = []
    for top_n in top_ns:
        keys = select_top_cited(sl, top_n, unit)
        net = build_network(sl, keys, measure, unit)
        partition = spectral_partition(net, opts)
        _, part_metrics = compute_metrics(net, partition)
        rows.append(
            SizeRow(
                top_n=top_n,
                n_nodes=len(net.nodes),
                n_links=len(net.links),
                k=partition.k,
                modularity_q=part_metrics.modularity_q,
                mean_silhouette=part_metrics.mean_silhouette,
            )
        )
    return rows


def render_size_report(rows: Sequence[SizeRow]) -> str:
    out = ["top_n\tnodes\tlinks\tclusters\tmodularity_q\tmean_silhouette"]
    for row in rows:
        out.append(
            f"{row.top_n}\t{row.n_nodes}\t{row.n_links}\t{row.k}"
            f"\t{row.modularity_q:.4f}\t{row.mean_silhouette:.4f}"
        )
    return "\n".join(out) + "\n"
