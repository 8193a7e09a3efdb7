"""
Extractive summaries of a cluster's citers.

Sentences pooled from the citers' abstracts are ranked by a textual
energy function (row sums of the squared sentence-overlap matrix, so
indirect overlaps count) or by its faster gtf / gtf*idf approximations,
which sum word-frequency products across the sentence set.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .ingest import Record
from .labeling import content_tokens

__all__ = [
    "RANKERS",
    "SentenceUnit",
    "ScoredSentence",
    "ClusterSummary",
    "segment_sentences",
    "overlap_matrix",
    "energy_rank",
    "gtf_rank",
    "gtf_idf_rank",
    "summarize_cluster",
]

RANKERS = ("energy", "gtf", "gtf_idf")

# Words whose trailing period does not end a sentence.
_ABBREVS = frozenset(
    "al vs cf fig figs eq eqs sec no vol pp p ca resp approx et etc dr prof "
    "univ dept inc ltd jr sr st mr mrs ms".split()
)

_SPLIT = re.compile(r"([.!?]+)(\s+)(?=[A-Z0-9])")
_TRAILING_WORD = re.compile(r"([A-Za-z]+)$")


@dataclass(frozen=True)
class SentenceUnit:
    record_uid: str
    position: int
    text: str
    nominal_terms: dict[str, int]


def _protected(before: str) -> bool:
    m = _TRAILING_WORD.search(before)
    if not m:
        return False
    word = m.group(1)
    return len(word) == 1 or word.lower() in _ABBREVS


def segment_sentences(text: str, record_uid: str = "") -> list[SentenceUnit]:
    """Split an abstract at [.!?] runs followed by whitespace and a
    capital or digit, protecting known abbreviations (e.g., i.e.,
    et al., vs., Fig., no., ...) and initials."""
    cuts = []
    for m in _SPLIT.finditer(text):
        punct = m.group(1)
        if set(punct) == {"."} and _protected(text[: m.start(1)]):
            continue
        cuts.append(m.end(1))
    sentences = []
    prev = 0
    for cut in cuts + [len(text)]:
        chunk = text[prev:cut].strip()
        prev = cut
        if not chunk:
            continue
        sentences.append(
            SentenceUnit(
                record_uid=record_uid,
                position=len(sentences),
                text=chunk,
                nominal_terms=dict(Counter(content_tokens(chunk))),
            )
        )
    return sentences


def overlap_matrix(sentences: Sequence[SentenceUnit]) -> np.ndarray:
    """M[i, j] = number of nominal word types sentences i and j share;
    the diagonal holds each sentence's own type count."""
    vocab = sorted({w for s in sentences for w in s.nominal_terms})
    index = {w: i for i, w in enumerate(vocab)}
    B = np.zeros((len(sentences), len(vocab)), dtype=np.int64)
    for i, s in enumerate(sentences):
        for w in s.nominal_terms:
            B[i, index[w]] = 1
    return B @ B.T


@dataclass(frozen=True)
class ScoredSentence:
    sentence: SentenceUnit
    score: float

    def to_json(self) -> dict:
        return {
            "uid": self.sentence.record_uid,
            "position": self.sentence.position,
            "score": self.score,
            "text": self.sentence.text,
        }


def _order(sentences: Sequence[SentenceUnit], scores: Iterable[float]) -> list[ScoredSentence]:
    scored = [ScoredSentence(s, float(v)) for s, v in zip(sentences, scores)]
    return sorted(scored, key=lambda e: (-e.score, e.sentence.record_uid, e.sentence.position))


def energy_rank(sentences: Sequence[SentenceUnit]) -> list[ScoredSentence]:
    """Rank by E(s_i) = row sum of the matrix square of the overlap
    matrix, which credits indirect connections between sentences."""
    if not sentences:
        return []
    M = overlap_matrix(sentences)
    energy = (M @ M).sum(axis=1)
    return _order(sentences, energy.astype(float))


def _freq_matrix(sentences: Sequence[SentenceUnit]) -> np.ndarray:
    vocab = sorted({w for s in sentences for w in s.nominal_terms})
    index = {w: i for i, w in enumerate(vocab)}
    F = np.zeros((len(sentences), len(vocab)))
    for i, s in enumerate(sentences):
        for w, count in s.nominal_terms.items():
            F[i, index[w]] = count
    return F


def gtf_rank(sentences: Sequence[SentenceUnit]) -> list[ScoredSentence]:
    """Rank by gtf(s_i) = sum over words and sentences of the frequency
    products freq(w, s_i) * freq(w, s_j)."""
    if not sentences:
        return []
    F = _freq_matrix(sentences)
    scores = F @ F.sum(axis=0)
    return _order(sentences, scores)


def gtf_idf_rank(sentences: Sequence[SentenceUnit]) -> list[ScoredSentence]:
    """gtf with every word's contribution weighted by idf^2, where idf
    is computed over the sentence set."""
    if not sentences:
        return []
    F = _freq_matrix(sentences)
    n = len(sentences)
    df = (F > 0).sum(axis=0)
    idf = np.log(n / df)
    scores = F @ (F.sum(axis=0) * idf**2)
    return _order(sentences, scores)


_RANK_FUNCS = {"energy": energy_rank, "gtf": gtf_rank, "gtf_idf": gtf_idf_rank}


@dataclass(frozen=True)
class ClusterSummary:
    cluster_id: int
    ranker: str
    sentences: tuple[ScoredSentence, ...]
    flags: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "cluster_id": self.cluster_id,
            "ranker": self.ranker,
            "flags": list(self.flags),
            "sentences": [s.to_json() for s in self.sentences],
        }


def summarize_cluster(
    cluster_id: int,
    citer_records: Sequence[Record],
    k: int | None,
    ranker: str = "energy",
) -> ClusterSummary:
    """Top-k sentences pooled from the abstracts of the cluster's citers,
    ranked by the chosen function. k=None keeps the whole ranked pool."""
    if ranker not in _RANK_FUNCS:
        raise ValueError(f"unknown ranker {ranker!r}")
    if k is not None and k < 0:
        raise ValueError("k must be >= 0")
    pool: list[SentenceUnit] = []
    for record in sorted(citer_records, key=lambda r: r.uid):
        if record.abstract:
            pool.extend(segment_sentences(record.abstract, record_uid=record.uid))
    if not pool:
        return ClusterSummary(cluster_id, ranker, (), flags=("no_abstracts",))
    ranked = _RANK_FUNCS[ranker](pool)
    return ClusterSummary(cluster_id, ranker, tuple(ranked if k is None else ranked[:k]))
