"""
Candidate cluster labels from the citers of a cluster.

Terms come from three sources (titles and abstracts via a rule-based
noun-phrase chunker, index terms verbatim) and are ranked by three
algorithms (tf*idf, log-likelihood ratio, mutual information), giving
nine ranked lists per cluster plus consensus scores across methods.

The chunker is deliberately lexicon-free: lowercase, split at clause
punctuation, drop stopwords and a small verb/adverb list, emit maximal
runs of up to four remaining tokens, folding plurals with a minimal
suffix rule. No POS tagger is involved.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .ingest import Record

__all__ = [
    "SOURCES",
    "ALGOS",
    "TermStats",
    "RankedTerm",
    "LabelSet",
    "ConsensusReport",
    "extract_noun_phrases",
    "content_tokens",
    "fold_plural",
    "rank_tfidf",
    "rank_llr",
    "rank_mi",
    "consensus_scores",
    "CorpusIndex",
    "label_cluster",
    "LLR_SIGNIFICANCE",
]

SOURCES = ("title", "abstract", "index")
ALGOS = ("tfidf", "llr", "mi")

# chi-square critical value, 1 df, p = 0.0001
LLR_SIGNIFICANCE = 15.137

STOPWORDS = frozenset(
    """
    a about above across after again against all along also although am among
    an and any are as at back be because been before being below between
    beyond both but by can cannot could did do does doing done down during
    each either etc few for from further had has have having he her here hers
    him his how however i if in into is it its itself just may me might more
    most must my neither no nor not now of off on once only onto or other our
    ours out over own per rather same she should since so some such than that
    the their theirs them then there therefore these they this those through
    thus to too toward towards under until up upon us very via was we were
    what when where whether which while who whom whose why will with within
    without would you your yours
    """.split()
)

# Small verb/adverb lexicon; everything else (nouns, adjectives, -ing
# nominals) is kept as phrase material.
FUNCTION_WORDS = frozenset(
    """
    use used uses using show shows showed shown present presents presented
    propose proposes proposed introduce introduces introduced describe
    describes described demonstrate demonstrates demonstrated examine
    examines examined investigate investigates investigated analyze analyzes
    analyzed discuss discusses discussed suggest suggests suggested indicate
    indicates indicated provide provides provided obtain obtains obtained
    perform performs performed conduct conducts conducted compare compares
    compared consider considers considered develop develops developed apply
    applies applied explore explores explored evaluate evaluates evaluated
    significantly respectively approximately relatively particularly
    especially generally typically usually often highly widely mainly
    largely currently recently previously
    """.split()
)

_SEGMENT_SPLIT = re.compile(r"[.,;:!?()\[\]{}<>\"'`/\\|@#$%^&*+=~_–—…]+")
_TOKEN = re.compile(r"[a-z0-9]+(?:-[a-z0-9]+)*")
_HAS_LETTER = re.compile(r"[a-z]")

_MAX_PHRASE_TOKENS = 4


def fold_plural(token: str) -> str:
    """Minimal singular/plural folding: -ies -> y, sibilant -es dropped,
    otherwise a trailing -s dropped for tokens longer than 3 unless the
    token ends in -ss, -is, or -us."""
    if token.endswith("ies") and len(token) > 3:
        return token[:-3] + "y"
    if len(token) > 4 and token.endswith(("sses", "ches", "shes", "xes", "zes")):
        return token[:-2]
    if len(token) > 3 and token.endswith("s") and not token.endswith(("ss", "is", "us")):
        return token[:-1]
    return token


def _kept(token: str) -> bool:
    if token in STOPWORDS or token in FUNCTION_WORDS:
        return False
    if not _HAS_LETTER.search(token):
        return False
    return True


def extract_noun_phrases(text: str) -> list[str]:
    """Chunk free text into candidate phrases (duplicates preserved, in
    order of appearance). Removed tokens split runs; runs longer than
    four tokens keep their last four (noun phrases are head-final)."""
    phrases: list[str] = []
    for segment in _SEGMENT_SPLIT.split(text.lower()):
        run: list[str] = []
        tokens = _TOKEN.findall(segment)
        for token in tokens + [""]:
            if token and _kept(token):
                run.append(fold_plural(token))
                continue
            if run:
                phrases.append(" ".join(run[-_MAX_PHRASE_TOKENS:]))
                run = []
    return phrases


def content_tokens(text: str) -> list[str]:
    """The chunker's retained (folded) tokens, flattened; the nominal-word
    approximation used by the summarizer."""
    tokens = []
    for segment in _SEGMENT_SPLIT.split(text.lower()):
        for token in _TOKEN.findall(segment):
            if _kept(token):
                tokens.append(fold_plural(token))
    return tokens


@dataclass(frozen=True)
class TermStats:
    """Document and occurrence counts for one term within one source."""

    term: str
    df_cluster: int
    df_corpus: int
    tf_cluster: int

    def __post_init__(self):
        if self.df_cluster > self.df_corpus:
            raise ValueError(f"{self.term!r}: df_cluster > df_corpus")
        if self.tf_cluster < self.df_cluster:
            raise ValueError(f"{self.term!r}: tf_cluster < df_cluster")


@dataclass(frozen=True)
class RankedTerm:
    term: str
    score: float
    significant: bool | None = None

    def to_json(self) -> dict:
        return {"term": self.term, "score": self.score, "significant": self.significant}


def _ranked(pairs: Iterable[tuple[str, float]], significance: Mapping[str, bool] | None = None) -> list[RankedTerm]:
    ordered = sorted(pairs, key=lambda p: (-p[1], p[0]))
    if significance is None:
        return [RankedTerm(t, s) for t, s in ordered]
    return [RankedTerm(t, s, significance[t]) for t, s in ordered]


def rank_tfidf(stats: Iterable[TermStats], corpus_size: int) -> list[RankedTerm]:
    """Rank by tf_cluster * ln(corpus_size / df_corpus), descending."""
    if corpus_size < 1:
        raise ValueError("corpus_size must be >= 1")
    pairs = []
    for st in stats:
        if st.df_corpus == 0:
            continue
        pairs.append((st.term, st.tf_cluster * math.log(corpus_size / st.df_corpus)))
    return _ranked(pairs)


def _llr_g2(a: int, n1: int, b: int, n2: int) -> float:
    """Dunning's G^2 over the 2x2 document-frequency contingency
    (term present/absent x cluster/rest), with 0*ln(0) = 0."""
    total = n1 + n2
    observed = (a, n1 - a, b, n2 - b)
    rows = (n1, n1, n2, n2)
    cols = (a + b, total - a - b, a + b, total - a - b)
    g2 = 0.0
    for o, r, c in zip(observed, rows, cols):
        if o == 0:
            continue
        expected = r * c / total
        g2 += o * math.log(o / expected)
    return 2.0 * g2


def _overrepresented(a: int, n1: int, b: int, n2: int) -> bool:
    # observed > expected in the cluster-present cell
    return a * (n1 + n2) > (a + b) * n1


def rank_llr(stats: Iterable[TermStats], n1: int, n2: int) -> list[RankedTerm]:
    """Rank cluster-overrepresented terms by the log-likelihood ratio;
    terms with G^2 >= 15.137 (p = 0.0001, 1 df) are flagged significant."""
    if n1 < 1 or n2 < 1:
        raise ValueError("both document counts must be >= 1")
    pairs = []
    significance = {}
    for st in stats:
        a = st.df_cluster
        b = st.df_corpus - st.df_cluster
        if a + b == 0 or not _overrepresented(a, n1, b, n2):
            continue
        g2 = _llr_g2(a, n1, b, n2)
        pairs.append((st.term, g2))
        significance[st.term] = g2 >= LLR_SIGNIFICANCE
    return _ranked(pairs, significance)


def rank_mi(stats: Iterable[TermStats], n1: int, n2: int) -> list[RankedTerm]:
    """Rank cluster-overrepresented terms by four-cell mutual information
    over document frequencies, with add-0.5 smoothing on each cell."""
    if n1 < 1 or n2 < 1:
        raise ValueError("both document counts must be >= 1")
    pairs = []
    for st in stats:
        a = st.df_cluster
        b = st.df_corpus - st.df_cluster
        if a + b == 0 or not _overrepresented(a, n1, b, n2):
            continue
        cells = (a + 0.5, n1 - a + 0.5, b + 0.5, n2 - b + 0.5)
        total = sum(cells)
        px = ((cells[0] + cells[1]) / total, (cells[2] + cells[3]) / total)
        py = ((cells[0] + cells[2]) / total, (cells[1] + cells[3]) / total)
        mi = 0.0
        for idx, cell in enumerate(cells):
            p = cell / total
            mi += p * math.log(p / (px[idx // 2] * py[idx % 2]))
        pairs.append((st.term, mi))
    return _ranked(pairs)


@dataclass(frozen=True)
class ConsensusReport:
    term_r: dict[str, float]
    method_reliability: dict[str, float]
    best_methods: tuple[str, ...]


def consensus_scores(
    lists: Mapping[tuple[str, str], Sequence[RankedTerm]], depth: int = 3
) -> ConsensusReport:
    """Consensus score r = 0.1 * (n + 1) for every top-`depth` term,
    where n counts the other methods whose top-`depth` also contains the
    term; a method's reliability is the sum of r over its top terms."""
    tops = {method: [t.term for t in terms[:depth]] for method, terms in lists.items()}
    containing = {}
    for method, terms in tops.items():
        for term in terms:
            containing.setdefault(term, set()).add(method)
    term_r = {term: 0.1 * len(methods) for term, methods in containing.items()}
    reliability = {
        f"{source}.{algo}": sum(term_r[t] for t in tops.get((source, algo), ()))
        for (source, algo) in lists
    }
    best = sorted(reliability, key=lambda m: (-reliability[m], m))[:3]
    return ConsensusReport(term_r, reliability, tuple(best))


class CorpusIndex:
    """Per-source term occurrences for every record in the corpus.

    Built once; per-cluster statistics are then single lookups.
    """

    def __init__(self, records: Iterable[Record]):
        self.records = list(records)
        self.n_docs = len(self.records)
        self.doc_terms: dict[str, dict[str, list[str]]] = {}
        self.df: dict[str, dict[str, int]] = {source: {} for source in SOURCES}
        for record in self.records:
            per_source = {
                "title": extract_noun_phrases(record.title),
                "abstract": extract_noun_phrases(record.abstract),
                "index": [t.lower() for t in record.index_terms],
            }
            self.doc_terms[record.uid] = per_source
            for source in SOURCES:
                for term in set(per_source[source]):
                    self.df[source][term] = self.df[source].get(term, 0) + 1

    def cluster_stats(self, citer_uids: Sequence[str], source: str) -> list[TermStats]:
        tf: dict[str, int] = {}
        df: dict[str, int] = {}
        for uid in citer_uids:
            terms = self.doc_terms[uid][source]
            for term in terms:
                tf[term] = tf.get(term, 0) + 1
            for term in set(terms):
                df[term] = df.get(term, 0) + 1
        return [
            TermStats(term, df[term], self.df[source][term], tf[term])
            for term in sorted(tf)
        ]


@dataclass(frozen=True)
class LabelSet:
    cluster_id: int
    lists: dict[tuple[str, str], tuple[RankedTerm, ...]]
    consensus: ConsensusReport
    display_label: str
    alt_label: str
    flags: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "cluster_id": self.cluster_id,
            "display_label": self.display_label,
            "alt_label": self.alt_label,
            "flags": list(self.flags),
            "lists": {
                f"{source}.{algo}": [t.to_json() for t in terms]
                for (source, algo), terms in sorted(self.lists.items())
            },
            "consensus": dict(sorted(self.consensus.term_r.items())),
            "method_reliability": dict(sorted(self.consensus.method_reliability.items())),
            "best_methods": list(self.consensus.best_methods),
        }


def label_cluster(
    cluster_id: int,
    citer_uids: Sequence[str],
    corpus: CorpusIndex,
    depth: int = 3,
    list_len: int = 25,
) -> LabelSet:
    """Produce the nine ranked label lists and consensus scores for one
    cluster. The display label is the top LLR title term; the top tf*idf
    title term is kept as the alternate."""
    flags: list[str] = []
    if not citer_uids:
        empty = ConsensusReport({}, {f"{s}.{a}": 0.0 for s in SOURCES for a in ALGOS}, ())
        return LabelSet(
            cluster_id,
            {(s, a): () for s in SOURCES for a in ALGOS},
            empty,
            display_label="",
            alt_label="",
            flags=("no_citers",),
        )
    n1 = len(citer_uids)
    n2 = corpus.n_docs - n1
    lists: dict[tuple[str, str], tuple[RankedTerm, ...]] = {}
    for source in SOURCES:
        stats = corpus.cluster_stats(citer_uids, source)
        lists[(source, "tfidf")] = tuple(rank_tfidf(stats, corpus.n_docs)[:list_len])
        if n2 >= 1:
            lists[(source, "llr")] = tuple(rank_llr(stats, n1, n2)[:list_len])
            lists[(source, "mi")] = tuple(rank_mi(stats, n1, n2)[:list_len])
        else:
            # The cluster's citers are the whole corpus: no rest to
            # contrast against.
            lists[(source, "llr")] = ()
            lists[(source, "mi")] = ()
            if "no_contrast_set" not in flags:
                flags.append("no_contrast_set")
    consensus = consensus_scores(lists, depth)
    display = lists[("title", "llr")][0].term if lists[("title", "llr")] else ""
    alt = lists[("title", "tfidf")][0].term if lists[("title", "tfidf")] else ""
    if not display:
        flags.append("no_display_label")
        display = alt
    return LabelSet(cluster_id, lists, consensus, display, alt, tuple(flags))
