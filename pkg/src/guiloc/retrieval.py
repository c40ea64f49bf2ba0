"""Baseline rankers: tf-idf vector space model and the length-boosted rVSM.

Both rankers score every rankable document of a corpus against a token
query. Term weights are (1 + ln tf) * ln(N / df); rVSM multiplies the
cosine by a logistic boost of the min-max normalized document length so
that longer documents rank higher. Ties are always broken by ascending
path so rankings are reproducible.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

from .corpus import Corpus


class RetrievalError(Exception):
    """Raised when an index cannot be built or a ranking is impossible."""


@dataclass
class RankedList:
    """Document paths with scores, ordered from most to least relevant."""

    entries: list[tuple[str, float]]
    query_id: str = ""

    @property
    def paths(self) -> list[str]:
        return [p for p, _ in self.entries]

    def rank_of(self, path: str) -> int | None:
        """1-based position of path, or None if absent."""
        for i, (p, _) in enumerate(self.entries, start=1):
            if p == path:
                return i
        return None


@dataclass
class Index:
    """Per-document sparse tf-idf vectors plus length-boost data.

    Documents whose preprocessing leaves zero tokens are not indexed (they
    carry no signal) but stay in ``all_paths`` so every ranking remains a
    permutation of the rankable set.
    """

    app_id: str
    n_docs: int
    idf: dict[str, float]
    doc_vectors: dict[str, dict[str, float]]
    doc_lengths: dict[str, int]
    all_paths: list[str]
    warnings: list[str] = field(default_factory=list)
    doc_norms: dict[str, float] = field(default_factory=dict)
    length_boost: dict[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.doc_norms:
            self.doc_norms = {
                p: math.sqrt(sum(w * w for w in v.values()))
                for p, v in self.doc_vectors.items()
            }
        if not self.length_boost:
            self.length_boost = {
                p: length_boost_g(x, self.doc_lengths.values())
                for p, x in self.doc_lengths.items()
            }


def normalized_length(x: float, lengths) -> float:
    """Min-max normalize x over the corpus lengths; 0.5 when degenerate."""
    lo, hi = min(lengths), max(lengths)
    if hi == lo:
        return 0.5
    return (x - lo) / (hi - lo)


def length_boost_g(x: float, lengths) -> float:
    """Logistic boost of the normalized document length, in (0.5, 0.7311]."""
    return 1.0 / (1.0 + math.exp(-normalized_length(x, lengths)))


def build_index(corpus: Corpus) -> Index:
    """Build tf-idf vectors over the corpus's rankable (java) documents."""
    rankable = corpus.rankable
    if not rankable:
        raise RetrievalError(f"corpus {corpus.app_id} has no rankable documents")

    warnings = []
    tfs: dict[str, Counter] = {}
    for doc in rankable:
        if doc.tokens:
            tfs[doc.path] = Counter(doc.tokens)
        else:
            warnings.append(f"excluded from index (no tokens): {doc.path}")
    if not tfs:
        raise RetrievalError(
            f"corpus {corpus.app_id}: every rankable document is empty after preprocessing"
        )

    n_docs = len(tfs)
    df = Counter()
    for tf in tfs.values():
        df.update(tf.keys())
    idf = {t: math.log(n_docs / d) for t, d in df.items()}

    doc_vectors = {
        path: {t: (1.0 + math.log(c)) * idf[t] for t, c in tf.items()}
        for path, tf in tfs.items()
    }
    doc_lengths = {path: sum(tf.values()) for path, tf in tfs.items()}

    return Index(
        app_id=corpus.app_id,
        n_docs=n_docs,
        idf=idf,
        doc_vectors=doc_vectors,
        doc_lengths=doc_lengths,
        all_paths=corpus.rankable_paths,
        warnings=warnings,
    )


def query_vector(index: Index, query: list[str]) -> dict[str, float]:
    """tf-idf vector of a query; terms unknown to the index are dropped."""
    tf = Counter(t for t in query if t in index.idf)
    return {t: (1.0 + math.log(c)) * index.idf[t] for t, c in tf.items()}


def _cosine(qv: dict[str, float], qnorm: float, dv: dict[str, float], dnorm: float) -> float:
    if qnorm == 0.0 or dnorm == 0.0:
        return 0.0
    dot = sum(w * dv[t] for t, w in qv.items() if t in dv)
    return dot / (qnorm * dnorm)


def _sorted_ranking(scores: dict[str, float], query_id: str) -> RankedList:
    entries = sorted(scores.items(), key=lambda e: (-e[1], e[0]))
    return RankedList(entries=entries, query_id=query_id)


def rank_tfidf(index: Index, query: list[str], query_id: str = "") -> RankedList:
    """Rank all rankable documents by cosine similarity of tf-idf vectors."""
    qv = query_vector(index, query)
    qnorm = math.sqrt(sum(w * w for w in qv.values()))
    scores = {p: 0.0 for p in index.all_paths}
    for path, dv in index.doc_vectors.items():
        scores[path] = _cosine(qv, qnorm, dv, index.doc_norms[path])
    return _sorted_ranking(scores, query_id)


def rank_rvsm(index: Index, query: list[str], query_id: str = "") -> RankedList:
    """Rank by cosine similarity times the document length boost g."""
    qv = query_vector(index, query)
    qnorm = math.sqrt(sum(w * w for w in qv.values()))
    scores = {p: 0.0 for p in index.all_paths}
    for path, dv in index.doc_vectors.items():
        cos = _cosine(qv, qnorm, dv, index.doc_norms[path])
        scores[path] = index.length_boost[path] * cos
    return _sorted_ranking(scores, query_id)
