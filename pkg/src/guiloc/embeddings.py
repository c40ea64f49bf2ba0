"""Reading, writing, and ranking with precomputed segment embeddings.

Store file format (plain UTF-8 text):

    d=<dimension>
    <path>\\t<segment_index>\\t<f1> <f2> ... <fd>
    ...

One record per line; vectors are space-separated decimal floats and must be
unit L2 norm within 1e-4. Document records use the corpus-relative path;
query records use ``query:<bug_id>`` (reformulated variants append a
``/<reform key>`` suffix, e.g. ``query:bug-7/s3:qe:SC``).
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .retrieval import RankedList

QUERY_PREFIX = "query:"
NORM_TOLERANCE = 1e-4


class EmbeddingStoreError(Exception):
    """Raised for malformed store files or inconsistent lookups."""


class EmbeddingStore:
    """Unit-norm segment vectors for documents and queries."""

    def __init__(self, dim: int):
        if dim < 1:
            raise EmbeddingStoreError(f"dimension must be positive, got {dim}")
        self.dim = dim
        self._segments: dict[str, dict[int, np.ndarray]] = {}

    def add(self, path: str, segment_index: int, vector) -> None:
        vec = np.asarray(vector, dtype=np.float64)
        if vec.shape != (self.dim,):
            raise EmbeddingStoreError(
                f"{path}[{segment_index}]: expected dimension {self.dim}, got {vec.shape}"
            )
        norm = float(np.linalg.norm(vec))
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise EmbeddingStoreError(
                f"{path}[{segment_index}]: vector norm {norm:.6f} is not unit"
            )
        segs = self._segments.setdefault(path, {})
        if segment_index in segs:
            raise EmbeddingStoreError(f"duplicate record {path}[{segment_index}]")
        segs[segment_index] = vec

    @property
    def doc_paths(self) -> list[str]:
        return sorted(p for p in self._segments if not p.startswith(QUERY_PREFIX))

    @property
    def query_keys(self) -> list[str]:
        return sorted(p for p in self._segments if p.startswith(QUERY_PREFIX))

    def segment_count(self, path: str) -> int:
        return len(self._segments.get(path, {}))

    def matrix(self, path: str) -> np.ndarray:
        """Segment vectors of one record path, ordered by segment index."""
        segs = self._segments.get(path)
        if not segs:
            raise EmbeddingStoreError(f"no vectors stored for {path!r}")
        return np.stack([segs[i] for i in sorted(segs)])

    def has(self, path: str) -> bool:
        return path in self._segments


def load_embedding_store(path: str | Path) -> EmbeddingStore:
    """Parse a store file, validating dimensions and unit norms."""
    path = Path(path)
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines or not lines[0].startswith("d="):
        raise EmbeddingStoreError(f"{path}: missing 'd=<dim>' header line")
    try:
        dim = int(lines[0][2:])
    except ValueError:
        raise EmbeddingStoreError(f"{path}: bad header {lines[0]!r}") from None

    store = EmbeddingStore(dim)
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise EmbeddingStoreError(f"{path}:{lineno}: expected 3 tab-separated fields")
        rec_path, seg_str, vec_str = parts
        try:
            seg_idx = int(seg_str)
            vec = np.array([float(x) for x in vec_str.split()], dtype=np.float64)
        except ValueError:
            raise EmbeddingStoreError(f"{path}:{lineno}: malformed record") from None
        if vec.size != dim:
            raise EmbeddingStoreError(
                f"{path}:{lineno}: vector has {vec.size} components, header says {dim}"
            )
        store.add(rec_path, seg_idx, vec)
    return store


def save_embedding_store(path: str | Path, store: EmbeddingStore) -> None:
    """Write a store in the text format, records sorted for determinism."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"d={store.dim}\n")
        for rec_path in sorted(store._segments):
            for seg_idx in sorted(store._segments[rec_path]):
                vec = store._segments[rec_path][seg_idx]
                text = " ".join(repr(float(x)) for x in vec)
                fh.write(f"{rec_path}\t{seg_idx}\t{text}\n")


def rank_embeddings(
    store: EmbeddingStore, query_id: str, paths: list[str] | None = None
) -> RankedList:
    """Rank documents by the best query-segment/document-segment cosine.

    ``query_id`` is the part after the ``query:`` prefix. When ``paths`` is
    given, every listed document must be present in the store.
    """
    qkey = QUERY_PREFIX + query_id
    if not store.has(qkey):
        raise EmbeddingStoreError(f"store has no query record {qkey!r}")
    qmat = store.matrix(qkey)

    if paths is None:
        paths = store.doc_paths
    else:
        missing = [p for p in paths if not store.has(p)]
        if missing:
            raise EmbeddingStoreError(f"documents absent from store: {missing}")
    if not paths:
        raise EmbeddingStoreError("no documents to rank")

    scores = {}
    for p in paths:
        # unit vectors: cosine == dot product
        scores[p] = float(np.max(qmat @ store.matrix(p).T))
    entries = sorted(scores.items(), key=lambda e: (-e[1], e[0]))
    return RankedList(entries=entries, query_id=query_id)
