"""Loading an app's source tree into an immutable, preprocessed corpus."""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from pathlib import Path

from .tokens import preprocess_text

DEFAULT_INCLUDE_GLOBS = ("**/*.java", "**/*.xml")

_KIND_BY_SUFFIX = {".java": "java", ".xml": "xml"}


class CorpusError(Exception):
    """Raised when a source tree cannot be loaded."""


@dataclass(frozen=True)
class SourceDocument:
    """One corpus file: forward-slash relative path, kind, text, tokens."""

    path: str
    kind: str  # "java" | "xml" | "other"
    raw_text: str
    tokens: tuple[str, ...]


@dataclass
class Corpus:
    """All loaded documents of one app; only kind=java files are rankable."""

    app_id: str
    documents: list[SourceDocument]
    warnings: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        self._by_path = {d.path: d for d in self.documents}
        if len(self._by_path) != len(self.documents):
            raise CorpusError("duplicate document paths in corpus")

    @property
    def rankable(self) -> list[SourceDocument]:
        return [d for d in self.documents if d.kind == "java"]

    @property
    def rankable_paths(self) -> list[str]:
        return [d.path for d in self.rankable]

    def get(self, path: str) -> SourceDocument | None:
        return self._by_path.get(path)


def _kind_of(path: str) -> str:
    return _KIND_BY_SUFFIX.get(Path(path).suffix.lower(), "other")


def _glob_to_regex(pattern: str) -> re.Pattern[str]:
    """Translate a glob into a regex; '**/' matches zero or more directories."""
    out = []
    i = 0
    while i < len(pattern):
        ch = pattern[i]
        if pattern.startswith("**/", i):
            out.append(r"(?:[^/]+/)*")
            i += 3
        elif pattern.startswith("**", i):
            out.append(r".*")
            i += 2
        elif ch == "*":
            out.append(r"[^/]*")
            i += 1
        elif ch == "?":
            out.append(r"[^/]")
            i += 1
        else:
            out.append(re.escape(ch))
            i += 1
    return re.compile("".join(out) + r"\Z")


def _matched_files(root: Path, include_globs: tuple[str, ...]) -> list[str]:
    """Relative posix paths under root matching any glob, sorted.

    Directory symlinks are not followed, so cyclic trees cannot recurse.
    """
    regexes = [_glob_to_regex(g) for g in include_globs]
    matched: set[str] = set()
    for dirpath, _dirnames, filenames in os.walk(root, followlinks=False):
        rel_dir = Path(dirpath).relative_to(root).as_posix()
        for name in filenames:
            rel = name if rel_dir == "." else f"{rel_dir}/{name}"
            if any(rx.match(rel) for rx in regexes):
                matched.add(rel)
    return sorted(matched)


def load_corpus(
    root: str | Path,
    include_globs: tuple[str, ...] = DEFAULT_INCLUDE_GLOBS,
    app_id: str | None = None,
) -> Corpus:
    """Load and preprocess every file under root matching the globs.

    Unreadable files are skipped with a warning record; matching zero files
    is an error.
    """
    root = Path(root)
    if not root.is_dir():
        raise CorpusError(f"corpus root is not a directory: {root}")

    paths = _matched_files(root, tuple(include_globs))
    if not paths:
        raise CorpusError(f"no files under {root} match {list(include_globs)}")

    documents: list[SourceDocument] = []
    warnings: list[str] = []
    for rel in paths:
        try:
            raw = (root / rel).read_text(encoding="utf-8", errors="replace")
        except OSError as exc:
            warnings.append(f"skipped unreadable file {rel}: {exc}")
            continue
        documents.append(
            SourceDocument(
                path=rel,
                kind=_kind_of(rel),
                raw_text=raw,
                tokens=tuple(preprocess_text(raw)),
            )
        )
    if not documents:
        raise CorpusError(f"all matched files under {root} were unreadable")

    return Corpus(app_id=app_id or root.name, documents=documents, warnings=warnings)
