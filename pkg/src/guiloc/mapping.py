"""Resolving GUI terms to GUI-related source files.

Screen names map to .java files whose basename equals the name; component
resource ids map to .java files that lexically reference the id, either as
``R.id.<id>`` or as the quoted literal ``"id/<id>"``.
"""

from __future__ import annotations

import re
from functools import lru_cache

from .corpus import Corpus
from .scenario import GuiInfoType, ReproductionScenario, extract_terms, select_screens


@lru_cache(maxsize=4096)
def _id_reference_re(resource_id: str) -> re.Pattern[str]:
    code_ref = re.escape(f"R.id.{resource_id}") + r"(?![A-Za-z0-9_])"
    literal_ref = re.escape(f'"id/{resource_id}"')
    return re.compile(f"{code_ref}|{literal_ref}")


def map_screen_terms(
    terms: set[str] | frozenset[str], corpus: Corpus, diag: list | None = None
) -> set[str]:
    """Files whose basename (without extension) equals a screen name.

    Matching is exact and case-sensitive; nested names like ``Outer$Inner``
    match on the outer basename.
    """
    stems: dict[str, list[str]] = {}
    for doc in corpus.rankable:
        stem = doc.path.rsplit("/", 1)[-1].rsplit(".", 1)[0]
        stems.setdefault(stem, []).append(doc.path)

    matched: set[str] = set()
    for term in sorted(terms):
        hits = stems.get(term.split("$", 1)[0], [])
        matched.update(hits)
        if diag is not None:
            diag.append({"role": "screen", "term": term, "matches": len(hits)})
    return matched


def map_component_ids(
    ids: set[str] | frozenset[str], corpus: Corpus, diag: list | None = None
) -> set[str]:
    """Java files containing a lexical reference to any of the resource ids."""
    matched: set[str] = set()
    for rid in sorted(ids):
        rx = _id_reference_re(rid)
        hits = [doc.path for doc in corpus.rankable if rx.search(doc.raw_text)]
        matched.update(hits)
        if diag is not None:
            diag.append({"role": "component", "term": rid, "matches": len(hits)})
    return matched


def gui_related_files(
    scenario: ReproductionScenario,
    corpus: Corpus,
    info: GuiInfoType,
    n_screens: int,
    diag: list | None = None,
) -> set[str]:
    """GUI-related files for one info type over the last n_screens screens."""
    screens = select_screens(scenario, n_screens)
    terms = extract_terms(screens, info)
    return map_screen_terms(terms.screen_terms, corpus, diag) | map_component_ids(
        terms.component_ids, corpus, diag
    )
