"""Query reformulation, re-ranking, and the evaluation configuration grid.

A configuration combines a screen count (2-4), an optional re-ranking step
(filtering, boosting, or filtering followed by boosting), and an optional
query reformulation (expansion or replacement), each parameterized by a GUI
information type. Filtering+boosting only admits pairs where the boosted
files are a subset of the filtered files; the full grid has 657 entries.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

from .corpus import Corpus
from .mapping import gui_related_files
from .retrieval import RankedList
from .scenario import (
    GuiInfoType,
    GuiTermSet,
    ReproductionScenario,
    extract_terms,
    select_screens,
)
from .tokens import preprocess_text

SCREEN_COUNTS = (2, 3, 4)

INFO_TYPES = (
    GuiInfoType.GS,
    GuiInfoType.EGC,
    GuiInfoType.GS_EGC,
    GuiInfoType.SC,
    GuiInfoType.GS_SC,
)

# Feasible (filter, boost) pairs: boosting must target a subset of the
# filtered files, so the filter side always maps to more files.
FILTER_BOOST_PAIRS = (
    (GuiInfoType.GS_EGC, GuiInfoType.GS),
    (GuiInfoType.GS_EGC, GuiInfoType.EGC),
    (GuiInfoType.SC, GuiInfoType.GS),
    (GuiInfoType.SC, GuiInfoType.EGC),
    (GuiInfoType.SC, GuiInfoType.GS_EGC),
    (GuiInfoType.GS_SC, GuiInfoType.GS),
    (GuiInfoType.GS_SC, GuiInfoType.EGC),
    (GuiInfoType.GS_SC, GuiInfoType.GS_EGC),
    (GuiInfoType.GS_SC, GuiInfoType.SC),
)


class ConfigurationError(Exception):
    """Raised for configurations outside the studied grid."""


class Rerank(str, enum.Enum):
    NONE = "none"
    FILTER = "filter"
    BOOST = "boost"
    FILTER_BOOST = "filter_boost"


class Reform(str, enum.Enum):
    NONE = "none"
    EXPAND = "expand"
    REPLACE = "replace"


_RERANK_CODES = {Rerank.FILTER: "f", Rerank.BOOST: "b", Rerank.FILTER_BOOST: "fb"}
_REFORM_CODES = {Reform.EXPAND: "qe", Reform.REPLACE: "qr"}


@dataclass(frozen=True)
class Configuration:
    """One grid point; validated on construction."""

    n_screens: int
    rerank: Rerank = Rerank.NONE
    filter_info: GuiInfoType | None = None
    boost_info: GuiInfoType | None = None
    reform: Reform = Reform.NONE
    reform_info: GuiInfoType | None = None

    def __post_init__(self) -> None:
        if self.n_screens not in SCREEN_COUNTS:
            raise ConfigurationError(f"n_screens must be one of {SCREEN_COUNTS}")
        if self.rerank is Rerank.NONE and self.reform is Reform.NONE:
            raise ConfigurationError("the no-op configuration is the baseline")
        if self.rerank is Rerank.NONE and (self.filter_info or self.boost_info):
            raise ConfigurationError("info types given without a re-ranking method")
        if self.rerank is Rerank.FILTER and not (self.filter_info and not self.boost_info):
            raise ConfigurationError("filtering takes exactly a filter_info")
        if self.rerank is Rerank.BOOST and not (self.boost_info and not self.filter_info):
            raise ConfigurationError("boosting takes exactly a boost_info")
        if self.rerank is Rerank.FILTER_BOOST:
            pair = (self.filter_info, self.boost_info)
            if pair not in FILTER_BOOST_PAIRS:
                raise ConfigurationError(
                    f"infeasible filter+boost pair {pair}: boosted files must be "
                    "a subset of filtered files"
                )
        if self.reform is Reform.NONE and self.reform_info is not None:
            raise ConfigurationError("reform_info given without a reformulation method")
        if self.reform is not Reform.NONE and self.reform_info is None:
            raise ConfigurationError(f"reformulation {self.reform.value} needs an info type")

    def to_string(self) -> str:
        """Canonical form, e.g. ``s4/fb:SC+GS/none`` or ``s2/b:GS/qe:SC``."""
        if self.rerank is Rerank.NONE:
            rr = "none"
        elif self.rerank is Rerank.FILTER_BOOST:
            rr = f"fb:{self.filter_info.value}+{self.boost_info.value}"
        elif self.rerank is Rerank.FILTER:
            rr = f"f:{self.filter_info.value}"
        else:
            rr = f"b:{self.boost_info.value}"
        rf = "none" if self.reform is Reform.NONE else (
            f"{_REFORM_CODES[self.reform]}:{self.reform_info.value}"
        )
        return f"s{self.n_screens}/{rr}/{rf}"

    @classmethod
    def from_string(cls, text: str) -> "Configuration":
        parts = text.split("/")
        if len(parts) != 3 or not parts[0].startswith("s"):
            raise ConfigurationError(f"bad configuration string {text!r}")
        try:
            n = int(parts[0][1:])
        except ValueError:
            raise ConfigurationError(f"bad screen count in {text!r}") from None

        def info(name: str) -> GuiInfoType:
            try:
                return GuiInfoType(name)
            except ValueError:
                raise ConfigurationError(f"unknown GUI info type {name!r}") from None

        rerank, finfo, binfo = Rerank.NONE, None, None
        rr = parts[1]
        if rr != "none":
            code, _, arg = rr.partition(":")
            if code == "f":
                rerank, finfo = Rerank.FILTER, info(arg)
            elif code == "b":
                rerank, binfo = Rerank.BOOST, info(arg)
            elif code == "fb":
                fi, _, bi = arg.partition("+")
                rerank, finfo, binfo = Rerank.FILTER_BOOST, info(fi), info(bi)
            else:
                raise ConfigurationError(f"unknown re-ranking code {rr!r}")

        reform, rinfo = Reform.NONE, None
        rf = parts[2]
        if rf != "none":
            code, _, arg = rf.partition(":")
            if code == "qe":
                reform, rinfo = Reform.EXPAND, info(arg)
            elif code == "qr":
                reform, rinfo = Reform.REPLACE, info(arg)
            else:
                raise ConfigurationError(f"unknown reformulation code {rf!r}")

        return cls(
            n_screens=n,
            rerank=rerank,
            filter_info=finfo,
            boost_info=binfo,
            reform=reform,
            reform_info=rinfo,
        )

    @property
    def reform_key(self) -> str | None:
        """Suffix identifying the reformulated query, e.g. ``s3:qe:SC``."""
        if self.reform is Reform.NONE:
            return None
        return f"s{self.n_screens}:{_REFORM_CODES[self.reform]}:{self.reform_info.value}"


def reformulate_query(
    report_tokens: list[str], gui: GuiTermSet, method: Reform
) -> list[str]:
    """Expand or replace the report query with preprocessed GUI terms."""
    if method is Reform.NONE:
        raise ValueError("reformulate_query needs expand or replace")
    gui_tokens = [tok for term in gui.all_terms() for tok in preprocess_text(term)]
    if method is Reform.EXPAND:
        return list(report_tokens) + gui_tokens
    return gui_tokens


def filter_ranking(ranked: RankedList, keep: set[str]) -> RankedList:
    """Drop entries outside ``keep``; order and scores are preserved."""
    return RankedList(
        entries=[e for e in ranked.entries if e[0] in keep], query_id=ranked.query_id
    )


def boost_ranking(ranked: RankedList, boosted: set[str]) -> RankedList:
    """Move boosted entries to the top, preserving relative order in both blocks."""
    top = [e for e in ranked.entries if e[0] in boosted]
    rest = [e for e in ranked.entries if e[0] not in boosted]
    return RankedList(entries=top + rest, query_id=ranked.query_id)


RankFn = Callable[[list[str], "str | None"], RankedList]


def apply_config(
    rank_fn: RankFn,
    cfg: Configuration,
    *,
    report_tokens: list[str],
    scenario: ReproductionScenario,
    corpus: Corpus,
    diag: list | None = None,
    files_fn: Callable[[GuiInfoType, int], set[str]] | None = None,
) -> RankedList:
    """Run one configuration end to end against a baseline ranker.

    ``rank_fn(query_tokens, reform_key)`` produces the baseline ranking;
    token-based rankers use the tokens, the embedding ranker uses the reform
    key to select the matching precomputed query vectors. Filtering happens
    before boosting; an empty filter file set skips the filter step and is
    flagged in ``diag`` so analyses can exclude the bug. ``files_fn``
    overrides the GUI-related-file lookup (e.g. with a memoized version).
    """
    if files_fn is None:
        files_fn = lambda info, n: gui_related_files(scenario, corpus, info, n)

    query = list(report_tokens)
    if cfg.reform is not Reform.NONE:
        screens = select_screens(scenario, cfg.n_screens)
        gui = extract_terms(screens, cfg.reform_info)
        query = reformulate_query(report_tokens, gui, cfg.reform)

    ranked = rank_fn(query, cfg.reform_key)

    if cfg.rerank in (Rerank.FILTER, Rerank.FILTER_BOOST):
        keep = files_fn(cfg.filter_info, cfg.n_screens)
        if keep:
            ranked = filter_ranking(ranked, keep)
        elif diag is not None:
            diag.append(
                f"filter skipped: no GUI-related files for "
                f"{cfg.filter_info.value} over {cfg.n_screens} screens"
            )

    if cfg.rerank in (Rerank.BOOST, Rerank.FILTER_BOOST):
        ranked = boost_ranking(ranked, files_fn(cfg.boost_info, cfg.n_screens))

    return ranked


def enumerate_configs() -> list[Configuration]:
    """The full 657-point grid, in a fixed deterministic order."""
    configs: list[Configuration] = []

    def add(**kwargs) -> None:
        configs.append(Configuration(**kwargs))

    reform_variants: list[tuple[Reform, GuiInfoType | None]] = [(Reform.NONE, None)]
    reform_variants += [(Reform.EXPAND, i) for i in INFO_TYPES]
    reform_variants += [(Reform.REPLACE, i) for i in INFO_TYPES]

    # filtering: 15 + 75 + 75
    for reform, rinfo in reform_variants:
        for info in INFO_TYPES:
            for n in SCREEN_COUNTS:
                add(
                    n_screens=n,
                    rerank=Rerank.FILTER,
                    filter_info=info,
                    reform=reform,
                    reform_info=rinfo,
                )
    # boosting: 15 + 75 + 75
    for reform, rinfo in reform_variants:
        for info in INFO_TYPES:
            for n in SCREEN_COUNTS:
                add(
                    n_screens=n,
                    rerank=Rerank.BOOST,
                    boost_info=info,
                    reform=reform,
                    reform_info=rinfo,
                )
    # filtering + boosting: 27 + 135 + 135
    for reform, rinfo in reform_variants:
        for finfo, binfo in FILTER_BOOST_PAIRS:
            for n in SCREEN_COUNTS:
                add(
                    n_screens=n,
                    rerank=Rerank.FILTER_BOOST,
                    filter_info=finfo,
                    boost_info=binfo,
                    reform=reform,
                    reform_info=rinfo,
                )
    # reformulation only: 15 + 15
    for reform, rinfo in reform_variants[1:]:
        for n in SCREEN_COUNTS:
            add(n_screens=n, reform=reform, reform_info=rinfo)

    return configs
