"""Hits@K, improvement, rank movement, overlap, and significance testing."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, fields

from .retrieval import RankedList

TOP_K = 10  # the "useful to a developer" cutoff used for movement/overlap


class EvalError(Exception):
    """Raised for inconsistent evaluation inputs."""


def first_rank(ranked: RankedList, truth_files: set[str]) -> int | None:
    """Best (smallest) 1-based rank of any ground-truth file, None if absent."""
    for i, (path, _) in enumerate(ranked.entries, start=1):
        if path in truth_files:
            return i
    return None


def hits_at_k(
    rankings: dict[str, RankedList], truth: dict[str, set[str]], k: int
) -> tuple[float, int]:
    """Fraction and count of bugs with a buggy file ranked within the top k."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if not rankings:
        raise EvalError("no rankings to evaluate")
    hits = 0
    for bug_id, ranked in rankings.items():
        if bug_id not in truth:
            raise EvalError(f"bug {bug_id} missing from ground truth")
        if not truth[bug_id]:
            raise EvalError(f"bug {bug_id} has an empty ground-truth set")
        rank = first_rank(ranked, truth[bug_id])
        if rank is not None and rank <= k:
            hits += 1
    return hits / len(rankings), hits


def relative_improvement(h_gui: float, h_base: float) -> float | None:
    """(h_gui - h_base) / h_base; None when the baseline is zero (undefined)."""
    if h_base == 0:
        return None
    return (h_gui - h_base) / h_base


@dataclass(frozen=True)
class MovementReport:
    """How first ranks move between a baseline and an augmented run.

    Buckets partition the bug set: each bug lands in exactly one of the two
    top-10 transitions or one same-region rank-change bucket. Bugs unranked
    in both runs count as outside-10 unchanged.
    """

    out10_to_in10: int = 0
    in10_to_out10: int = 0
    inside_improved: int = 0
    inside_deteriorated: int = 0
    inside_unchanged: int = 0
    outside_improved: int = 0
    outside_deteriorated: int = 0
    outside_unchanged: int = 0

    def total(self) -> int:
        return sum(getattr(self, f.name) for f in fields(self))

    def as_dict(self) -> dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def classify_movement(
    base_ranks: dict[str, float], aug_ranks: dict[str, float], k: int = TOP_K
) -> MovementReport:
    """Bucket bugs by first-rank movement; unranked bugs carry rank +inf."""
    if set(base_ranks) != set(aug_ranks):
        raise EvalError("baseline and augmented runs cover different bug sets")
    counts = dict.fromkeys(
        (
            "out10_to_in10",
            "in10_to_out10",
            "inside_improved",
            "inside_deteriorated",
            "inside_unchanged",
            "outside_improved",
            "outside_deteriorated",
            "outside_unchanged",
        ),
        0,
    )
    for bug in base_ranks:
        b, a = base_ranks[bug], aug_ranks[bug]
        if b > k and a <= k:
            counts["out10_to_in10"] += 1
        elif b <= k and a > k:
            counts["in10_to_out10"] += 1
        else:
            region = "inside" if b <= k else "outside"
            if a < b:
                counts[f"{region}_improved"] += 1
            elif a > b:
                counts[f"{region}_deteriorated"] += 1
            else:
                counts[f"{region}_unchanged"] += 1
    return MovementReport(**counts)


def rank_movement(
    base: dict[str, RankedList],
    aug: dict[str, RankedList],
    truth: dict[str, set[str]],
) -> MovementReport:
    """Movement report from full rankings (see classify_movement)."""
    if set(base) != set(aug):
        raise EvalError("baseline and augmented runs cover different bug sets")

    def ranks(rankings: dict[str, RankedList]) -> dict[str, float]:
        out = {}
        for bug_id, ranked in rankings.items():
            if bug_id not in truth:
                raise EvalError(f"bug {bug_id} missing from ground truth")
            r = first_rank(ranked, truth[bug_id])
            out[bug_id] = math.inf if r is None else float(r)
        return out

    return classify_movement(ranks(base), ranks(aug))


def top10_overlap(per_technique: dict[str, set[str]]) -> dict[tuple[str, ...], int]:
    """Bugs hit by exactly each non-empty subset of techniques.

    Returns a map from the sorted technique tuple to the count of bugs hit
    by precisely those techniques; cell counts sum to the size of the union.
    """
    if not per_technique:
        raise EvalError("overlap needs at least one technique")
    names = sorted(per_technique)
    table: dict[tuple[str, ...], int] = {}
    for r in range(1, len(names) + 1):
        for subset in itertools.combinations(names, r):
            inside = set.intersection(*(per_technique[t] for t in subset))
            outside = set.union(
                set(), *(per_technique[t] for t in names if t not in subset)
            )
            table[subset] = len(inside - outside)
    return table


def _average_ranks(values: list[float]) -> list[float]:
    """Ranks 1..n with ties sharing the average rank."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        avg = (i + j) / 2 + 1
        for k in range(i, j + 1):
            ranks[order[k]] = avg
        i = j + 1
    return ranks


def _exact_tail_probs(double_ranks: list[int], w_plus_doubled: int) -> tuple[float, float]:
    """P(W+ <= w) and P(W+ >= w) by exact convolution over sign assignments.

    Ranks arrive doubled so tied (half-integral) average ranks stay integral.
    """
    max_sum = sum(double_ranks)
    counts = [0] * (max_sum + 1)
    counts[0] = 1
    for r in double_ranks:
        nxt = counts[:]
        for s in range(max_sum - r + 1):
            if counts[s]:
                nxt[s + r] += counts[s]
        counts = nxt
    total = float(2 ** len(double_ranks))
    p_le = sum(counts[: w_plus_doubled + 1]) / total
    p_ge = sum(counts[w_plus_doubled:]) / total
    return p_le, p_ge


EXACT_N_MAX = 25


def wilcoxon_signed_rank(
    x: list[float], y: list[float], alternative: str = "two-sided"
) -> tuple[float, float]:
    """Wilcoxon signed-rank test on paired samples, testing median(x-y) = 0.

    Zero differences are dropped and ties share average ranks. The null
    distribution is exact (sign-assignment enumeration, valid under ties)
    up to 25 pairs and a tie-corrected normal approximation beyond. For the
    two-sided alternative the statistic is min(W+, W-), otherwise W+.
    Returns (statistic, p_value); all differences zero gives (0.0, 1.0).
    """
    if len(x) != len(y):
        raise ValueError("samples must have equal length")
    if alternative not in ("two-sided", "greater", "less"):
        raise ValueError(f"unknown alternative {alternative!r}")

    diffs = [a - b for a, b in zip(x, y) if a != b]
    n = len(diffs)
    if n == 0:
        return 0.0, 1.0

    ranks = _average_ranks([abs(d) for d in diffs])
    w_plus = sum(r for r, d in zip(ranks, diffs) if d > 0)
    w_minus = sum(r for r, d in zip(ranks, diffs) if d < 0)
    statistic = min(w_plus, w_minus) if alternative == "two-sided" else w_plus

    if n <= EXACT_N_MAX:
        double_ranks = [int(round(2 * r)) for r in ranks]
        p_le, p_ge = _exact_tail_probs(double_ranks, int(round(2 * w_plus)))
        if alternative == "two-sided":
            p = min(1.0, 2.0 * min(p_le, p_ge))
        elif alternative == "greater":
            p = p_ge
        else:
            p = p_le
    else:
        mean = n * (n + 1) / 4.0
        tie_term = 0.0
        for _, group in itertools.groupby(sorted(abs(d) for d in diffs)):
            t = len(list(group))
            tie_term += t**3 - t
        var = n * (n + 1) * (2 * n + 1) / 24.0 - tie_term / 48.0
        z = (w_plus - mean) / math.sqrt(var)
        if alternative == "two-sided":
            p = math.erfc(abs(z) / math.sqrt(2))
        elif alternative == "greater":
            p = 0.5 * math.erfc(z / math.sqrt(2))
        else:
            p = 0.5 * math.erfc(-z / math.sqrt(2))

    return float(statistic), min(1.0, float(p))
