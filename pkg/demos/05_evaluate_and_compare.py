"""Evaluation metrics: Hits@K, movement buckets, overlap, and significance.

Builds two synthetic runs over 80 bugs (mimicking the scale of a full
study) and compares them the same way the batch runner does.
"""

import random

from guiloc import (
    RankedList,
    classify_movement,
    hits_at_k,
    relative_improvement,
    top10_overlap,
    wilcoxon_signed_rank,
)

rng = random.Random(8)


def run_with_ranks(ranks: dict) -> dict:
    rankings = {}
    for bug, rank in ranks.items():
        paths = [f"f{i:03d}.java" for i in range(60)]
        if rank is not None:
            paths[rank - 1] = "buggy.java"
        rankings[bug] = RankedList(
            entries=[(p, 1.0 - i / 100) for i, p in enumerate(paths)], query_id=bug
        )
    return rankings


bugs = [f"bug{i:02d}" for i in range(80)]
base_ranks = {b: rng.choice([1, 2, 4, 7, 9, 14, 22, 35, None]) for b in bugs}
# the augmented run pulls some mid-ranked bugs into the top 10
aug_ranks = {
    b: (3 if r is not None and 10 < r <= 25 and rng.random() < 0.6 else r)
    for b, r in base_ranks.items()
}

truth = {b: {"buggy.java"} for b in bugs}
base, aug = run_with_ranks(base_ranks), run_with_ranks(aug_ranks)

for k in (1, 5, 10):
    fb, cb = hits_at_k(base, truth, k)
    fa, ca = hits_at_k(aug, truth, k)
    print(f"Hits@{k:<2d} base {cb:2d} ({fb:.2f})   augmented {ca:2d} ({fa:.2f})")

improvement = relative_improvement(hits_at_k(aug, truth, 10)[0], hits_at_k(base, truth, 10)[0])
print(f"relative Hits@10 improvement: {improvement * 100:.2f}%")

to_inf = lambda ranks: {b: float("inf") if r is None else r for b, r in ranks.items()}
movement = classify_movement(to_inf(base_ranks), to_inf(aug_ranks))
print(f"\nmovement buckets: {movement.as_dict()}")

hit10 = lambda ranks: {b for b, r in ranks.items() if r is not None and r <= 10}
overlap = top10_overlap({"base": hit10(base_ranks), "aug": hit10(aug_ranks)})
print(f"top-10 overlap cells: { {'+'.join(k): v for k, v in overlap.items()} }")

sentinel = lambda ranks: [61 if ranks[b] is None else ranks[b] for b in bugs]
w, p = wilcoxon_signed_rank(sentinel(base_ranks), sentinel(aug_ranks))
print(f"\nWilcoxon signed-rank on first ranks: W={w:.1f}, two-sided p={p:.6f}")
