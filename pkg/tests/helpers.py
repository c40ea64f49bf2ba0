"""Shared random generators and independent oracles for the test suite."""

import math
import random
from collections import Counter

from guiloc import Corpus, RankedList, SourceDocument
from guiloc.scenario import (
    Action,
    ComponentMeta,
    ExercisedAction,
    ReproductionScenario,
    ScreenObservation,
)

ACTIVITY_POOL = [f"Screen{c}Activity" for c in "ABCDEFGH"]
WINDOW_POOL = ["AlertPanel", "PickerSheet", "WizardPage"]
ID_POOL = [f"widget_{i:02d}" for i in range(14)]


def random_scenario(rng: random.Random, max_screens: int = 6) -> ReproductionScenario:
    """Scenario with random screens, components, and exercised actions."""
    screens = []
    for step in range(1, rng.randint(1, max_screens) + 1):
        comps = []
        for _ in range(rng.randint(0, 6)):
            rid = rng.choice(ID_POOL) if rng.random() < 0.8 else None
            comps.append(
                ComponentMeta(
                    resource_id=rid,
                    class_name="android.widget.Button",
                    interactive=rng.random() < 0.6,
                    bounds=(0, 0, rng.randint(1, 500), rng.randint(1, 500)),
                )
            )
        exercised = None
        roll = rng.random()
        if roll < 0.2:
            exercised = ExercisedAction(action=Action.BACK)
        elif roll < 0.7:
            with_ids = [c for c in comps if c.resource_id]
            if with_ids:
                target = rng.choice(with_ids)
                exercised = ExercisedAction(
                    action=rng.choice([Action.TAP, Action.LONG_TOUCH]),
                    resource_id=target.resource_id,
                )
        screens.append(
            ScreenObservation(
                step_index=step,
                activity=rng.choice(ACTIVITY_POOL),
                window=rng.choice(WINDOW_POOL) if rng.random() < 0.4 else None,
                components=tuple(comps),
                exercised=exercised,
            )
        )
    return ReproductionScenario(bug_id="rand", screens=tuple(screens))


def random_mapping_corpus(rng: random.Random) -> Corpus:
    """Java corpus whose files reference random resource ids from ID_POOL."""
    stems = ACTIVITY_POOL + WINDOW_POOL + [f"Helper{i}" for i in range(5)]
    docs = []
    for stem in stems:
        if rng.random() < 0.25:
            continue
        refs = [rid for rid in ID_POOL if rng.random() < 0.3]
        body = "\n".join(f"view(R.id.{rid});" for rid in refs)
        raw = f"class {stem} {{\n{body}\n}}\n"
        docs.append(
            SourceDocument(path=f"app/{stem}.java", kind="java", raw_text=raw, tokens=())
        )
    if not docs:
        docs.append(
            SourceDocument(path="app/Empty.java", kind="java", raw_text="class Empty {}", tokens=())
        )
    return Corpus(app_id="rand", documents=docs)


def random_ranked_list(rng: random.Random, max_docs: int = 20) -> RankedList:
    n = rng.randint(0, max_docs)
    paths = rng.sample([f"f{i:03d}.java" for i in range(max_docs * 2)], n)
    scores = sorted((round(rng.random(), 6) for _ in range(n)), reverse=True)
    return RankedList(entries=list(zip(sorted(paths), scores)), query_id="q")


TERM_POOL = [f"term{chr(ord('a') + i)}{chr(ord('a') + j)}" for i in range(6) for j in range(5)]


def random_token_corpus(rng: random.Random, max_docs: int = 10, max_terms: int = 30):
    """(docs, query): random token multisets over a pool of <= 30 terms."""
    terms = TERM_POOL[:max_terms]
    n_docs = rng.randint(1, max_docs)
    docs = {}
    for i in range(n_docs):
        length = rng.randint(0, 12)
        docs[f"doc{i:02d}.java"] = [rng.choice(terms) for _ in range(length)]
    query = [rng.choice(terms) for _ in range(rng.randint(0, 8))]
    return docs, query


# ------------------------------------------------------- retrieval oracle ---


def tfidf_weights_oracle(docs: dict) -> tuple[dict, dict]:
    """(vectors, idf) computed from scratch: (1 + ln tf) * ln(N / df)."""
    indexed = {p: toks for p, toks in docs.items() if toks}
    n = len(indexed)
    df = Counter()
    for toks in indexed.values():
        df.update(set(toks))
    idf = {t: math.log(n / d) for t, d in df.items()}
    vectors = {}
    for p, toks in indexed.items():
        tf = Counter(toks)
        vectors[p] = {t: (1 + math.log(c)) * idf[t] for t, c in tf.items()}
    return vectors, idf


def _norm(vec: dict) -> float:
    return math.sqrt(sum(w * w for w in vec.values()))


def _cos(a: dict, b: dict) -> float:
    na, nb = _norm(a), _norm(b)
    if na == 0 or nb == 0:
        return 0.0
    return sum(w * b[t] for t, w in a.items() if t in b) / (na * nb)


def tfidf_ranking_oracle(docs: dict, query: list) -> list:
    """Brute-force tf-idf cosine ordering: [(path, score)] sorted."""
    vectors, idf = tfidf_weights_oracle(docs)
    qtf = Counter(t for t in query if t in idf)
    qv = {t: (1 + math.log(c)) * idf[t] for t, c in qtf.items()}
    scores = {p: 0.0 for p in docs}
    for p, dv in vectors.items():
        scores[p] = _cos(qv, dv)
    return sorted(scores.items(), key=lambda e: (-e[1], e[0]))


def rvsm_ranking_oracle(docs: dict, query: list) -> list:
    """Brute-force g(len) * cosine ordering."""
    base = dict(tfidf_ranking_oracle(docs, query))
    lengths = {p: len(toks) for p, toks in docs.items() if toks}
    lo, hi = min(lengths.values()), max(lengths.values())
    scores = {}
    for p in docs:
        if p in lengths:
            norm = 0.5 if hi == lo else (lengths[p] - lo) / (hi - lo)
            g = 1.0 / (1.0 + math.exp(-norm))
            scores[p] = g * base[p]
        else:
            scores[p] = 0.0
    return sorted(scores.items(), key=lambda e: (-e[1], e[0]))


# --------------------------------------------------------- wilcoxon oracle ---


def average_ranks_oracle(values: list) -> list:
    """rank(v) = #smaller + (#equal + 1) / 2, computed per element."""
    return [
        sum(1 for o in values if o < v) + (sum(1 for o in values if o == v) + 1) / 2
        for v in values
    ]


def wilcoxon_oracle(x: list, y: list, alternative: str = "two-sided"):
    """Exact test by enumerating all 2^n sign assignments; n must be small."""
    diffs = [a - b for a, b in zip(x, y) if a != b]
    n = len(diffs)
    if n == 0:
        return 0.0, 1.0
    ranks = average_ranks_oracle([abs(d) for d in diffs])
    w_plus = sum(r for r, d in zip(ranks, diffs) if d > 0)
    w_minus = sum(r for r, d in zip(ranks, diffs) if d < 0)

    le = ge = 0
    for mask in range(2**n):
        w = sum(r for i, r in enumerate(ranks) if mask & (1 << i))
        if w <= w_plus + 1e-12:
            le += 1
        if w >= w_plus - 1e-12:
            ge += 1
    p_le, p_ge = le / 2**n, ge / 2**n

    if alternative == "two-sided":
        return min(w_plus, w_minus), min(1.0, 2 * min(p_le, p_ge))
    if alternative == "greater":
        return w_plus, p_ge
    return w_plus, p_le
