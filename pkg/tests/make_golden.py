"""Regenerate the golden expectations for the markor fixture run.

Everything here is computed independently of the guiloc package: its own
preprocessing pipeline, its own scenario reading, substring-based id
mapping, and the brute-force rankers from helpers. The output CSV is
committed; tests/test_golden.py compares a real `run` against it.

    python3 tests/make_golden.py
"""

import csv
import math
import re
import xml.etree.ElementTree as ET
from pathlib import Path

from helpers import rvsm_ranking_oracle, tfidf_ranking_oracle

FIXTURE = Path(__file__).parent / "fixtures" / "markor"
GOLDEN = FIXTURE / "golden_hits.csv"
TRUTH = "app/src/main/java/net/gsantner/markor/frontend/NewFileDialog.java"

CONFIGS = [
    "s2/f:GS/none",
    "s2/f:SC/none",
    "s2/b:GS/none",
    "s3/b:EGC/none",
    "s4/fb:SC+GS/none",
    "s2/fb:GS_SC+GS_EGC/none",
    "s2/none/qe:GS",
    "s3/none/qr:GS_SC",
    "s2/b:GS/qe:SC",
    "s4/fb:GS_EGC+EGC/qr:EGC",
]

KEYWORDS = set(
    "abstract assert boolean break byte case catch char class const continue "
    "default do double else enum extends final finally float for goto if "
    "implements import instanceof int interface long native new package "
    "private protected public return short static strictfp super switch "
    "synchronized this throw throws transient try void volatile while "
    "true false null".split()
)


def tokens_of(text: str) -> list:
    out = []
    for word in re.findall(r"[A-Za-z0-9]+", text):
        word = re.sub(r"(?<=[a-z])(?=[A-Z])", " ", word)
        word = re.sub(r"(?<=[A-Z])(?=[A-Z][a-z])", " ", word)
        for piece in word.split():
            piece = re.sub(r"[0-9]+", "", piece).lower()
            if len(piece) >= 3 and piece not in KEYWORDS:
                out.append(piece)
    return out


def read_corpus() -> dict:
    docs = {}
    root = FIXTURE / "corpus"
    for path in sorted(root.rglob("*.java")):
        rel = path.relative_to(root).as_posix()
        docs[rel] = path.read_text()
    return docs


def read_screens() -> list:
    """[(activity, window|None, exercised_id|None, interactive_ids)] per step."""
    screens = []
    scen = FIXTURE / "scenario"
    actions = {}
    for line in (scen / "actions.log").read_text().splitlines():
        step, action, rid = line.split()
        actions[int(step)] = None if action == "back" or rid == "-" else rid.split("id/")[-1]
    step = 1
    while (scen / f"step_{step}.xml").is_file():
        meta = (scen / f"step_{step}.meta").read_text().splitlines()
        window = None if meta[1].strip() == "-" else meta[1].strip()
        ids = set()
        for node in ET.fromstring((scen / f"step_{step}.xml").read_text()).iter("node"):
            rid = (node.get("resource-id") or "").split("id/")[-1]
            flags = (node.get("clickable"), node.get("long-clickable"), node.get("scrollable"))
            if rid and ("true" in flags or rid == actions.get(step)):
                ids.add(rid)
        screens.append((meta[0].strip(), window, actions.get(step), ids))
        step += 1
    return screens


def gui_terms(screens: list, info: str, n: int):
    chosen = screens[-n:]
    names: set = set()
    ids: set = set()
    if info in ("GS", "GS_EGC", "GS_SC"):
        for activity, window, _, _ in chosen:
            names.add(activity)
            if window:
                names.add(window)
    if info in ("EGC", "GS_EGC"):
        ids |= {ex for _, _, ex, _ in chosen if ex}
    if info in ("SC", "GS_SC"):
        for _, _, _, sc in chosen:
            ids |= sc
    return names, ids


def gui_files(docs: dict, names: set, ids: set) -> set:
    files = set()
    for path in docs:
        stem = path.rsplit("/", 1)[-1][: -len(".java")]
        if stem in {t.split("$")[0] for t in names}:
            files.add(path)
    for rid in ids:
        for path, text in docs.items():
            if f"R.id.{rid}" in text or f'"id/{rid}"' in text:
                files.add(path)
    return files


def apply(config: str, docs: dict, doc_tokens: dict, report: list, screens: list, ranker) -> int:
    sk, rerank, reform = config.split("/")
    n = int(sk[1:])

    query = list(report)
    if reform != "none":
        code, info = reform.split(":")
        names, ids = gui_terms(screens, info, n)
        extra = [t for term in sorted(names) + sorted(ids) for t in tokens_of(term)]
        query = query + extra if code == "qe" else extra

    order = [p for p, _ in ranker(doc_tokens, query)]

    if rerank.startswith("f:") or rerank.startswith("fb:"):
        finfo = rerank.split(":")[1].split("+")[0]
        keep = gui_files(docs, *gui_terms(screens, finfo, n))
        if keep:
            order = [p for p in order if p in keep]
    if rerank.startswith("b:") or rerank.startswith("fb:"):
        binfo = rerank.split(":")[1].split("+")[-1]
        boost = gui_files(docs, *gui_terms(screens, binfo, n))
        order = [p for p in order if p in boost] + [p for p in order if p not in boost]

    return order.index(TRUTH) + 1 if TRUTH in order else 0


def main() -> None:
    docs = read_corpus()
    doc_tokens = {p: tokens_of(t) for p, t in docs.items()}
    report = tokens_of((FIXTURE / "report.txt").read_text())
    screens = read_screens()

    rows = []
    for tech, ranker in (("rvsm", rvsm_ranking_oracle), ("tfidf", tfidf_ranking_oracle)):
        base = [p for p, _ in ranker(doc_tokens, report)].index(TRUTH) + 1
        rows.append([tech, "baseline", base, int(base == 1), int(base <= 5), int(base <= 10)])
        for config in CONFIGS:
            rank = apply(config, docs, doc_tokens, report, screens, ranker)
            hit = lambda k: int(rank != 0 and rank <= k)
            rows.append([tech, config, rank, hit(1), hit(5), hit(10)])

    with open(GOLDEN, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["technique", "config", "first_rank", "hit1", "hit5", "hit10"])
        writer.writerows(rows)
    print(f"wrote {GOLDEN} ({len(rows)} rows)")


if __name__ == "__main__":
    main()
