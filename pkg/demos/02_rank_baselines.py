"""Rank the bundled Markor-like corpus against its bug report.

Shows the two token-based baselines side by side: plain tf-idf cosine and
rVSM (cosine times a logistic boost of document length, so longer files
rank higher).
"""

from pathlib import Path

from guiloc import build_index, load_corpus, preprocess_text, rank_rvsm, rank_tfidf

FIXTURE = Path(__file__).parent.parent / "tests" / "fixtures" / "markor"

corpus = load_corpus(FIXTURE / "corpus", app_id="markor")
index = build_index(corpus)
report = (FIXTURE / "report.txt").read_text()
query = preprocess_text(report)

print(f"corpus: {len(corpus.documents)} documents, {len(corpus.rankable)} rankable")
print(f"report: {report.splitlines()[0]!r}")
print(f"query tokens: {len(query)}\n")

for name, ranker in [("tf-idf", rank_tfidf), ("rVSM", rank_rvsm)]:
    ranked = ranker(index, query, query_id="markor-1")
    print(f"--- {name} top 5 ---")
    for i, (path, score) in enumerate(ranked.entries[:5], start=1):
        print(f"  {i}. {score:.4f}  {path.rsplit('/', 1)[-1]}")
    buggy = ranked.rank_of(
        "app/src/main/java/net/gsantner/markor/frontend/NewFileDialog.java"
    )
    print(f"  buggy NewFileDialog.java sits at rank {buggy}\n")
