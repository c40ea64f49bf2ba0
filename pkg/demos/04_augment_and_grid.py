"""Re-ranking and query reformulation, plus the 657-point configuration grid.

Reproduces the motivating flow: the baseline ranks the buggy dialog file
35th; boosting the three GUI-screen files lifts it into the top 3.
"""

from collections import Counter
from pathlib import Path

from guiloc import (
    Configuration,
    GuiInfoType,
    Rerank,
    apply_config,
    build_index,
    enumerate_configs,
    load_corpus,
    parse_scenario,
    preprocess_text,
    rank_rvsm,
)

FIXTURE = Path(__file__).parent.parent / "tests" / "fixtures" / "markor"
NFD = "app/src/main/java/net/gsantner/markor/frontend/NewFileDialog.java"

corpus = load_corpus(FIXTURE / "corpus", app_id="markor")
index = build_index(corpus)
scenario = parse_scenario(FIXTURE / "scenario", bug_id="markor-1")
report_tokens = preprocess_text((FIXTURE / "report.txt").read_text())

rank_fn = lambda q, key: rank_rvsm(index, q, query_id="markor-1")
baseline = rank_fn(report_tokens, None)
print(f"baseline rVSM rank of NewFileDialog.java: {baseline.rank_of(NFD)}")

for text in ("s2/b:GS/none", "s2/f:SC/none", "s4/fb:SC+GS/none", "s2/none/qe:GS_SC"):
    cfg = Configuration.from_string(text)
    ranked = apply_config(
        rank_fn, cfg, report_tokens=report_tokens, scenario=scenario, corpus=corpus
    )
    print(f"  {text:18s} -> rank {ranked.rank_of(NFD)}  ({len(ranked.entries)} files left)")

# the full grid explored by the study
configs = enumerate_configs()
print(f"\nthe grid has {len(configs)} configurations:")
families = Counter((c.rerank.value, c.reform.value) for c in configs)
for (rerank, reform), count in sorted(families.items()):
    print(f"  rerank={rerank:12s} reform={reform:7s} {count:4d}")
