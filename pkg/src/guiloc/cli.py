"""Command-line orchestration for indexing, grid runs, and analysis.

Subcommands:

    index --manifest M --out D          build one persisted index per app
    run --manifest M --tech T[,T..] --configs all|C[,C..] --out D
    analyze --base F --aug F --out D    movement/overlap/significance report
    embed-inputs --manifest M --out F   preprocessed texts for the exporter

Exit codes: 0 success, 1 validation error, 2 runtime failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from .augment import (
    Configuration,
    ConfigurationError,
    Reform,
    apply_config,
    enumerate_configs,
    reformulate_query,
)
from .corpus import Corpus, CorpusError, load_corpus
from .embeddings import EmbeddingStore, EmbeddingStoreError, load_embedding_store, rank_embeddings
from .evaluation import EvalError, classify_movement, first_rank, top10_overlap, wilcoxon_signed_rank
from .manifest import BugEntry, ManifestError, load_manifest
from .mapping import gui_related_files
from .retrieval import Index, RankedList, RetrievalError, build_index, rank_rvsm, rank_tfidf
from .scenario import GuiInfoType, ScenarioError, extract_terms, parse_scenario, select_screens
from .tokens import preprocess_text

log = logging.getLogger("guiloc")

TECHNIQUES = ("rvsm", "tfidf", "embed")
REFORM_VARIANTS = tuple(
    (n, method, info)
    for n in (2, 3, 4)
    for method in (Reform.EXPAND, Reform.REPLACE)
    for info in GuiInfoType
)


class UsageError(Exception):
    """Invalid arguments or inputs; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); usage errors are code 1
        raise UsageError(message)


@dataclass
class LoadedBug:
    entry: BugEntry
    corpus: Corpus
    index: Index
    scenario: object
    report_tokens: list[str]
    truth: set[str]
    store: EmbeddingStore | None = None

    @property
    def bug_id(self) -> str:
        return self.entry.bug_id


def _load_bugs(
    entries: list[BugEntry], need_store: bool
) -> tuple[list[LoadedBug], list[dict]]:
    """Build runtime bug cases; per-bug failures become exclusion records."""
    corpus_cache: dict[str, tuple[Path, Corpus, Index]] = {}
    store_cache: dict[Path, EmbeddingStore] = {}
    bugs: list[LoadedBug] = []
    excluded: list[dict] = []

    for entry in entries:
        try:
            cached = corpus_cache.get(entry.app_id)
            if cached is not None:
                root, corpus, index = cached
                if root != entry.corpus_root:
                    raise ManifestError(
                        f"app {entry.app_id} has inconsistent corpus roots"
                    )
            else:
                corpus = load_corpus(entry.corpus_root, app_id=entry.app_id)
                index = build_index(corpus)
                corpus_cache[entry.app_id] = (entry.corpus_root, corpus, index)

            truth = set(entry.truth_paths)
            rankable = set(corpus.rankable_paths)
            if not truth <= rankable:
                raise EvalError(
                    f"truth files not rankable: {sorted(truth - rankable)}"
                )
            scenario = parse_scenario(entry.scenario_dir, bug_id=entry.bug_id)
            report_tokens = preprocess_text(
                entry.report_path.read_text(encoding="utf-8", errors="replace")
            )

            store = None
            if need_store and entry.embedding_store_path is not None:
                store = store_cache.get(entry.embedding_store_path)
                if store is None:
                    store = load_embedding_store(entry.embedding_store_path)
                    store_cache[entry.embedding_store_path] = store

            bugs.append(
                LoadedBug(
                    entry=entry,
                    corpus=corpus,
                    index=index,
                    scenario=scenario,
                    report_tokens=report_tokens,
                    truth=truth,
                    store=store,
                )
            )
        except (CorpusError, RetrievalError, ScenarioError, EvalError, OSError) as exc:
            log.warning("excluding bug %s: %s", entry.bug_id, exc)
            excluded.append({"bug_id": entry.bug_id, "reason": str(exc)})
    return bugs, excluded


# ---------------------------------------------------------------- index ---


def index_to_dict(index: Index) -> dict:
    return {
        "app_id": index.app_id,
        "n_docs": index.n_docs,
        "idf": index.idf,
        "doc_vectors": index.doc_vectors,
        "doc_lengths": index.doc_lengths,
        "all_paths": index.all_paths,
        "warnings": index.warnings,
    }


def index_from_dict(data: dict) -> Index:
    return Index(
        app_id=data["app_id"],
        n_docs=data["n_docs"],
        idf=data["idf"],
        doc_vectors=data["doc_vectors"],
        doc_lengths=data["doc_lengths"],
        all_paths=data["all_paths"],
        warnings=list(data.get("warnings", [])),
    )


def cmd_index(manifest_path: str, out_dir: str) -> int:
    entries = load_manifest(manifest_path)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    roots: dict[str, Path] = {}
    errors: list[dict] = []
    written = 0
    for entry in entries:
        prev = roots.get(entry.app_id)
        if prev == entry.corpus_root:
            continue
        if prev is not None:
            raise ManifestError(f"app {entry.app_id} has inconsistent corpus roots")
        roots[entry.app_id] = entry.corpus_root
        try:
            index = build_index(load_corpus(entry.corpus_root, app_id=entry.app_id))
        except (CorpusError, RetrievalError, OSError) as exc:
            log.warning("cannot index %s: %s", entry.app_id, exc)
            errors.append({"bug_id": entry.bug_id, "app_id": entry.app_id, "reason": str(exc)})
            continue
        path = out / f"{entry.app_id}.index.json"
        _write_json(path, index_to_dict(index))
        written += 1
        log.info("indexed %s: %d documents -> %s", entry.app_id, index.n_docs, path)

    if errors:
        _write_json(out / "index_errors.json", {"errors": errors})
    if written == 0:
        raise UsageError("no app could be indexed")
    return 0


# ------------------------------------------------------------------ run ---


def _make_rank_fn(tech: str, bug: LoadedBug):
    """Memoized baseline ranker; one ranking per distinct (reform) query."""
    cache: dict[str, RankedList] = {}
    if tech == "embed":
        doc_paths = sorted(bug.index.doc_vectors)

        def fn(query_tokens, reform_key):
            key = bug.bug_id if reform_key is None else f"{bug.bug_id}/{reform_key}"
            if key not in cache:
                cache[key] = rank_embeddings(bug.store, key, paths=doc_paths)
            return cache[key]

    else:
        ranker = rank_rvsm if tech == "rvsm" else rank_tfidf

        def fn(query_tokens, reform_key):
            key = reform_key or ""
            if key not in cache:
                cache[key] = ranker(bug.index, query_tokens, query_id=bug.bug_id)
            return cache[key]

    return fn


def _hits(first_ranks: dict[str, int | None], k: int) -> tuple[float, int]:
    hits = sum(1 for r in first_ranks.values() if r is not None and r <= k)
    return hits / len(first_ranks), hits


def _ranks_for_movement(first_ranks: dict[str, int | None]) -> dict[str, float]:
    return {b: (math.inf if r is None else float(r)) for b, r in first_ranks.items()}


def _evaluate(
    tech: str, bugs: list[LoadedBug], configs: list[Configuration]
) -> tuple[dict, list[list]]:
    """Per-bug first ranks and aggregate metrics for baseline + each config."""
    rank_fns = {bug.bug_id: _make_rank_fn(tech, bug) for bug in bugs}
    files_cache: dict[tuple[str, GuiInfoType, int], set[str]] = {}
    mapping_diag: dict[str, dict[str, list]] = {}

    def cached_files(bug: LoadedBug, info: GuiInfoType, n: int) -> set[str]:
        key = (bug.bug_id, info, n)
        if key not in files_cache:
            records: list = []
            files_cache[key] = gui_related_files(
                bug.scenario, bug.corpus, info, n, diag=records
            )
            mapping_diag.setdefault(bug.bug_id, {})[f"{info.value}@s{n}"] = records
        return files_cache[key]

    base_ranks: dict[str, int | None] = {}
    for bug in bugs:
        ranked = rank_fns[bug.bug_id](bug.report_tokens, None)
        base_ranks[bug.bug_id] = first_rank(ranked, bug.truth)
    h10_base, c10_base = _hits(base_ranks, 10)
    h5_base, c5_base = _hits(base_ranks, 5)
    h1_base, c1_base = _hits(base_ranks, 1)

    json_doc = {
        "technique": tech,
        "bugs": sorted(b.bug_id for b in bugs),
        "corpus_sizes": {b.bug_id: len(b.index.all_paths) for b in bugs},
        "baseline": {"first_ranks": base_ranks},
        "mapping_diagnostics": mapping_diag,
        "configs": {},
    }
    rows = [
        [tech, "baseline", len(bugs), c1_base, c5_base, c10_base,
         h1_base, h5_base, h10_base, 0.0]
    ]

    for cfg in configs:
        cfg_str = cfg.to_string()
        cfg_ranks: dict[str, int | None] = {}
        diagnostics: dict[str, list[str]] = {}
        for bug in bugs:
            diag: list[str] = []
            ranked = apply_config(
                rank_fns[bug.bug_id],
                cfg,
                report_tokens=bug.report_tokens,
                scenario=bug.scenario,
                corpus=bug.corpus,
                diag=diag,
                files_fn=lambda info, n, _b=bug: cached_files(_b, info, n),
            )
            cfg_ranks[bug.bug_id] = first_rank(ranked, bug.truth)
            if diag:
                diagnostics[bug.bug_id] = diag
        h1, c1 = _hits(cfg_ranks, 1)
        h5, c5 = _hits(cfg_ranks, 5)
        h10, c10 = _hits(cfg_ranks, 10)
        rel = None if h10_base == 0 else (h10 - h10_base) / h10_base
        movement = classify_movement(
            _ranks_for_movement(base_ranks), _ranks_for_movement(cfg_ranks)
        )
        json_doc["configs"][cfg_str] = {
            "first_ranks": cfg_ranks,
            "hits": {"h1": h1, "h5": h5, "h10": h10, "c1": c1, "c5": c5, "c10": c10},
            "rel_improvement10": rel,
            "movement_vs_baseline": movement.as_dict(),
            "diagnostics": diagnostics,
        }
        rows.append(
            [tech, cfg_str, len(bugs), c1, c5, c10, h1, h5, h10,
             "undefined" if rel is None else rel]
        )
    return json_doc, rows


CSV_HEADER = [
    "technique", "config", "n_bugs",
    "hit1_count", "hit5_count", "hit10_count",
    "hits1", "hits5", "hits10", "rel_improvement10",
]


def _format_cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_csv(path: Path, rows: list[list]) -> None:
    lines = [",".join(CSV_HEADER)]
    lines += [",".join(_format_cell(v) for v in row) for row in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _write_json(path: Path, doc) -> None:
    path.write_text(
        json.dumps(doc, indent=1, sort_keys=True) + "\n", encoding="utf-8"
    )


def _parse_configs(arg: str) -> list[Configuration]:
    if arg == "all":
        return enumerate_configs()
    return [Configuration.from_string(s) for s in arg.split(",") if s]


def cmd_run(manifest_path: str, tech_spec: str, config_spec: str, out_dir: str) -> int:
    techs = [t for t in tech_spec.split(",") if t]
    unknown = [t for t in techs if t not in TECHNIQUES]
    if unknown or not techs:
        raise UsageError(f"techniques must be from {TECHNIQUES}, got {techs}")
    configs = _parse_configs(config_spec)
    entries = load_manifest(manifest_path)

    if "embed" in techs:
        missing = [e.bug_id for e in entries if e.embedding_store_path is None]
        if missing:
            raise UsageError(f"embed technique needs embedding stores; missing for: {missing}")

    bugs, excluded = _load_bugs(entries, need_store="embed" in techs)
    if not bugs:
        raise UsageError("every bug in the manifest was excluded; nothing to run")

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for tech in techs:
        json_doc, rows = _evaluate(tech, bugs, configs)
        json_doc["excluded"] = excluded
        _write_csv(out / f"report_{tech}.csv", rows)
        _write_json(out / f"report_{tech}.json", json_doc)
        log.info("wrote report for %s (%d configurations)", tech, len(configs))
    return 0


# -------------------------------------------------------------- analyze ---


def _first_ranks_from_report(doc: dict, name: str) -> dict[str, int | None]:
    if name == "baseline":
        return doc["baseline"]["first_ranks"]
    try:
        return doc["configs"][name]["first_ranks"]
    except KeyError:
        raise UsageError(f"report has no configuration {name!r}") from None


def cmd_analyze(base_path: str, aug_path: str, out_dir: str, alternative: str) -> int:
    try:
        base_doc = json.loads(Path(base_path).read_text(encoding="utf-8"))
        aug_doc = json.loads(Path(aug_path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot load report: {exc}") from None

    if set(base_doc["bugs"]) != set(aug_doc["bugs"]):
        raise UsageError("base and augmented reports cover different bug sets")
    sizes = base_doc["corpus_sizes"]

    base_ranks = _first_ranks_from_report(base_doc, "baseline")

    def moved(ranks: dict[str, int | None]) -> dict[str, float]:
        return {b: (math.inf if r is None else float(r)) for b, r in ranks.items()}

    def sentinel(ranks: dict[str, int | None]) -> list[float]:
        return [
            float(sizes[b] + 1 if ranks[b] is None else ranks[b])
            for b in sorted(ranks)
        ]

    def hit_set(ranks: dict[str, int | None]) -> set[str]:
        return {b for b, r in ranks.items() if r is not None and r <= 10}

    pairs = {}
    names = ["baseline"] + sorted(aug_doc.get("configs", {}))
    for name in names:
        aug_ranks = _first_ranks_from_report(aug_doc, name)
        movement = classify_movement(moved(base_ranks), moved(aug_ranks))
        statistic, p_value = wilcoxon_signed_rank(
            sentinel(base_ranks), sentinel(aug_ranks), alternative=alternative
        )
        overlap = top10_overlap({"base": hit_set(base_ranks), "aug": hit_set(aug_ranks)})
        pairs[name] = {
            "movement": movement.as_dict(),
            "wilcoxon": {"statistic": statistic, "p_value": p_value},
            "top10_overlap": {"+".join(k): v for k, v in overlap.items()},
        }

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    _write_json(
        out / "analysis.json",
        {
            "base_technique": base_doc.get("technique"),
            "aug_technique": aug_doc.get("technique"),
            "alternative": alternative,
            "pairs": pairs,
        },
    )
    return 0


# --------------------------------------------------------- embed-inputs ---


def cmd_embed_inputs(manifest_path: str, out_path: str) -> int:
    """Emit preprocessed document and query texts for the embedding exporter."""
    entries = load_manifest(manifest_path)
    bugs, excluded = _load_bugs(entries, need_store=False)
    if not bugs:
        raise UsageError("every bug in the manifest was excluded; nothing to export")

    corpora: dict[str, dict] = {}
    bug_docs: dict[str, dict] = {}
    for bug in bugs:
        if bug.entry.app_id not in corpora:
            corpora[bug.entry.app_id] = {
                "documents": {
                    path: " ".join(
                        bug.corpus.get(path).tokens
                    )
                    for path in sorted(bug.index.doc_vectors)
                }
            }
        queries = {f"query:{bug.bug_id}": " ".join(bug.report_tokens)}
        for n, method, info in REFORM_VARIANTS:
            gui = extract_terms(select_screens(bug.scenario, n), info)
            tokens = reformulate_query(bug.report_tokens, gui, method)
            code = "qe" if method is Reform.EXPAND else "qr"
            queries[f"query:{bug.bug_id}/s{n}:{code}:{info.value}"] = " ".join(tokens)
        bug_docs[bug.bug_id] = {"app_id": bug.entry.app_id, "queries": queries}

    _write_json(
        Path(out_path),
        {"version": 1, "corpora": corpora, "bugs": bug_docs, "excluded": excluded},
    )
    return 0


# ----------------------------------------------------------------- main ---


def _build_parser() -> _Parser:
    parser = _Parser(prog="guiloc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("index", help="build and persist one index per app")
    p.add_argument("--manifest", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("run", help="evaluate baselines and configurations")
    p.add_argument("--manifest", required=True)
    p.add_argument("--tech", default="rvsm", help="comma list from rvsm,tfidf,embed")
    p.add_argument("--configs", default="all", help='"all" or comma list of config strings')
    p.add_argument("--out", required=True)

    p = sub.add_parser("analyze", help="movement, overlap, and significance")
    p.add_argument("--base", required=True)
    p.add_argument("--aug", required=True)
    p.add_argument("--out", required=True)
    p.add_argument(
        "--alternative",
        default="two-sided",
        choices=("two-sided", "greater", "less"),
        help="greater tests that augmented first ranks are smaller (better)",
    )

    p = sub.add_parser("embed-inputs", help="texts for the embedding exporter")
    p.add_argument("--manifest", required=True)
    p.add_argument("--out", required=True)

    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "index":
            return cmd_index(args.manifest, args.out)
        if args.command == "run":
            return cmd_run(args.manifest, args.tech, args.configs, args.out)
        if args.command == "analyze":
            return cmd_analyze(args.base, args.aug, args.out, args.alternative)
        if args.command == "embed-inputs":
            return cmd_embed_inputs(args.manifest, args.out)
        raise UsageError(f"unknown command {args.command!r}")
    except (UsageError, ManifestError, ConfigurationError, EvalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (EmbeddingStoreError, CorpusError, RetrievalError, ScenarioError, OSError) as exc:
        print(f"runtime failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
