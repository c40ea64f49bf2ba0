"""Compare a real fixture run against the committed golden expectations.

The golden CSV is produced by tests/make_golden.py, which recomputes
everything (preprocessing, scenario terms, file mapping, rankings,
re-ranking) with its own independent code.
"""

import csv
import json

import pytest

from guiloc.cli import main


@pytest.fixture(scope="module")
def golden(markor_dir):
    rows = {}
    with open(markor_dir / "golden_hits.csv", newline="") as fh:
        for row in csv.DictReader(fh):
            rows[(row["technique"], row["config"])] = row
    return rows


@pytest.fixture(scope="module")
def run_reports(markor_dir, tmp_path_factory, golden):
    configs = sorted({cfg for _, cfg in golden if cfg != "baseline"})
    out = tmp_path_factory.mktemp("golden-run")
    rc = main([
        "run",
        "--manifest", str(markor_dir / "manifest.json"),
        "--tech", "rvsm,tfidf",
        "--configs", ",".join(configs),
        "--out", str(out),
    ])
    assert rc == 0
    return {
        tech: json.loads((out / f"report_{tech}.json").read_text())
        for tech in ("rvsm", "tfidf")
    }


def test_run_matches_golden_file(golden, run_reports):
    checked = 0
    for (tech, config), row in golden.items():
        report = run_reports[tech]
        if config == "baseline":
            first = report["baseline"]["first_ranks"]["markor-1"]
            hits = None
        else:
            entry = report["configs"][config]
            first = entry["first_ranks"]["markor-1"]
            hits = entry["hits"]
        expected = int(row["first_rank"])
        assert (first or 0) == expected, (tech, config)
        if hits is not None:
            assert hits["c1"] == int(row["hit1"]), (tech, config)
            assert hits["c5"] == int(row["hit5"]), (tech, config)
            assert hits["c10"] == int(row["hit10"]), (tech, config)
        checked += 1
    assert checked == 22
