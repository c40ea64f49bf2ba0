"""Dataset manifest: one JSON file describing the bugs under evaluation.

Schema (paths are resolved relative to the manifest file):

    {
      "bugs": [
        {
          "bug_id": "markor-1",
          "app_id": "markor",
          "corpus_root": "corpus",
          "report_path": "report.txt",
          "truth_paths": ["app/src/NewFileDialog.java"],
          "scenario_dir": "scenario",
          "embedding_store_path": "markor-1.embstore"   // optional
        }
      ]
    }
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path


class ManifestError(Exception):
    """Raised when the manifest is malformed or references missing paths."""


_REQUIRED = ("bug_id", "app_id", "corpus_root", "report_path", "truth_paths", "scenario_dir")


@dataclass(frozen=True)
class BugEntry:
    bug_id: str
    app_id: str
    corpus_root: Path
    report_path: Path
    truth_paths: tuple[str, ...]
    scenario_dir: Path
    embedding_store_path: Path | None = None


def load_manifest(path: str | Path) -> list[BugEntry]:
    """Load and validate the manifest; every referenced path must exist."""
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ManifestError(f"cannot read manifest: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ManifestError(f"manifest is not valid JSON: {exc}") from None

    if not isinstance(data, dict) or not isinstance(data.get("bugs"), list):
        raise ManifestError('manifest must be an object with a "bugs" array')
    if not data["bugs"]:
        raise ManifestError("manifest lists no bugs")

    base = path.parent
    entries: list[BugEntry] = []
    seen: set[str] = set()
    for i, raw in enumerate(data["bugs"]):
        if not isinstance(raw, dict):
            raise ManifestError(f"bugs[{i}] is not an object")
        missing = [k for k in _REQUIRED if k not in raw]
        if missing:
            raise ManifestError(f"bugs[{i}] missing fields: {missing}")
        bug_id = str(raw["bug_id"])
        if bug_id in seen:
            raise ManifestError(f"duplicate bug_id {bug_id!r}")
        seen.add(bug_id)

        corpus_root = base / raw["corpus_root"]
        report_path = base / raw["report_path"]
        scenario_dir = base / raw["scenario_dir"]
        if not corpus_root.is_dir():
            raise ManifestError(f"{bug_id}: corpus_root {corpus_root} is not a directory")
        if not report_path.is_file():
            raise ManifestError(f"{bug_id}: report {report_path} not found")
        if not scenario_dir.is_dir():
            raise ManifestError(f"{bug_id}: scenario_dir {scenario_dir} not found")

        truth = raw["truth_paths"]
        if not isinstance(truth, list) or not truth:
            raise ManifestError(f"{bug_id}: truth_paths must be a non-empty list")
        for rel in truth:
            if not (corpus_root / rel).is_file():
                raise ManifestError(f"{bug_id}: truth file {rel} not in corpus")

        store = raw.get("embedding_store_path")
        store_path = None
        if store is not None:
            store_path = base / store
            if not store_path.is_file():
                raise ManifestError(f"{bug_id}: embedding store {store_path} not found")

        entries.append(
            BugEntry(
                bug_id=bug_id,
                app_id=str(raw["app_id"]),
                corpus_root=corpus_root,
                report_path=report_path,
                truth_paths=tuple(str(t) for t in truth),
                scenario_dir=scenario_dir,
                embedding_store_path=store_path,
            )
        )
    return entries
