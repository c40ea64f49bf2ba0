/**
 * Preprocessed texts come from the core's `guiloc embed-inputs` command:
 * per-app document texts plus per-bug query texts (the original report and
 * every reformulation variant, already keyed `query:<bug>[/<variant>]`).
 */

import { spawnSync } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

export interface EmbedInputs {
  version: number;
  corpora: Record<string, { documents: Record<string, string> }>;
  bugs: Record<string, { app_id: string; queries: Record<string, string> }>;
}

export function parseInputs(text: string): EmbedInputs {
  const doc = JSON.parse(text);
  if (doc.version !== 1 || typeof doc.corpora !== "object" || typeof doc.bugs !== "object") {
    throw new Error("unrecognized embed-inputs document (want version 1 with corpora/bugs)");
  }
  return doc as EmbedInputs;
}

export function loadInputsFile(path: string): EmbedInputs {
  return parseInputs(readFileSync(path, "utf-8"));
}

/** Run the core CLI to produce the inputs JSON for a manifest. */
export function inputsFromManifest(manifestPath: string, python = "python3"): EmbedInputs {
  const workDir = mkdtempSync(join(tmpdir(), "guiloc-export-"));
  const outPath = join(workDir, "inputs.json");
  try {
    const result = spawnSync(
      python,
      ["-m", "guiloc", "embed-inputs", "--manifest", manifestPath, "--out", outPath],
      { encoding: "utf-8" }
    );
    if (result.error) {
      throw new Error(`cannot run ${python}: ${result.error.message}`);
    }
    if (result.status !== 0) {
      throw new Error(
        `guiloc embed-inputs failed (exit ${result.status}): ${result.stderr.trim()}`
      );
    }
    return loadInputsFile(outPath);
  } finally {
    rmSync(workDir, { recursive: true, force: true });
  }
}
