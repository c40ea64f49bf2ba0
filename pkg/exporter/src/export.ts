/**
 * Export job: segment every rankable document and every query text with the
 * model's tokenizer, embed each segment, and write one store per bug.
 */

import { mkdirSync, writeFileSync } from "node:fs";
import { dirname, join } from "node:path";

import { Embedder } from "./embed.js";
import { EmbedInputs } from "./inputs.js";
import { formatStore, StoreRecord } from "./store.js";

export interface ExportJob {
  inputs: EmbedInputs;
  embedder: Embedder;
  maxTokens: number;
  outPath: string;
}

export interface ExportResult {
  /** bug_id -> written store file path */
  written: Record<string, string>;
  warnings: string[];
}

async function recordsFor(
  embedder: Embedder,
  maxTokens: number,
  path: string,
  text: string,
  warnings: string[]
): Promise<StoreRecord[]> {
  const segments = await embedder.segment(text, maxTokens);
  if (segments.length === 0) {
    warnings.push(`${path}: empty text, no records emitted`);
    return [];
  }
  const records: StoreRecord[] = [];
  for (let i = 0; i < segments.length; i++) {
    records.push({ path, segmentIndex: i, vector: await embedder.embed(segments[i]) });
  }
  return records;
}

export async function runExport(job: ExportJob): Promise<ExportResult> {
  const { inputs, embedder, maxTokens } = job;
  if (maxTokens < 1) {
    throw new Error(`max-tokens must be >= 1, got ${maxTokens}`);
  }
  const bugIds = Object.keys(inputs.bugs).sort();
  if (bugIds.length === 0) {
    throw new Error("no bugs in the embed inputs");
  }

  const warnings: string[] = [];
  // document records are shared between bugs of the same app
  const perApp = new Map<string, StoreRecord[]>();
  for (const [appId, corpus] of Object.entries(inputs.corpora)) {
    const records: StoreRecord[] = [];
    for (const path of Object.keys(corpus.documents).sort()) {
      records.push(
        ...(await recordsFor(embedder, maxTokens, path, corpus.documents[path], warnings))
      );
    }
    perApp.set(appId, records);
  }

  const singleFile = bugIds.length === 1;
  const written: Record<string, string> = {};
  for (const bugId of bugIds) {
    const bug = inputs.bugs[bugId];
    const docRecords = perApp.get(bug.app_id);
    if (!docRecords) {
      throw new Error(`bug ${bugId}: no corpus texts for app ${bug.app_id}`);
    }
    const records = [...docRecords];
    for (const key of Object.keys(bug.queries).sort()) {
      records.push(...(await recordsFor(embedder, maxTokens, key, bug.queries[key], warnings)));
    }
    const target = singleFile ? job.outPath : join(job.outPath, `${bugId}.embstore`);
    mkdirSync(singleFile ? dirname(target) || "." : job.outPath, { recursive: true });
    writeFileSync(target, formatStore(embedder.dim, records), "utf-8");
    written[bugId] = target;
  }
  return { written, warnings };
}
