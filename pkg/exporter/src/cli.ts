#!/usr/bin/env node
/**
 * guiloc-export: write embedding stores for the guiloc ranker.
 *
 *   export --manifest M --model NAME --max-tokens N --out F [--texts J] [--python BIN]
 *
 * With one bug in the manifest, --out is the store file; with several, it
 * is a directory receiving <bug_id>.embstore files. Texts are obtained by
 * running `guiloc embed-inputs` unless --texts points at an existing file.
 * Models: hash-<d> (built-in, deterministic) or any @xenova/transformers
 * feature-extraction model. Exit codes: 0 ok, 1 usage error, 2 runtime
 * failure (e.g. the model cannot be loaded).
 */

import { loadEmbedder } from "./embed.js";
import { inputsFromManifest, loadInputsFile } from "./inputs.js";
import { runExport } from "./export.js";

interface Args {
  manifest?: string;
  texts?: string;
  model: string;
  maxTokens: number;
  out?: string;
  python: string;
}

export class UsageError extends Error {}

export function parseArgs(argv: string[]): Args {
  if (argv[0] !== "export") {
    throw new UsageError("usage: guiloc-export export --manifest M --model NAME --max-tokens N --out F");
  }
  const args: Args = { model: "hash-256", maxTokens: 510, python: "python3" };
  for (let i = 1; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (value === undefined) {
      throw new UsageError(`missing value for ${flag}`);
    }
    switch (flag) {
      case "--manifest":
        args.manifest = value;
        break;
      case "--texts":
        args.texts = value;
        break;
      case "--model":
        args.model = value;
        break;
      case "--max-tokens": {
        const n = parseInt(value, 10);
        if (!Number.isInteger(n) || n < 1) {
          throw new UsageError(`--max-tokens must be a positive integer, got ${value}`);
        }
        args.maxTokens = n;
        break;
      }
      case "--out":
        args.out = value;
        break;
      case "--python":
        args.python = value;
        break;
      default:
        throw new UsageError(`unknown flag ${flag}`);
    }
  }
  if (!args.out) {
    throw new UsageError("--out is required");
  }
  if (!args.manifest && !args.texts) {
    throw new UsageError("either --manifest or --texts is required");
  }
  return args;
}

export async function main(argv: string[]): Promise<number> {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
  try {
    const inputs = args.texts
      ? loadInputsFile(args.texts)
      : inputsFromManifest(args.manifest as string, args.python);
    const embedder = await loadEmbedder(args.model);
    const result = await runExport({
      inputs,
      embedder,
      maxTokens: args.maxTokens,
      outPath: args.out as string,
    });
    for (const warning of result.warnings) {
      console.error(`warning: ${warning}`);
    }
    for (const [bugId, path] of Object.entries(result.written)) {
      console.error(`wrote ${bugId} -> ${path} (model ${embedder.model}, d=${embedder.dim})`);
    }
    return 0;
  } catch (err) {
    console.error(`export failed: ${(err as Error).message}`);
    return 2;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url === `file://${process.argv[1]}`;
if (invokedDirectly) {
  main(process.argv.slice(2)).then((code) => {
    process.exitCode = code;
  });
}
