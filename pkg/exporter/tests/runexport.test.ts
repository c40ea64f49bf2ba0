import { mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { describe, expect, it } from "vitest";

import { HashEmbedder } from "../src/embed.js";
import { EmbedInputs, parseInputs } from "../src/inputs.js";
import { runExport } from "../src/export.js";
import { parseStore } from "../src/store.js";

function inputs(): EmbedInputs {
  return {
    version: 1,
    corpora: {
      app: {
        documents: {
          "src/A.java": "alpha beta gamma delta",
          "src/Empty.java": "",
          "src/B.java": Array.from({ length: 25 }, (_, i) => `tok${i}`).join(" "),
        },
      },
    },
    bugs: {
      "bug-1": { app_id: "app", queries: { "query:bug-1": "alpha crash report" } },
    },
  };
}

describe("runExport", () => {
  it("skips empty documents with a warning", async () => {
    const work = mkdtempSync(join(tmpdir(), "runexport-"));
    const out = join(work, "store.embstore");
    const result = await runExport({
      inputs: inputs(),
      embedder: new HashEmbedder(16),
      maxTokens: 10,
      outPath: out,
    });
    expect(result.warnings).toHaveLength(1);
    expect(result.warnings[0]).toContain("src/Empty.java");

    const store = parseStore(readFileSync(out, "utf-8"));
    const paths = new Set(store.records.map((r) => r.path));
    expect(paths.has("src/Empty.java")).toBe(false);
    // 25 tokens at maxTokens=10 -> 3 segments
    expect(store.records.filter((r) => r.path === "src/B.java")).toHaveLength(3);
    expect(store.records.filter((r) => r.path === "query:bug-1")).toHaveLength(1);
  });

  it("writes one store per bug for multi-bug inputs", async () => {
    const multi = inputs();
    multi.bugs["bug-2"] = { app_id: "app", queries: { "query:bug-2": "beta hang" } };
    const work = mkdtempSync(join(tmpdir(), "runexport-multi-"));
    const result = await runExport({
      inputs: multi,
      embedder: new HashEmbedder(16),
      maxTokens: 10,
      outPath: work,
    });
    expect(Object.keys(result.written).sort()).toEqual(["bug-1", "bug-2"]);
    for (const bugId of ["bug-1", "bug-2"]) {
      const store = parseStore(readFileSync(join(work, `${bugId}.embstore`), "utf-8"));
      const queries = store.records.filter((r) => r.path.startsWith("query:"));
      expect(queries).toHaveLength(1);
      expect(queries[0].path).toBe(`query:${bugId}`);
    }
  });

  it("rejects malformed inputs documents", () => {
    expect(() => parseInputs("{}")).toThrow(/version 1/);
    expect(() => parseInputs('{"version": 2, "corpora": {}, "bugs": {}}')).toThrow();
  });
});
