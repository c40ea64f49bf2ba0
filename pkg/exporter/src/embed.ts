/**
 * Embedding backends. `hash-<d>` is a deterministic feature-hashing model
 * that works offline and is the one exercised by the test suite; any other
 * model name is treated as a transformer model and loaded dynamically via
 * @xenova/transformers when that package is installed.
 */

import { segmentTokens, whitespaceTokens } from "./segment.js";

export interface Embedder {
  /** Model identifier, echoed into logs. */
  readonly model: string;
  readonly dim: number;
  /** Split text with the model's own tokenizer and chunk to maxTokens. */
  segment(text: string, maxTokens: number): Promise<string[]>;
  /** One unit-norm vector for a single segment. */
  embed(segment: string): Promise<number[]>;
}

/** 32-bit FNV-1a hash; stable across platforms. */
export function fnv1a(text: string): number {
  let h = 0x811c9dc5;
  for (let i = 0; i < text.length; i++) {
    h ^= text.charCodeAt(i);
    h = Math.imul(h, 0x01000193) >>> 0;
  }
  return h >>> 0;
}

const HASH_TAPS = 4;

export function normalize(vector: number[]): number[] {
  const norm = Math.sqrt(vector.reduce((acc, x) => acc + x * x, 0));
  if (norm === 0) {
    const unit = vector.slice();
    unit[0] = 1;
    return unit;
  }
  return vector.map((x) => x / norm);
}

/**
 * Feature-hashing sentence embedder: each token contributes +-1 at a few
 * hashed coordinates; the summed vector is L2-normalized. Deterministic,
 * so re-exports are bit-identical.
 */
export class HashEmbedder implements Embedder {
  readonly model: string;
  readonly dim: number;

  constructor(dim: number) {
    if (!Number.isInteger(dim) || dim < 2) {
      throw new Error(`hash embedder dimension must be an integer >= 2, got ${dim}`);
    }
    this.model = `hash-${dim}`;
    this.dim = dim;
  }

  async segment(text: string, maxTokens: number): Promise<string[]> {
    return segmentTokens(whitespaceTokens(text), maxTokens).map((seg) => seg.join(" "));
  }

  async embed(segment: string): Promise<number[]> {
    const vector = new Array<number>(this.dim).fill(0);
    for (const token of whitespaceTokens(segment)) {
      for (let tap = 0; tap < HASH_TAPS; tap++) {
        const h = fnv1a(`${token}#${tap}`);
        const index = h % this.dim;
        const sign = (h & 0x80000000) === 0 ? 1 : -1;
        vector[index] += sign;
      }
    }
    return normalize(vector);
  }
}

/** Transformer-backed embedder; requires @xenova/transformers at runtime. */
class TransformerEmbedder implements Embedder {
  readonly model: string;
  readonly dim: number;
  private readonly pipe: any;
  private readonly tokenizer: any;

  private constructor(model: string, dim: number, pipe: any, tokenizer: any) {
    this.model = model;
    this.dim = dim;
    this.pipe = pipe;
    this.tokenizer = tokenizer;
  }

  static async load(model: string): Promise<TransformerEmbedder> {
    let transformers: any;
    try {
      // optional dependency, resolved only at runtime
      // @ts-ignore
      transformers = await import("@xenova/transformers");
    } catch {
      throw new Error(
        `model "${model}": @xenova/transformers is not installed; ` +
          "use a hash-<d> model or install the package"
      );
    }
    const pipe = await transformers.pipeline("feature-extraction", model);
    const probe = await pipe("probe", { pooling: "mean", normalize: true });
    const dim = probe.data.length;
    return new TransformerEmbedder(model, dim, pipe, pipe.tokenizer);
  }

  async segment(text: string, maxTokens: number): Promise<string[]> {
    const ids: number[] = Array.from(this.tokenizer(text).input_ids.data).map(Number);
    return segmentTokens(ids, maxTokens).map((chunk) =>
      this.tokenizer.decode(chunk, { skip_special_tokens: true })
    );
  }

  async embed(segment: string): Promise<number[]> {
    const result = await this.pipe(segment, { pooling: "mean", normalize: true });
    return normalize(Array.from(result.data as Float32Array));
  }
}

export async function loadEmbedder(model: string): Promise<Embedder> {
  const hashMatch = /^hash-(\d+)$/.exec(model);
  if (hashMatch) {
    return new HashEmbedder(parseInt(hashMatch[1], 10));
  }
  return TransformerEmbedder.load(model);
}
