/**
 * Token segmentation: chunk a token sequence into contiguous pieces of at
 * most maxTokens each. Every segment except possibly the last is full, and
 * the concatenation of the segments equals the input.
 */
export function segmentTokens<T>(tokens: T[], maxTokens: number): T[][] {
  if (maxTokens < 1) {
    throw new Error(`maxTokens must be >= 1, got ${maxTokens}`);
  }
  const segments: T[][] = [];
  for (let i = 0; i < tokens.length; i += maxTokens) {
    segments.push(tokens.slice(i, i + maxTokens));
  }
  return segments;
}

/** Whitespace tokenizer used by the hash embedder. */
export function whitespaceTokens(text: string): string[] {
  return text.split(/\s+/).filter((t) => t.length > 0);
}

export function expectedSegmentCount(tokenCount: number, maxTokens: number): number {
  return Math.ceil(tokenCount / maxTokens);
}
