"""Preprocessing walkthrough: from raw text to retrieval tokens.

Bug reports and source files share one pipeline: split on punctuation,
split camelCase, strip digits, lowercase, drop 1-2 character tokens and
Java keywords.
"""

from guiloc import preprocess_text, segment_tokens

snippets = [
    "NewFileDialog",
    "public class TodoTxtHighlighter123 extends Highlighter {}",
    "setXMLHttpOk ab x1",
    "The file picker resets to Markdown when reopening a note.",
    "fab_add new_file_format_spinner",
]

for raw in snippets:
    print(f"{raw!r}")
    print(f"    -> {preprocess_text(raw)}")

# Long documents are chunked into fixed-size segments for embedding models.
tokens = preprocess_text(" ".join(f"token{i} filler" for i in range(600)))
segments = segment_tokens(tokens, 510)
print(f"\n{len(tokens)} tokens -> segments of sizes {[len(s) for s in segments]}")
