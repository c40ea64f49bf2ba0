"""Text preprocessing shared by queries and source documents.

Both bug reports and source files go through the same pipeline: split on
anything that is not an ASCII letter or digit, split camelCase identifiers,
strip digits, lowercase, drop very short tokens, and drop Java keywords.
"""

from __future__ import annotations

import re

# Java SE 8 reserved words (50) plus the literals true/false/null.
JAVA_KEYWORDS = frozenset(
    """
    abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package
    private protected public return short static strictfp super switch
    synchronized this throw throws transient try void volatile while
    true false null
    """.split()
)

MIN_TOKEN_LEN = 3

# Runs of ASCII letters/digits; everything else is a separator.
_WORD_RE = re.compile(r"[A-Za-z0-9]+")
# lower->Upper boundary (getFoo -> get|Foo).
_CAMEL_LOWER_UPPER = re.compile(r"(?<=[a-z])(?=[A-Z])")
# Acronym boundary: last capital of a run that starts a capitalized word
# (XMLHttp -> XML|Http).
_CAMEL_ACRONYM = re.compile(r"(?<=[A-Z])(?=[A-Z][a-z])")
_DIGITS = re.compile(r"[0-9]+")


def split_camel_case(word: str) -> list[str]:
    """Split a single word at camelCase and acronym boundaries."""
    word = _CAMEL_LOWER_UPPER.sub(" ", word)
    word = _CAMEL_ACRONYM.sub(" ", word)
    return word.split()


def preprocess_text(raw: str) -> list[str]:
    """Turn raw text into the normalized token list used for retrieval.

    Pipeline, in order: split on whitespace/punctuation/special characters,
    split camelCase boundaries (compounds are replaced by their splits),
    strip digits, lowercase, drop tokens shorter than 3 characters, drop
    Java keywords. Empty input yields an empty list.
    """
    tokens: list[str] = []
    for word in _WORD_RE.findall(raw):
        for piece in split_camel_case(word):
            piece = _DIGITS.sub("", piece).lower()
            if len(piece) < MIN_TOKEN_LEN:
                continue
            if piece in JAVA_KEYWORDS:
                continue
            tokens.append(piece)
    return tokens


def segment_tokens(tokens: list[str], max_len: int) -> list[list[str]]:
    """Chunk a token list into contiguous segments of at most max_len tokens.

    All segments except possibly the last have exactly max_len tokens, and
    their concatenation equals the input. An empty input yields no segments.
    """
    if max_len < 1:
        raise ValueError(f"max_len must be >= 1, got {max_len}")
    return [tokens[i : i + max_len] for i in range(0, len(tokens), max_len)]
