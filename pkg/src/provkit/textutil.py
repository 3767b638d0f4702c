"""Shared text primitives: tokenizer and sentence splitter.

Every text analyzer uses the same tokenizer so that token counts,
densities and lexicon lookups agree across criteria.
"""

from __future__ import annotations

import re

# Unicode alphanumeric runs, underscore excluded, no stemming.
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)

# Sentence boundary: terminal punctuation, whitespace, then an
# uppercase letter or digit.
_BOUNDARY_RE = re.compile(r"[.!?]+(?=\s+[A-Z0-9])")

# Tokens that end with '.' without closing a sentence. Compared
# lowercased with trailing dots stripped ("U.S." -> "u.s").
ABBREVIATIONS = frozenset({"mr", "mrs", "ms", "dr", "prof", "u.s", "e.g", "i.e", "etc", "vs"})

_LAST_WORD_RE = re.compile(r"[\w.]+$", re.UNICODE)


def tokenize(text: str) -> list[str]:
    """Lowercase word tokens."""
    return _TOKEN_RE.findall(text.lower())


def tokenize_cased(text: str) -> list[str]:
    """Word tokens with original casing (used for all-caps detection)."""
    return _TOKEN_RE.findall(text)


def _is_abbreviation(prefix: str) -> bool:
    m = _LAST_WORD_RE.search(prefix)
    if not m:
        return False
    word = m.group(0).rstrip(".").lower()
    return word in ABBREVIATIONS


def split_sentences(text: str) -> list[str]:
    """Split text into sentences.

    A boundary is terminal punctuation ([.!?]) followed by whitespace and
    an uppercase letter or digit, unless the punctuation terminates a
    known abbreviation. Trailing text without terminal punctuation counts
    as a final sentence.
    """
    sentences: list[str] = []
    start = 0
    for m in _BOUNDARY_RE.finditer(text):
        if _is_abbreviation(text[start : m.end()]):
            continue
        sentences.append(text[start : m.end()].strip())
        start = m.end()
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return [s for s in sentences if s]
