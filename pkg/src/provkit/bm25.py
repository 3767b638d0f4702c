"""BM25 inverted index over small trusted corpora.

Scoring follows the classic Okapi form:

    score(q, d) = sum over query terms t of
        idf(t) * tf * (k1 + 1) / (tf + k1 * (1 - b + b * |d| / avgdl))

    idf(t) = ln(1 + (N - df + 0.5) / (df + 0.5))

Results are ordered by descending score, ties broken by ascending doc_id.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .textutil import tokenize


@dataclass
class Bm25Params:
    k1: float = 1.2
    b: float = 0.75
    top_k: int = 10

    def __post_init__(self) -> None:
        if self.k1 <= 0:
            raise ValueError("k1 must be > 0")
        if not 0.0 <= self.b <= 1.0:
            raise ValueError("b must be in [0,1]")


class Bm25Index:
    """Incremental inverted index; documents are added once by doc_id."""

    def __init__(self) -> None:
        self._term_freqs: dict[str, Counter[str]] = {}
        self._doc_lens: dict[str, int] = {}
        self._df: Counter[str] = Counter()

    def __len__(self) -> int:
        return len(self._doc_lens)

    def __contains__(self, doc_id: str) -> bool:
        return doc_id in self._doc_lens

    def add(self, doc_id: str, text: str) -> None:
        if doc_id in self._doc_lens:
            raise KeyError(f"doc_id already indexed: {doc_id}")
        tokens = tokenize(text)
        tf = Counter(tokens)
        self._term_freqs[doc_id] = tf
        self._doc_lens[doc_id] = len(tokens)
        for term in tf:
            self._df[term] += 1

    def search(self, query_text: str, params: Bm25Params | None = None) -> list[tuple[str, float]]:
        """Ranked (doc_id, score) pairs for documents sharing a query term."""
        params = params or Bm25Params()
        n_docs = len(self._doc_lens)
        if n_docs == 0:
            return []
        avgdl = sum(self._doc_lens.values()) / n_docs
        query_terms = tokenize(query_text)

        scores: dict[str, float] = {}
        for doc_id, tf in self._term_freqs.items():
            dl = self._doc_lens[doc_id]
            norm = params.k1 * (1.0 - params.b + params.b * dl / avgdl)
            s = 0.0
            for term in query_terms:
                f = tf.get(term)
                if not f:
                    continue
                df = self._df[term]
                idf = math.log(1.0 + (n_docs - df + 0.5) / (df + 0.5))
                s += idf * (f * (params.k1 + 1.0)) / (f + norm)
            if s > 0.0:
                scores[doc_id] = s

        ranked = sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))
        return ranked[: params.top_k]
