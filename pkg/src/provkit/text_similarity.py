"""Fact verification against a trusted-article corpus.

Pipeline: BM25 retrieval over each article's title plus first ten
sentences (long-document guard), low-subjectivity sentence extraction,
then cosine matching of sentence embeddings between the query article's
facts and all facts of the retrieved articles.

The embedder is deliberately model-free: character trigrams hashed into
a fixed number of buckets and L2-normalized. It lives behind the
``Embedder`` protocol so a learned sentence encoder can be dropped in.
"""

from __future__ import annotations

import math
import zlib
from dataclasses import dataclass, field
from typing import Protocol

from .bm25 import Bm25Index, Bm25Params
from .errors import CorpusIndexError
from .textutil import split_sentences, tokenize

LEAD_SENTENCES = 10


class Embedder(Protocol):
    dim: int

    def embed(self, text: str) -> list[float]: ...


class TrigramEmbedder:
    """Hashed character-trigram embedding, unit L2 norm, 256 buckets.

    Trigrams are taken over the token-joined lowercase text so that
    punctuation and whitespace variants embed identically. Inputs too
    short for a trigram hash the whole normalized string into one
    bucket; the empty string maps to bucket 0. The result is always a
    unit vector.
    """

    def __init__(self, dim: int = 256) -> None:
        self.dim = dim

    def embed(self, text: str) -> list[float]:
        normalized = " ".join(tokenize(text))
        vec = [0.0] * self.dim
        if len(normalized) >= 3:
            for i in range(len(normalized) - 2):
                bucket = zlib.crc32(normalized[i : i + 3].encode("utf-8")) % self.dim
                vec[bucket] += 1.0
        elif normalized:
            vec[zlib.crc32(normalized.encode("utf-8")) % self.dim] = 1.0
        else:
            vec[0] = 1.0
        norm = math.sqrt(sum(x * x for x in vec))
        return [x / norm for x in vec]


def cosine(u: list[float], v: list[float]) -> float:
    return sum(a * b for a, b in zip(u, v))


class SubjectivityLexicon:
    """Term -> subjectivity weight map loaded from a TSV file.

    A sentence's subjectivity is the mean weight of its matched tokens;
    sentences with no lexicon hits score 0 and are treated as factual.
    """

    def __init__(self, weights: dict[str, float]) -> None:
        self.weights = weights

    @classmethod
    def load(cls, path) -> "SubjectivityLexicon":
        weights: dict[str, float] = {}
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                term, weight = line.split("\t")
                weights[term.lower()] = float(weight)
        return cls(weights)

    def score(self, sentence: str) -> float:
        hits = [self.weights[t] for t in tokenize(sentence) if t in self.weights]
        if not hits:
            return 0.0
        return sum(hits) / len(hits)


@dataclass
class FactSentence:
    text: str
    subjectivity: float
    embedding: list[float]


@dataclass
class TrustedArticle:
    doc_id: str
    title: str
    lead: list[str]
    full_facts: list[FactSentence]


@dataclass
class SimilarityThresholds:
    tau_subj: float = 0.3
    tau_sim: float = 0.75
    tau_ratio: float = 0.5
    min_facts: int = 3


@dataclass
class FactMatch:
    query_fact: str
    best_match: str
    best_doc_id: str
    cosine: float
    verified: bool


@dataclass
class SimilarityVerdict:
    total_facts: int
    verified_facts: int
    ratio: float
    matches: list[FactMatch] = field(default_factory=list)
    status: str = "pass"
    score: float = 0.0
    retrieved: list[str] = field(default_factory=list)
    note: str = ""


def lead_text(title: str, body: str) -> str:
    """Title plus the first ten sentences of the body."""
    return " ".join([title] + split_sentences(body)[:LEAD_SENTENCES])


class TextSimilarityDetector:
    def __init__(
        self,
        lexicon: SubjectivityLexicon,
        embedder: Embedder | None = None,
        params: Bm25Params | None = None,
        thresholds: SimilarityThresholds | None = None,
    ) -> None:
        self.lexicon = lexicon
        self.embedder = embedder or TrigramEmbedder()
        self.params = params or Bm25Params()
        self.thresholds = thresholds or SimilarityThresholds()
        self.index = Bm25Index()
        self.articles: dict[str, TrustedArticle] = {}
        self._fingerprints: dict[str, tuple[str, str]] = {}

    def extract_facts(self, text: str, tau_subj: float | None = None) -> list[FactSentence]:
        tau = self.thresholds.tau_subj if tau_subj is None else tau_subj
        facts = []
        for sentence in split_sentences(text):
            subj = self.lexicon.score(sentence)
            if subj <= tau:
                facts.append(FactSentence(sentence, subj, self.embedder.embed(sentence)))
        return facts

    def index_article(self, doc_id: str, title: str, body: str) -> TrustedArticle:
        """Index title + lead for retrieval and precompute full-body facts.

        Re-indexing the identical article is a no-op; the same doc_id
        with different content is rejected.
        """
        if not body:
            raise CorpusIndexError(f"{doc_id}: empty body")
        if doc_id in self.articles:
            if self._fingerprints[doc_id] != (title, body):
                raise CorpusIndexError(f"{doc_id}: doc_id already indexed with different content")
            return self.articles[doc_id]
        lead = split_sentences(body)[:LEAD_SENTENCES]
        article = TrustedArticle(
            doc_id=doc_id,
            title=title,
            lead=lead,
            full_facts=self.extract_facts(body),
        )
        self.index.add(doc_id, " ".join([title] + lead))
        self.articles[doc_id] = article
        self._fingerprints[doc_id] = (title, body)
        return article

    def search(self, query_text: str, params: Bm25Params | None = None) -> list[tuple[str, float]]:
        return self.index.search(query_text, params or self.params)

    def verify(
        self,
        title: str,
        body: str,
        params: Bm25Params | None = None,
        thresholds: SimilarityThresholds | None = None,
    ) -> SimilarityVerdict:
        """Check how much of the query article's factual content is covered
        by retrieved trusted articles."""
        params = params or self.params
        th = thresholds or self.thresholds

        retrieved = self.search(lead_text(title, body), params)
        retrieved_ids = [doc_id for doc_id, _ in retrieved]
        query_facts = self.extract_facts(body, th.tau_subj)

        if len(query_facts) < th.min_facts or not retrieved_ids:
            reason = "too few extractable facts" if len(query_facts) < th.min_facts else "no similar trusted articles"
            return SimilarityVerdict(
                total_facts=len(query_facts),
                verified_facts=0,
                ratio=0.0,
                status="unavailable",
                score=0.0,
                retrieved=retrieved_ids,
                matches=[],
                note=reason,
            )

        candidates: list[tuple[str, FactSentence]] = []
        for doc_id in retrieved_ids:
            for fact in self.articles[doc_id].full_facts:
                candidates.append((doc_id, fact))

        matches: list[FactMatch] = []
        verified = 0
        for qf in query_facts:
            best_cos = -1.0
            best_text = ""
            best_doc = ""
            for doc_id, cf in candidates:
                c = cosine(qf.embedding, cf.embedding)
                if c > best_cos:
                    best_cos, best_text, best_doc = c, cf.text, doc_id
            ok = best_cos >= th.tau_sim
            verified += ok
            matches.append(FactMatch(qf.text, best_text, best_doc, best_cos, ok))

        ratio = verified / len(query_facts)
        caution = ratio < th.tau_ratio
        return SimilarityVerdict(
            total_facts=len(query_facts),
            verified_facts=verified,
            ratio=ratio,
            matches=matches,
            status="caution" if caution else "pass",
            score=(th.tau_ratio - ratio) / th.tau_ratio if caution else 0.0,
            retrieved=retrieved_ids,
        )
