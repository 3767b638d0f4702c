"""Wires the configured platform together.

The Stack owns every long-lived component: ledger, media index, trusted
corpus detector, analyzers, workflow, registrar, knowledge graph, user
store and query service, all rooted under one data directory.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import httpx

from .analyzers import (
    MediaManipulationAnalyzer,
    MediaReuseAnalyzer,
    TextSimilarityAnalyzer,
    ToneAnalyzer,
    WritingQualityAnalyzer,
)
from .bm25 import Bm25Params
from .companion import Presenter, UserStore
from .config import Config
from .errors import CorpusIndexError
from .ingestion import Registrar
from .knowledge_graph import TripleStore
from .ledger import BlobStore, Ledger
from .media_analysis import MediaIndex
from .query_service import QueryService
from .text_similarity import SimilarityThresholds, SubjectivityLexicon, TextSimilarityDetector
from .tone import EmotionLexicon, ToneThresholds
from .workflow import HttpDispatcher, InProcessDispatcher, WorkflowHandler
from .writing_quality import LowQualityTerms, WqsConfig


def _data_path(name: str) -> Path:
    return Path(str(resources.files("provkit").joinpath("data", name)))


@dataclass
class Stack:
    config: Config
    blob_store: BlobStore
    ledger: Ledger
    store: TripleStore
    media_index: MediaIndex
    detector: TextSimilarityDetector
    analyzers: dict[str, object]
    workflow: WorkflowHandler
    registrar: Registrar
    user_store: UserStore
    presenter: Presenter
    queries: QueryService

    def index_corpus_dir(self, corpus_dir: str | Path) -> int:
        """Load a directory of trusted article JSON files ({doc_id, title,
        body}) into the similarity index; returns articles indexed."""
        count = 0
        paths = sorted(Path(corpus_dir).glob("*.json"))
        if not paths:
            raise CorpusIndexError(f"no article JSON files in {corpus_dir}")
        for path in paths:
            doc = json.loads(path.read_text(encoding="utf-8"))
            self.detector.index_article(doc["doc_id"], doc.get("title", ""), doc["body"])
            count += 1
        return count


def build_stack(config: Config) -> Stack:
    data_dir = config.data_dir
    data_dir.mkdir(parents=True, exist_ok=True)

    blob_store = BlobStore(data_dir / "blobs")
    ledger = Ledger(data_dir / "chain.ndjson", blob_store)
    store = TripleStore(data_dir / "kg.nt")
    media_index = MediaIndex(data_dir / "media_index")

    subj_path = config.get("text_similarity.lexicon_path") or _data_path("lexicons/subjectivity.tsv")
    tone_path = config.get("tone.lexicon_path") or _data_path("lexicons/emotions.tsv")
    terms_path = config.get("writing_quality.terms_path") or _data_path(
        "lexicons/low_quality_terms.txt"
    )
    templates_dir = config.get("companion.templates_dir") or _data_path("templates")

    detector = TextSimilarityDetector(
        lexicon=SubjectivityLexicon.load(subj_path),
        params=Bm25Params(
            k1=config.get("text_similarity.k1"),
            b=config.get("text_similarity.b"),
            top_k=config.get("text_similarity.top_k"),
        ),
        thresholds=SimilarityThresholds(
            tau_subj=config.get("text_similarity.tau_subj"),
            tau_sim=config.get("text_similarity.tau_sim"),
            tau_ratio=config.get("text_similarity.tau_ratio"),
            min_facts=config.get("text_similarity.min_facts"),
        ),
    )
    tone_thresholds = ToneThresholds(
        fear=config.get("tone.thresholds.fear"),
        anger=config.get("tone.thresholds.anger"),
        sadness=config.get("tone.thresholds.sadness"),
        doubt=config.get("tone.thresholds.doubt"),
        joy=config.get("tone.thresholds.joy"),
        min_tokens=config.get("tone.min_tokens"),
    )
    band = config.get("writing_quality.grade_band")
    wqs_config = WqsConfig(
        threshold=config.get("writing_quality.threshold"),
        min_tokens=config.get("writing_quality.min_tokens"),
        grade_band=(band[0], band[1]),
    )
    stride = config.get("media.keyframe_stride")
    analyzers = {
        "text_similarity": TextSimilarityAnalyzer(detector),
        "tone": ToneAnalyzer(EmotionLexicon.load(tone_path), tone_thresholds),
        "writing_quality": WritingQualityAnalyzer(LowQualityTerms.load(terms_path), wqs_config),
        "media_reuse": MediaReuseAnalyzer(
            media_index,
            blob_store.get,
            keyframe_stride=stride,
            delta_max=config.get("media.delta_max"),
        ),
        "media_manipulation": MediaManipulationAnalyzer(
            media_index,
            blob_store.get,
            keyframe_stride=stride,
            delta_match=config.get("media.delta_match"),
            block_threshold=config.get("media.block_threshold"),
        ),
    }

    if config.get("workflow.dispatch_mode") == "http":
        base_url = config.get("workflow.analyzer_base_url") or (
            f"http://127.0.0.1:{config.get('server.port')}"
        )
        dispatcher = HttpDispatcher(
            base_url,
            client=httpx.Client(timeout=config.get("workflow.analyzer_timeout_secs")),
        )
    else:
        dispatcher = InProcessDispatcher(analyzers)

    workflow = WorkflowHandler(
        ledger=ledger,
        store=store,
        dispatcher=dispatcher,
        analyzer_timeout_secs=config.get("workflow.analyzer_timeout_secs"),
    )
    registrar = Registrar(workflow)
    user_store = UserStore(data_dir / "users.json")
    presenter = Presenter(templates_dir)
    queries = QueryService(store)

    if config.get("text_similarity.corpus_dir"):
        stack_corpus = config.get("text_similarity.corpus_dir")
    else:
        stack_corpus = None

    stack = Stack(
        config=config,
        blob_store=blob_store,
        ledger=ledger,
        store=store,
        media_index=media_index,
        detector=detector,
        analyzers=analyzers,
        workflow=workflow,
        registrar=registrar,
        user_store=user_store,
        presenter=presenter,
        queries=queries,
    )
    if stack_corpus:
        stack.index_corpus_dir(stack_corpus)
    return stack
