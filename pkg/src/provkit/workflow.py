"""Verification-layer orchestration.

submit() runs one asset end to end: ledger registration first
(traceability is mandatory), then a concurrent fan-out to the analyzers
with a join barrier and per-analyzer timeout, then one transactional
write of the combined bundle to the knowledge graph. Analyzer failures
degrade the affected criteria to `unavailable`; they never abort the
bundle.

Analyzers are reached only through the dispatch contract; in-process
and HTTP dispatch are interchangeable.
"""

from __future__ import annotations

import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from time import monotonic
from typing import Protocol

import httpx

from .criteria import (
    CRITERIA,
    IMAGE_MANIPULATION,
    IMAGE_REUSE,
    TEXT_SIMILARITY,
    TONE,
    VIDEO_MANIPULATION,
    VIDEO_REUSE,
    WRITING_QUALITY,
    AnalysisResult,
    unavailable,
)
from .errors import DispatchError
from .ingestion import Asset, EngagementScore, asset_to_dict
from .knowledge_graph import TripleStore
from .ledger import Ledger, LedgerReceipt

logger = logging.getLogger(__name__)

STATUS_PENDING = "pending"
STATUS_ANALYZING = "analyzing"
STATUS_STORED = "stored"
STATUS_UNKNOWN = "unknown"

ANALYZER_COVERAGE: dict[str, tuple[str, ...]] = {
    "text_similarity": (TEXT_SIMILARITY,),
    "tone": (TONE,),
    "writing_quality": (WRITING_QUALITY,),
    "media_reuse": (IMAGE_REUSE, VIDEO_REUSE),
    "media_manipulation": (IMAGE_MANIPULATION, VIDEO_MANIPULATION),
}


@dataclass
class AnalysisBundle:
    asset: Asset
    ledger_receipt: LedgerReceipt
    results: dict[str, AnalysisResult]
    engagement: EngagementScore
    completed_at: datetime = field(default_factory=lambda: datetime.now(timezone.utc))

    @property
    def asset_id(self) -> str:
        return self.asset.asset_id


class Dispatcher(Protocol):
    def dispatch(self, analyzer_name: str, asset: Asset) -> list[AnalysisResult]: ...


class InProcessDispatcher:
    def __init__(self, analyzers: dict[str, object]) -> None:
        self.analyzers = analyzers

    def dispatch(self, analyzer_name: str, asset: Asset) -> list[AnalysisResult]:
        analyzer = self.analyzers.get(analyzer_name)
        if analyzer is None:
            raise DispatchError(f"no analyzer registered under {analyzer_name!r}")
        return analyzer.run(asset)


class HttpDispatcher:
    """POSTs the asset to ``{base_url}/internal/analyzers/{name}``.

    Media payload bytes are not sent over the wire; the analyzer endpoint
    resolves them from the shared content-addressed blob store.
    """

    def __init__(self, base_url: str, client: httpx.Client | None = None, timeout: float = 30.0) -> None:
        self.base_url = base_url.rstrip("/")
        self.client = client or httpx.Client(timeout=timeout)

    def dispatch(self, analyzer_name: str, asset: Asset) -> list[AnalysisResult]:
        try:
            response = self.client.post(
                f"{self.base_url}/internal/analyzers/{analyzer_name}",
                json=asset_to_dict(asset),
            )
        except httpx.HTTPError as exc:
            raise DispatchError(f"analyzer {analyzer_name} unreachable: {exc}") from exc
        if response.status_code != 200:
            raise DispatchError(f"analyzer {analyzer_name} returned {response.status_code}")
        return [AnalysisResult.from_dict(d) for d in response.json()["results"]]


class WorkflowHandler:
    """Serializes processing per asset_id; distinct assets run concurrently."""

    def __init__(
        self,
        ledger: Ledger,
        store: TripleStore,
        dispatcher: Dispatcher,
        analyzer_timeout_secs: float = 30.0,
        coverage: dict[str, tuple[str, ...]] | None = None,
    ) -> None:
        self.ledger = ledger
        self.store = store
        self.dispatcher = dispatcher
        self.analyzer_timeout_secs = analyzer_timeout_secs
        self.coverage = coverage or dict(ANALYZER_COVERAGE)
        self._statuses: dict[str, str] = {}
        self._status_lock = threading.Lock()
        self._asset_locks: dict[str, threading.Lock] = {}
        self._asset_locks_guard = threading.Lock()

    def _lock_for(self, asset_id: str) -> threading.Lock:
        with self._asset_locks_guard:
            return self._asset_locks.setdefault(asset_id, threading.Lock())

    def _set_status(self, asset_id: str, status: str) -> None:
        with self._status_lock:
            self._statuses[asset_id] = status

    def status(self, asset_id: str) -> str:
        with self._status_lock:
            return self._statuses.get(asset_id, STATUS_UNKNOWN)

    def submit(self, asset: Asset) -> AnalysisBundle:
        with self._lock_for(asset.asset_id):
            self._set_status(asset.asset_id, STATUS_PENDING)
            try:
                receipt = self.ledger.fingerprint(asset)
            except Exception:
                self._set_status(asset.asset_id, STATUS_UNKNOWN)
                raise
            self._set_status(asset.asset_id, STATUS_ANALYZING)
            results = self._fan_out(asset)
            bundle = AnalysisBundle(
                asset=asset,
                ledger_receipt=receipt,
                results=results,
                engagement=asset.engagement,
                completed_at=datetime.now(timezone.utc),
            )
            self.store.store_bundle(bundle)
            self._set_status(asset.asset_id, STATUS_STORED)
            return bundle

    def _fan_out(self, asset: Asset) -> dict[str, AnalysisResult]:
        results: dict[str, AnalysisResult] = {}
        pool = ThreadPoolExecutor(max_workers=len(self.coverage), thread_name_prefix="analyzer")
        try:
            futures = {
                name: pool.submit(self.dispatcher.dispatch, name, asset)
                for name in self.coverage
            }
            deadline = monotonic() + self.analyzer_timeout_secs
            for name, future in futures.items():
                covered = self.coverage[name]
                try:
                    remaining = max(0.0, deadline - monotonic())
                    for result in future.result(timeout=remaining):
                        if result.criterion in covered:
                            results[result.criterion] = result
                except Exception:
                    logger.exception("analyzer %s failed for asset %s", name, asset.asset_id)
                for criterion in covered:
                    results.setdefault(criterion, unavailable(criterion, "analyzer error"))
        finally:
            pool.shutdown(wait=False, cancel_futures=True)
        return {criterion: results[criterion] for criterion in CRITERIA}
