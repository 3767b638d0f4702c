from __future__ import annotations

from datetime import datetime, timezone

import numpy as np
import pytest

from provkit.bootstrap import build_stack
from provkit.config import load_config
from provkit.criteria import CRITERIA, AnalysisResult
from provkit.ingestion import Asset, EngagementScore, Fragment
from provkit.ledger import LedgerReceipt


def make_image(rng: np.random.Generator, width: int = 64, height: int = 64) -> np.ndarray:
    """Structured random grayscale image; values kept within [20, 215] so
    brightness edits up to +40 cannot clip."""
    base = rng.integers(40, 206, size=(height // 8 + 1, width // 8 + 1)).astype(np.float64)
    rows = np.linspace(0, base.shape[0] - 1, height)
    cols = np.linspace(0, base.shape[1] - 1, width)
    r0 = np.floor(rows).astype(int)
    c0 = np.floor(cols).astype(int)
    img = base[np.ix_(r0, c0)]
    noise = rng.normal(0, 4, size=(height, width))
    return np.clip(img + noise, 20, 215).astype(np.uint8)


def paste_patch(image: np.ndarray, x: int, y: int, w: int, h: int, delta: int = 35) -> np.ndarray:
    """Local brightness edit: structure preserved, per-pixel diff = delta."""
    out = image.astype(np.int16).copy()
    out[y : y + h, x : x + w] += delta
    return np.clip(out, 0, 255).astype(np.uint8)


def text_asset(url: str = "https://example.com/article", title: str = "A title", body: str = "") -> Asset:
    fragments = [Fragment("title", "title", text=title)]
    if body:
        fragments.append(Fragment("body", "body", text=body))
    import hashlib

    return Asset(
        asset_id=hashlib.sha256(url.lower().encode()).hexdigest(),
        source="monitor",
        fragments=fragments,
        engagement=EngagementScore.from_counts(1, 2, 3),
        ingested_at=datetime(2026, 1, 5, 12, 0, tzinfo=timezone.utc),
        url=url,
        publisher="Example News",
        published_at=datetime(2026, 1, 4, 9, 30, tzinfo=timezone.utc),
    )


def result_for(criterion: str, status: str = "pass", score: float = 0.0, evidence=None) -> AnalysisResult:
    return AnalysisResult(
        criterion=criterion,
        status=status,
        score=score,
        evidence=evidence if evidence is not None else [],
        explanation=f"{criterion} {status}",
    )


def full_results(status: str = "pass") -> dict[str, AnalysisResult]:
    return {c: result_for(c, status=status, score=0.5 if status == "caution" else 0.0) for c in CRITERIA}


def receipt_for(asset: Asset, index: int = 0) -> LedgerReceipt:
    return LedgerReceipt(
        asset_id=asset.asset_id,
        block_index=index,
        block_hash="c" * 64,
        content_digest="d" * 64,
    )


@pytest.fixture
def stack(tmp_path):
    config = load_config(env={})
    config._values["data_dir"] = str(tmp_path / "data")
    return build_stack(config)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL line per acceptance criterion after the run."""
    reports = []
    for key in ("passed", "failed"):
        reports += [r for r in terminalreporter.stats.get(key, []) if "test_acceptance" in r.nodeid]
    if not reports:
        return
    terminalreporter.section("acceptance criteria")
    for report in sorted(reports, key=lambda r: r.nodeid):
        name = report.nodeid.split("::")[-1]
        terminalreporter.write_line(f"[{'PASS' if report.passed else 'FAIL'}] {name}")
