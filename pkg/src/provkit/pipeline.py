"""Batch pipeline: ingest a fixture feed, analyze everything, report.

The batch equivalent of the monitor-to-workflow flow, used by the CLI
and the acceptance suite. Items are processed oldest first so that
later items can be checked against media the earlier ones introduced.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .bootstrap import Stack
from .criteria import CRITERIA, STATUS_CAUTION
from .ingestion import SOURCE_MONITOR, MonitorClient, MonitorQuery


@dataclass
class PipelineReport:
    rows: list[dict] = field(default_factory=list)
    caution_counts: dict[str, int] = field(default_factory=dict)
    corpus_docs: int = 0

    def render_table(self) -> str:
        header = ["asset", *CRITERIA]
        widths = [max(len(header[0]), *(len(r["label"]) for r in self.rows)) if self.rows else len(header[0])]
        widths += [max(len(c), 11) for c in CRITERIA]
        lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths))]
        for row in self.rows:
            cells = [row["label"].ljust(widths[0])]
            for i, criterion in enumerate(CRITERIA, start=1):
                cells.append(row["statuses"][criterion].ljust(widths[i]))
            lines.append("  ".join(cells))
        lines.append("")
        lines.append("caution counts: " + ", ".join(f"{c}={self.caution_counts[c]}" for c in CRITERIA))
        return "\n".join(lines)


def run_pipeline(
    stack: Stack,
    fixture_path: str | Path,
    corpus_dir: str | Path | None = None,
    keywords: list[str] | None = None,
    limit: int = 10_000,
) -> PipelineReport:
    report = PipelineReport(caution_counts={c: 0 for c in CRITERIA})
    if corpus_dir is not None:
        report.corpus_docs = stack.index_corpus_dir(corpus_dir)

    monitor = MonitorClient(fixture_path)
    items = monitor.poll(MonitorQuery(keywords=keywords or [], limit=limit))
    for item in reversed(items):  # oldest first
        asset, _ = stack.registrar.register(
            item, SOURCE_MONITOR, media_base_dir=Path(fixture_path).parent
        )
        record = stack.store.get_verification(asset.asset_id)
        statuses = {c: record.results[c].status for c in CRITERIA}
        scores = {c: record.results[c].score for c in CRITERIA}
        for criterion in CRITERIA:
            if statuses[criterion] == STATUS_CAUTION:
                report.caution_counts[criterion] += 1
        report.rows.append(
            {
                "label": item.url,
                "asset_id": asset.asset_id,
                "statuses": statuses,
                "scores": scores,
            }
        )
    return report
