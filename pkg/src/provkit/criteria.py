"""The seven verification criteria and the per-criterion result record."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

TEXT_SIMILARITY = "text_similarity"
TONE = "tone"
WRITING_QUALITY = "writing_quality"
IMAGE_REUSE = "image_reuse"
IMAGE_MANIPULATION = "image_manipulation"
VIDEO_REUSE = "video_reuse"
VIDEO_MANIPULATION = "video_manipulation"

CRITERIA: tuple[str, ...] = (
    TEXT_SIMILARITY,
    TONE,
    WRITING_QUALITY,
    IMAGE_REUSE,
    IMAGE_MANIPULATION,
    VIDEO_REUSE,
    VIDEO_MANIPULATION,
)

STATUS_PASS = "pass"
STATUS_CAUTION = "caution"
STATUS_UNAVAILABLE = "unavailable"
STATUSES = (STATUS_PASS, STATUS_CAUTION, STATUS_UNAVAILABLE)


@dataclass
class AnalysisResult:
    """One criterion's verdict for one asset.

    score is the caution intensity in [0,1]; it is nonzero only when
    status == caution. evidence holds criterion-specific dicts that are
    JSON-serializable.
    """

    criterion: str
    status: str
    score: float = 0.0
    evidence: list[dict[str, Any]] = field(default_factory=list)
    explanation: str = ""

    def __post_init__(self) -> None:
        if self.criterion not in CRITERIA:
            raise ValueError(f"unknown criterion: {self.criterion}")
        if self.status not in STATUSES:
            raise ValueError(f"unknown status: {self.status}")
        if self.status != STATUS_CAUTION and self.score != 0.0:
            raise ValueError("score must be 0 unless status is caution")
        if not 0.0 <= self.score <= 1.0:
            raise ValueError("score out of [0,1]")

    def to_dict(self) -> dict[str, Any]:
        return {
            "criterion": self.criterion,
            "status": self.status,
            "score": self.score,
            "evidence": self.evidence,
            "explanation": self.explanation,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "AnalysisResult":
        return cls(
            criterion=d["criterion"],
            status=d["status"],
            score=float(d.get("score", 0.0)),
            evidence=list(d.get("evidence", [])),
            explanation=d.get("explanation", ""),
        )


def unavailable(criterion: str, explanation: str) -> AnalysisResult:
    return AnalysisResult(criterion=criterion, status=STATUS_UNAVAILABLE, explanation=explanation)
