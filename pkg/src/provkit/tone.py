"""Lexicon-based emotion scoring with threshold-deviation caution grading.

Five emotions are tracked: fear, anger, sadness, doubt, joy. Elevated
negative emotion flags caution; a *lack* of joy only counts alongside an
already elevated negative emotion, so neutral hard-news prose is not
flagged for being unemotional.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import fsum

from .criteria import STATUS_CAUTION, STATUS_PASS, TONE, AnalysisResult, unavailable
from .textutil import tokenize

EMOTIONS = ("fear", "anger", "sadness", "doubt", "joy")
NEGATIVE_EMOTIONS = ("fear", "anger", "sadness", "doubt")


class EmotionLexicon:
    """term -> [(emotion, weight)] map; one TSV line per pair."""

    def __init__(self, entries: dict[str, list[tuple[str, float]]]) -> None:
        self.entries = entries

    @classmethod
    def load(cls, path) -> "EmotionLexicon":
        entries: dict[str, list[tuple[str, float]]] = {}
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                term, emotion, weight = line.split("\t")
                if emotion not in EMOTIONS:
                    raise ValueError(f"unknown emotion in lexicon: {emotion}")
                entries.setdefault(term.lower(), []).append((emotion, float(weight)))
        return cls(entries)


@dataclass
class EmotionProfile:
    scores: dict[str, float]
    token_count: int
    matched_terms: dict[str, list[str]] = field(default_factory=dict)


@dataclass
class ToneThresholds:
    # per-100-token units
    fear: float = 1.5
    anger: float = 1.5
    sadness: float = 1.5
    doubt: float = 2.0
    joy: float = 0.5
    min_tokens: int = 20

    def for_emotion(self, emotion: str) -> float:
        return getattr(self, emotion)

    def __post_init__(self) -> None:
        for e in EMOTIONS:
            if self.for_emotion(e) <= 0:
                raise ValueError(f"threshold for {e} must be > 0")


def score_emotions(text: str, lexicon: EmotionLexicon) -> EmotionProfile:
    """Matched-weight sums normalized per 100 tokens.

    Sums use fsum so that duplicating the text scales weight sums and
    token counts by exactly two, leaving the scores bit-identical.
    """
    tokens = tokenize(text)
    weights: dict[str, list[float]] = {e: [] for e in EMOTIONS}
    matched: dict[str, list[str]] = {e: [] for e in EMOTIONS}
    for token in tokens:
        for emotion, weight in lexicon.entries.get(token, ()):
            weights[emotion].append(weight)
            matched[emotion].append(token)
    n = len(tokens)
    scores = {e: (100.0 * fsum(weights[e]) / n if n else 0.0) for e in EMOTIONS}
    return EmotionProfile(scores=scores, token_count=n, matched_terms=matched)


def assess(profile: EmotionProfile, thresholds: ToneThresholds | None = None) -> AnalysisResult:
    """Grade deviations from the emotion thresholds.

    caution_e = max(0, (score_e - theta_e) / theta_e) for negative
    emotions. Joy works in reverse (absence is the signal) and is gated:
    it only contributes when some negative emotion exceeds half its
    threshold. Overall score is the largest deviation, capped at 1.
    """
    th = thresholds or ToneThresholds()
    if profile.token_count < th.min_tokens:
        return unavailable(TONE, f"text too short to assess tone ({profile.token_count} tokens)")

    deviations: dict[str, float] = {}
    for e in NEGATIVE_EMOTIONS:
        theta = th.for_emotion(e)
        deviations[e] = max(0.0, (profile.scores[e] - theta) / theta)

    negative_elevated = any(
        profile.scores[e] > th.for_emotion(e) / 2.0 for e in NEGATIVE_EMOTIONS
    )
    if negative_elevated:
        deviations["joy"] = max(0.0, (th.joy - profile.scores["joy"]) / th.joy)
    else:
        deviations["joy"] = 0.0

    overall = min(1.0, max(deviations.values()))
    evidence = [
        {
            "emotion": e,
            "score": profile.scores[e],
            "threshold": th.for_emotion(e),
            "deviation": deviations[e],
            "matched_terms": profile.matched_terms.get(e, [])[:10],
        }
        for e in EMOTIONS
    ]
    if overall > 0.0:
        worst = max(deviations, key=lambda e: deviations[e])
        return AnalysisResult(
            criterion=TONE,
            status=STATUS_CAUTION,
            score=overall,
            evidence=evidence,
            explanation=(
                f"Emotive language detected: {worst} is elevated beyond its threshold. "
                "Heavily emotive tone is a known marker of unreliable news sources."
            ),
        )
    return AnalysisResult(
        criterion=TONE,
        status=STATUS_PASS,
        evidence=evidence,
        explanation="Emotional tone is within normal bounds for news prose.",
    )
