"""Writing quality scoring (WQS, 0-100) with a warning threshold.

Three weighted penalties: density of known low-quality terms/phrases,
mechanical shouting (all-caps words, stacked terminal punctuation), and
a Flesch-Kincaid readability band check. 100 is clean professional
prose; low scores indicate amateur or unprofessional production.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .criteria import STATUS_CAUTION, STATUS_PASS, WRITING_QUALITY, AnalysisResult, unavailable
from .textutil import split_sentences, tokenize, tokenize_cased

_VOWEL_GROUP_RE = re.compile(r"[aeiouy]+")
_BANG_RE = re.compile(r"[!?]{2,}")

DENSITY_SCALE = 0.05
DENSITY_WEIGHT = 0.5
MECHANICS_WEIGHT = 0.3
READABILITY_WEIGHT = 0.2


@dataclass
class WqsConfig:
    threshold: float = 50.0
    min_tokens: int = 30
    grade_band: tuple[float, float] = (6.0, 16.0)

    def __post_init__(self) -> None:
        if not 0.0 <= self.threshold <= 100.0:
            raise ValueError("threshold must be in [0,100]")


@dataclass
class WqsBreakdown:
    lowq_density: float
    mechanics_penalty: float
    readability_penalty: float
    fk_grade: float
    token_count: int
    wqs: float
    matched_terms: list[str] = field(default_factory=list)


class LowQualityTerms:
    """Term/phrase list, one entry per line, '#' comments."""

    def __init__(self, phrases: list[list[str]]) -> None:
        # longest first so greedy matching prefers whole phrases
        self.phrases = sorted(phrases, key=len, reverse=True)

    @classmethod
    def load(cls, path) -> "LowQualityTerms":
        phrases = []
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                tokens = tokenize(line)
                if tokens:
                    phrases.append(tokens)
        return cls(phrases)

    def match(self, tokens: list[str]) -> list[str]:
        """Greedy longest-first non-overlapping phrase occurrences."""
        consumed = [False] * len(tokens)
        hits: list[tuple[int, str]] = []
        for phrase in self.phrases:
            n = len(phrase)
            i = 0
            while i + n <= len(tokens):
                window = tokens[i : i + n]
                if window == phrase and not any(consumed[i : i + n]):
                    for j in range(i, i + n):
                        consumed[j] = True
                    hits.append((i, " ".join(phrase)))
                    i += n
                else:
                    i += 1
        return [term for _, term in sorted(hits)]


def count_syllables(word: str) -> int:
    """Vowel-group count, minimum one per word."""
    return max(1, len(_VOWEL_GROUP_RE.findall(word.lower())))


def fk_grade_level(text: str) -> float:
    """Flesch-Kincaid grade: 0.39*(words/sentences) + 11.8*(syllables/words) - 15.59."""
    words = tokenize(text)
    if not words:
        return 0.0
    sentences = max(1, len(split_sentences(text)))
    syllables = sum(count_syllables(w) for w in words)
    return 0.39 * (len(words) / sentences) + 11.8 * (syllables / len(words)) - 15.59


def compute_wqs(text: str, terms: LowQualityTerms, config: WqsConfig | None = None) -> WqsBreakdown:
    config = config or WqsConfig()
    tokens = tokenize(text)
    n = len(tokens)
    if n == 0:
        return WqsBreakdown(0.0, 0.0, 0.0, 0.0, 0, 100.0)

    matched = terms.match(tokens)
    lowq_density = len(matched) / n

    cased = tokenize_cased(text)
    caps = sum(1 for t in cased if len(t) >= 3 and t.isupper())
    caps_ratio = caps / len(cased)
    sentences = max(1, len(split_sentences(text)))
    bang_ratio = len(_BANG_RE.findall(text)) / sentences
    mechanics = min(1.0, 2.0 * caps_ratio + 3.0 * bang_ratio)

    grade = fk_grade_level(text)
    lo, hi = config.grade_band
    distance = max(0.0, lo - grade, grade - hi)
    readability = min(1.0, distance / 6.0)

    density_scaled = min(1.0, lowq_density / DENSITY_SCALE)
    penalty = min(
        1.0,
        DENSITY_WEIGHT * density_scaled
        + MECHANICS_WEIGHT * mechanics
        + READABILITY_WEIGHT * readability,
    )
    return WqsBreakdown(
        lowq_density=lowq_density,
        mechanics_penalty=mechanics,
        readability_penalty=readability,
        fk_grade=grade,
        token_count=n,
        wqs=100.0 * (1.0 - penalty),
        matched_terms=matched,
    )


def assess(breakdown: WqsBreakdown, config: WqsConfig | None = None) -> AnalysisResult:
    config = config or WqsConfig()
    if breakdown.token_count < config.min_tokens:
        return unavailable(
            WRITING_QUALITY,
            f"text too short to score writing quality ({breakdown.token_count} tokens)",
        )
    evidence = [
        {
            "wqs": breakdown.wqs,
            "threshold": config.threshold,
            "lowq_density": breakdown.lowq_density,
            "mechanics_penalty": breakdown.mechanics_penalty,
            "readability_penalty": breakdown.readability_penalty,
            "fk_grade": breakdown.fk_grade,
            "top_matched_terms": breakdown.matched_terms[:10],
        }
    ]
    if breakdown.wqs < config.threshold:
        return AnalysisResult(
            criterion=WRITING_QUALITY,
            status=STATUS_CAUTION,
            score=(config.threshold - breakdown.wqs) / config.threshold,
            evidence=evidence,
            explanation=(
                f"Writing quality score {breakdown.wqs:.0f} is below the threshold of "
                f"{config.threshold:.0f}. Low writing quality is indicative of amateur or "
                "unprofessional news production processes."
            ),
        )
    return AnalysisResult(
        criterion=WRITING_QUALITY,
        status=STATUS_PASS,
        evidence=evidence,
        explanation=f"Writing quality score {breakdown.wqs:.0f} meets professional standards.",
    )
