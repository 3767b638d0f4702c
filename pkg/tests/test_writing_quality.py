import random

import pytest

from provkit.criteria import STATUS_CAUTION, STATUS_PASS, STATUS_UNAVAILABLE
from provkit.writing_quality import (
    LowQualityTerms,
    WqsBreakdown,
    WqsConfig,
    assess,
    compute_wqs,
    count_syllables,
    fk_grade_level,
)

TERMS = LowQualityTerms([["filler"], ["you", "won", "t", "believe"], ["believe"]])

CLEAN_PARAGRAPH = (
    "The transport ministry published updated railway statistics on Tuesday. "
    "Passenger numbers increased by four percent compared with the previous quarter. "
    "Regional services carried the largest share of additional travellers. "
    "The ministry attributed the growth to expanded commuter schedules. "
    "Officials also announced further investment in station accessibility."
)


def test_syllable_counting_vowel_groups():
    assert count_syllables("cat") == 1
    assert count_syllables("table") == 2  # a, e
    assert count_syllables("beautiful") == 3  # eau, i, u
    assert count_syllables("rhythm") == 1  # y
    assert count_syllables("tsk") == 1  # minimum one


def test_fk_grade_formula_hand_check():
    # 2 sentences, 8 words, syllables: the(1) cat(1) sat(1) here(2) the(1) dog(1) ran(1) away(2) = 10
    text = "The cat sat here. The dog ran away."
    expected = 0.39 * (8 / 2) + 11.8 * (10 / 8) - 15.59
    assert fk_grade_level(text) == pytest.approx(expected)


def test_clean_paragraph_scores_exactly_100():
    breakdown = compute_wqs(CLEAN_PARAGRAPH, TERMS)
    assert breakdown.lowq_density == 0.0
    assert breakdown.mechanics_penalty == 0.0
    assert 6.0 <= breakdown.fk_grade <= 16.0
    assert breakdown.readability_penalty == 0.0
    assert breakdown.wqs == 100.0


def test_density_at_saturation_gives_fifty():
    # 100 tokens in 3 sentences so the FK grade lands inside the band;
    # exactly 5 term hits -> density 0.05 -> scaled 1.0 -> wqs 50
    neutral = [f"blk{i}" for i in range(95)]
    words = neutral[:30] + ["filler"] * 5 + neutral[30:]
    sentences = [
        "Alpha " + " ".join(words[:33]) + ".",
        "Beta " + " ".join(words[33:66]) + ".",
        "Gamma " + " ".join(words[66:97]) + ".",
    ]
    text = " ".join(sentences)
    breakdown = compute_wqs(text, TERMS)
    assert breakdown.token_count == 100
    assert breakdown.lowq_density == pytest.approx(0.05)
    assert breakdown.mechanics_penalty == 0.0
    assert 6.0 <= breakdown.fk_grade <= 16.0, breakdown.fk_grade
    assert breakdown.wqs == pytest.approx(50.0)


def test_shouty_text_saturates_mechanics():
    from importlib import resources

    shipped = LowQualityTerms.load(
        str(resources.files("provkit").joinpath("data/lexicons/low_quality_terms.txt"))
    )
    text = "BREAKING!!! THEY don't WANT you to KNOW THIS!!!"
    breakdown = compute_wqs(text, shipped)
    assert breakdown.mechanics_penalty == 1.0
    assert breakdown.matched_terms  # "they don't want you to know"
    assert breakdown.wqs < 50.0


def test_phrase_matching_longest_first_non_overlapping():
    tokens_text = "you won't believe the results"
    breakdown = compute_wqs(tokens_text, TERMS)
    # one phrase hit; 'believe' inside it is consumed and not re-counted
    assert breakdown.matched_terms == ["you won t believe"]


def test_phrase_occurrences_counted_per_occurrence():
    breakdown = compute_wqs("filler words then filler again", TERMS)
    assert breakdown.matched_terms == ["filler", "filler"]
    assert breakdown.lowq_density == pytest.approx(2 / 5)


def test_wqs_bounds_on_random_texts():
    rng = random.Random(99)
    pieces = ["filler", "believe", "WOW", "item", "!!", "Steady.", "Analysis", "you", "won't"]
    for _ in range(50):
        text = " ".join(rng.choices(pieces, k=rng.randint(0, 60)))
        breakdown = compute_wqs(text, TERMS)
        assert 0.0 <= breakdown.wqs <= 100.0


def test_adding_terms_never_increases_wqs():
    neutral = [f"item{i}" for i in range(60)]
    previous = None
    for hits in range(0, 8):
        words = ["filler"] * hits + neutral[: 60 - hits]
        text = "Alpha " + " ".join(words[:29]) + ". Beta " + " ".join(words[29:58]) + "."
        breakdown = compute_wqs(text, TERMS)
        if previous is not None:
            assert breakdown.wqs <= previous
        previous = breakdown.wqs


class TestAssess:
    def test_at_threshold_passes(self):
        breakdown = WqsBreakdown(0.0, 0.0, 0.0, 10.0, 50, wqs=50.0)
        result = assess(breakdown, WqsConfig(threshold=50.0))
        assert result.status == STATUS_PASS
        assert result.score == 0.0

    def test_below_threshold_scores_relative_shortfall(self):
        breakdown = WqsBreakdown(0.1, 0.5, 0.0, 10.0, 50, wqs=25.0)
        result = assess(breakdown, WqsConfig(threshold=50.0))
        assert result.status == STATUS_CAUTION
        assert result.score == pytest.approx(0.5)
        assert result.evidence[0]["wqs"] == 25.0
        assert result.evidence[0]["threshold"] == 50.0

    def test_short_text_unavailable(self):
        breakdown = compute_wqs("only a few words here", TERMS)
        result = assess(breakdown, WqsConfig(min_tokens=30))
        assert result.status == STATUS_UNAVAILABLE
