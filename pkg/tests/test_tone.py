import pytest

from provkit.criteria import STATUS_CAUTION, STATUS_PASS, STATUS_UNAVAILABLE
from provkit.tone import EmotionLexicon, ToneThresholds, assess, score_emotions

FIXTURE_LEXICON = EmotionLexicon(
    {
        "terror": [("fear", 1.0)],
        "attack": [("fear", 0.8), ("anger", 0.6)],
        "grief": [("sadness", 1.0)],
        "allegedly": [("doubt", 0.7)],
        "joy": [("joy", 1.0)],
        "celebrate": [("joy", 0.8)],
    }
)


def words(n: int, prefix: str = "word") -> str:
    return " ".join(f"{prefix}{i}" for i in range(n))


def test_empty_text_scores_zero():
    profile = score_emotions("", FIXTURE_LEXICON)
    assert profile.token_count == 0
    assert all(v == 0.0 for v in profile.scores.values())


def test_no_lexicon_hits_scores_zero():
    profile = score_emotions(words(30), FIXTURE_LEXICON)
    assert all(v == 0.0 for v in profile.scores.values())


def test_worked_example_fifty_tokens():
    # 48 neutral words + terror + attack = 50 tokens
    text = words(48) + " terror attack"
    profile = score_emotions(text, FIXTURE_LEXICON)
    assert profile.token_count == 50
    assert profile.scores["fear"] == pytest.approx(100 * 1.8 / 50)  # 3.6
    assert profile.scores["anger"] == pytest.approx(100 * 0.6 / 50)  # 1.2
    assert profile.scores["sadness"] == 0.0


def test_multi_emotion_terms_count_for_each():
    profile = score_emotions("attack " + words(9), FIXTURE_LEXICON)
    assert profile.scores["fear"] == pytest.approx(100 * 0.8 / 10)
    assert profile.scores["anger"] == pytest.approx(100 * 0.6 / 10)


def test_duplication_leaves_scores_unchanged():
    text = words(40) + " terror attack grief allegedly"
    single = score_emotions(text, FIXTURE_LEXICON)
    double = score_emotions(text + " " + text, FIXTURE_LEXICON)
    assert double.token_count == 2 * single.token_count
    for emotion in single.scores:
        assert double.scores[emotion] == pytest.approx(single.scores[emotion])


def test_assess_below_min_tokens_unavailable():
    profile = score_emotions(words(10), FIXTURE_LEXICON)
    result = assess(profile, ToneThresholds(min_tokens=20))
    assert result.status == STATUS_UNAVAILABLE
    assert result.score == 0.0


def test_assess_at_thresholds_passes():
    # fear and joy both exactly at their thresholds: all deviations 0 -> pass
    # over 200 tokens: fear weight 3.0 = 3x terror (1.5/100), joy weight 1.0 (0.5/100)
    text = words(196) + " terror terror terror joy"
    profile = score_emotions(text, FIXTURE_LEXICON)
    assert profile.scores["fear"] == pytest.approx(1.5)
    assert profile.scores["joy"] == pytest.approx(0.5)
    result = assess(profile, ToneThresholds())
    assert result.status == STATUS_PASS
    assert result.score == 0.0


def test_assess_fear_double_threshold_scores_one():
    # fear = 3.0 with theta 1.5 -> deviation (3.0-1.5)/1.5 = 1.0
    text = words(97) + " terror terror terror"
    profile = score_emotions(text, FIXTURE_LEXICON)
    assert profile.scores["fear"] == pytest.approx(3.0)
    result = assess(profile, ToneThresholds())
    assert result.status == STATUS_CAUTION
    assert result.score == pytest.approx(1.0)


def test_joy_absence_alone_never_triggers():
    # no negative emotion at all, zero joy -> pass
    profile = score_emotions(words(50), FIXTURE_LEXICON)
    result = assess(profile, ToneThresholds())
    assert result.status == STATUS_PASS


def test_joy_absence_counts_when_negative_elevated():
    # fear above half threshold but below threshold; joy absent
    # fear weight 1.0 over 100 tokens = 1.0 > 0.75 = theta/2
    text = words(99) + " terror"
    profile = score_emotions(text, FIXTURE_LEXICON)
    assert 0.75 < profile.scores["fear"] < 1.5
    result = assess(profile, ToneThresholds())
    # joy deviation = (0.5 - 0) / 0.5 = 1.0
    assert result.status == STATUS_CAUTION
    assert result.score == pytest.approx(1.0)
    joy_item = next(e for e in result.evidence if e["emotion"] == "joy")
    assert joy_item["deviation"] == pytest.approx(1.0)


def test_joy_present_suppresses_joy_deviation():
    text = words(96) + " terror joy joy celebrate"
    profile = score_emotions(text, FIXTURE_LEXICON)
    assert profile.scores["joy"] > 0.5
    result = assess(profile, ToneThresholds())
    joy_item = next(e for e in result.evidence if e["emotion"] == "joy")
    assert joy_item["deviation"] == 0.0


def test_monotonicity_in_negative_scores():
    thresholds = ToneThresholds()
    previous = -1.0
    for terrors in range(0, 8):
        text = words(100 - terrors) + (" terror" * terrors)
        result = assess(score_emotions(text, FIXTURE_LEXICON), thresholds)
        assert result.score >= previous
        previous = result.score


def test_status_soundness():
    thresholds = ToneThresholds()
    for terrors in range(0, 8):
        text = words(100 - terrors) + (" terror" * terrors)
        result = assess(score_emotions(text, FIXTURE_LEXICON), thresholds)
        assert (result.status == STATUS_CAUTION) == (result.score > 0)


def test_evidence_lists_all_emotions():
    result = assess(score_emotions(words(30), FIXTURE_LEXICON), ToneThresholds())
    assert [e["emotion"] for e in result.evidence] == ["fear", "anger", "sadness", "doubt", "joy"]
    for item in result.evidence:
        assert {"emotion", "score", "threshold", "deviation"} <= set(item)
