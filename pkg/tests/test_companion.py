import random
from importlib import resources

import pytest

from provkit.companion import (
    BADGE_CAUTION,
    BADGE_OK,
    BADGE_UNKNOWN,
    ICON_CAUTION,
    ICON_PASS,
    ICON_UNAVAILABLE,
    Presenter,
    UserModel,
    UserStore,
    WarningPref,
    default_user,
    effective_caution,
)
from provkit.criteria import CRITERIA
from provkit.errors import ValidationError
from provkit.knowledge_graph import VerificationRecord

from conftest import full_results, receipt_for, result_for, text_asset

TEMPLATES = str(resources.files("provkit").joinpath("data/templates"))


def make_record(results=None, topic="uncategorized") -> VerificationRecord:
    asset = text_asset()
    return VerificationRecord(
        asset_id=asset.asset_id,
        url=asset.url,
        title="A title",
        publisher="Example News",
        topic=topic,
        results=results or full_results(),
        ledger_receipt=receipt_for(asset),
    )


@pytest.fixture
def presenter():
    return Presenter(TEMPLATES)


class TestDefaults:
    def test_default_user_has_all_criteria_enabled(self):
        user = default_user("u1")
        assert set(user.warning_prefs) == set(CRITERIA)
        assert all(p.enabled and p.sensitivity == "normal" for p in user.warning_prefs.values())
        assert user.digital_literacy == "intermediate"


class TestPresent:
    def test_all_passes_blue_badge_seven_green(self, presenter):
        pres = presenter.present(make_record(), default_user("u"))
        assert pres.badge == BADGE_OK
        assert len(pres.icons) == 7
        assert all(icon.state == ICON_PASS for icon in pres.icons.values())

    def test_caution_turns_badge_red(self, presenter):
        results = full_results()
        results["writing_quality"] = result_for(
            "writing_quality", "caution", 0.5, evidence=[{"wqs": 25.0, "threshold": 50.0}]
        )
        pres = presenter.present(make_record(results), default_user("u"))
        assert pres.badge == BADGE_CAUTION
        assert pres.icons["writing_quality"].state == ICON_CAUTION
        assert pres.icons["tone"].state == ICON_PASS

    def test_unavailable_result_grey_icon(self, presenter):
        results = full_results()
        results["tone"] = result_for("tone", "unavailable")
        pres = presenter.present(make_record(results), default_user("u"))
        assert pres.icons["tone"].state == ICON_UNAVAILABLE
        assert pres.badge == BADGE_OK

    def test_absent_record_grey_everything(self, presenter):
        pres = presenter.present(None, default_user("u"))
        assert pres.badge == BADGE_UNKNOWN
        assert all(icon.state == ICON_UNAVAILABLE for icon in pres.icons.values())

    def test_low_sensitivity_mutes_weak_caution(self, presenter):
        results = full_results()
        results["writing_quality"] = result_for("writing_quality", "caution", 0.2)
        user = default_user("u")
        user.warning_prefs["writing_quality"] = WarningPref(sensitivity="low")
        pres = presenter.present(make_record(results), user)
        assert pres.icons["writing_quality"].state == ICON_PASS
        assert pres.badge == BADGE_OK

    def test_low_sensitivity_keeps_strong_caution(self, presenter):
        results = full_results()
        results["writing_quality"] = result_for("writing_quality", "caution", 0.25)
        user = default_user("u")
        user.warning_prefs["writing_quality"] = WarningPref(sensitivity="low")
        pres = presenter.present(make_record(results), user)
        assert pres.icons["writing_quality"].state == ICON_CAUTION
        assert pres.badge == BADGE_CAUTION

    def test_disabled_criterion_never_red(self, presenter):
        results = full_results()
        results["tone"] = result_for("tone", "caution", 0.9)
        user = default_user("u")
        user.warning_prefs["tone"] = WarningPref(enabled=False)
        pres = presenter.present(make_record(results), user)
        assert pres.icons["tone"].state == ICON_UNAVAILABLE
        assert pres.badge == BADGE_OK

    def test_disabling_one_does_not_change_others(self, presenter):
        results = full_results()
        results["tone"] = result_for("tone", "caution", 0.9)
        results["image_reuse"] = result_for("image_reuse", "caution", 0.8)
        user = default_user("u")
        before = presenter.present(make_record(results), user)
        user.warning_prefs["tone"] = WarningPref(enabled=False)
        after = presenter.present(make_record(results), user)
        for criterion in CRITERIA:
            if criterion != "tone":
                assert after.icons[criterion].state == before.icons[criterion].state

    def test_expert_detail_contains_raw_numbers(self, presenter):
        results = full_results()
        results["writing_quality"] = result_for(
            "writing_quality", "caution", 0.5, evidence=[{"wqs": 25.0, "threshold": 50.0}]
        )
        user = default_user("u")
        user.digital_literacy = "expert"
        pres = presenter.present(make_record(results), user)
        detail = pres.icons["writing_quality"].detail_text
        assert "0.50" in detail  # formatted score
        assert "50" in detail  # threshold from evidence

    def test_high_sensitivity_surfaces_evidence(self, presenter):
        results = full_results()
        results["tone"] = result_for(
            "tone", "caution", 0.6, evidence=[{"emotion": "fear", "score": 3.0, "threshold": 1.5}]
        )
        user = default_user("u")
        user.warning_prefs["tone"] = WarningPref(sensitivity="high")
        pres = presenter.present(make_record(results), user)
        assert "Evidence:" in pres.icons["tone"].detail_text

    def test_topic_matched_example_lines(self, presenter):
        record = make_record(topic="health")
        user = default_user("u")
        pres_plain = presenter.present(record, user)
        assert "health agencies" not in pres_plain.icons["text_similarity"].detail_text

        user.interests = ["health"]
        pres_interested = presenter.present(record, user)
        assert "health agencies" in pres_interested.icons["text_similarity"].detail_text

    def test_determinism(self, presenter):
        record = make_record()
        user = default_user("u")
        assert presenter.present(record, user).to_dict() == presenter.present(record, user).to_dict()

    def test_badge_soundness_randomized(self, presenter):
        rng = random.Random(1)
        for _ in range(100):
            results = {}
            for criterion in CRITERIA:
                status = rng.choice(["pass", "caution", "unavailable"])
                score = round(rng.uniform(0.01, 1.0), 4) if status == "caution" else 0.0
                results[criterion] = result_for(criterion, status, score)
            user = default_user("u")
            for criterion in CRITERIA:
                user.warning_prefs[criterion] = WarningPref(
                    enabled=rng.random() < 0.8,
                    sensitivity=rng.choice(["low", "normal", "high"]),
                )
            pres = presenter.present(make_record(results), user)
            expected_red = any(
                effective_caution(results[c], user.warning_prefs[c]) for c in CRITERIA
            )
            assert (pres.badge == BADGE_CAUTION) == expected_red


class TestUserStore:
    def test_fresh_user_gets_default_model(self, tmp_path):
        store = UserStore(tmp_path / "users.json")
        model = store.get("new-user")
        assert model.user_id == "new-user"
        assert all(p.enabled for p in model.warning_prefs.values())

    def test_patch_persists_and_merges(self, tmp_path):
        path = tmp_path / "users.json"
        store = UserStore(path)
        store.update("u1", {"digital_literacy": "expert"})
        store.update("u1", {"warning_prefs": {"tone": {"enabled": False}}})
        reloaded = UserStore(path)
        model = reloaded.get("u1")
        assert model.digital_literacy == "expert"
        assert model.warning_prefs["tone"].enabled is False
        assert model.warning_prefs["tone"].sensitivity == "normal"
        assert model.warning_prefs["writing_quality"].enabled is True

    def test_invalid_sensitivity_rejected(self, tmp_path):
        store = UserStore(tmp_path / "users.json")
        with pytest.raises(ValidationError):
            store.update("u1", {"warning_prefs": {"tone": {"sensitivity": "max"}}})

    def test_invalid_literacy_rejected(self, tmp_path):
        store = UserStore(tmp_path / "users.json")
        with pytest.raises(ValidationError):
            store.update("u1", {"digital_literacy": "wizard"})

    def test_unknown_field_rejected(self, tmp_path):
        store = UserStore(tmp_path / "users.json")
        with pytest.raises(ValidationError):
            store.update("u1", {"favourite_colour": "green"})

    def test_unknown_criterion_rejected(self, tmp_path):
        store = UserStore(tmp_path / "users.json")
        with pytest.raises(ValidationError):
            store.update("u1", {"warning_prefs": {"astrology": {"enabled": True}}})

    def test_model_validation_on_construction(self):
        with pytest.raises(ValidationError):
            UserModel.from_dict({"user_id": "u", "digital_literacy": "super"})
