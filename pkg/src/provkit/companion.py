"""Personalised presentation of verification records.

Maps a VerificationRecord plus a minimal user model onto the badge and
seven-icon pane shown in the feed: blue P when nothing is flagged, red
with an exclamation mark when an enabled criterion warrants caution,
grey when the content was never analysed. Users control per-criterion
warnings (enable/disable, sensitivity) and get explanation text matched
to their digital literacy.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from pathlib import Path

from .criteria import CRITERIA, STATUS_CAUTION, STATUS_UNAVAILABLE
from .errors import ValidationError
from .knowledge_graph import VerificationRecord

LITERACY_LEVELS = ("novice", "intermediate", "expert")
SENSITIVITY_LEVELS = ("low", "normal", "high")
KNOWLEDGE_LEVELS = ("novice", "intermediate", "expert")

# cautions weaker than this are muted for low-sensitivity users
LOW_SENSITIVITY_FLOOR = 0.25

BADGE_OK = "blue_ok"
BADGE_CAUTION = "red_caution"
BADGE_UNKNOWN = "grey_unknown"

ICON_PASS = "green_pass"
ICON_CAUTION = "red_caution"
ICON_UNAVAILABLE = "grey_unavailable"

CRITERION_LABELS = {
    "text_similarity": "Text Similarity",
    "tone": "Tone",
    "writing_quality": "Writing Quality",
    "image_reuse": "Image Reuse",
    "image_manipulation": "Image Manipulation",
    "video_reuse": "Video Reuse",
    "video_manipulation": "Video Manipulation",
}


@dataclass
class WarningPref:
    enabled: bool = True
    sensitivity: str = "normal"

    def validate(self) -> None:
        if not isinstance(self.enabled, bool):
            raise ValidationError("enabled must be a boolean")
        if self.sensitivity not in SENSITIVITY_LEVELS:
            raise ValidationError(f"unknown sensitivity: {self.sensitivity!r}")


@dataclass
class UserModel:
    user_id: str
    interests: list[str] = field(default_factory=list)
    domain_knowledge: dict[str, str] = field(default_factory=dict)
    digital_literacy: str = "intermediate"
    warning_prefs: dict[str, WarningPref] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for criterion in CRITERIA:
            self.warning_prefs.setdefault(criterion, WarningPref())

    def validate(self) -> None:
        if self.digital_literacy not in LITERACY_LEVELS:
            raise ValidationError(f"unknown digital_literacy: {self.digital_literacy!r}")
        for topic, level in self.domain_knowledge.items():
            if level not in KNOWLEDGE_LEVELS:
                raise ValidationError(f"unknown domain knowledge level for {topic}: {level!r}")
        unknown = set(self.warning_prefs) - set(CRITERIA)
        if unknown:
            raise ValidationError(f"warning_prefs for unknown criteria: {sorted(unknown)}")
        for pref in self.warning_prefs.values():
            pref.validate()

    def to_dict(self) -> dict:
        return {
            "user_id": self.user_id,
            "interests": self.interests,
            "domain_knowledge": self.domain_knowledge,
            "digital_literacy": self.digital_literacy,
            "warning_prefs": {
                c: {"enabled": p.enabled, "sensitivity": p.sensitivity}
                for c, p in self.warning_prefs.items()
            },
        }

    @classmethod
    def from_dict(cls, d: dict) -> "UserModel":
        prefs = {
            c: WarningPref(enabled=p.get("enabled", True), sensitivity=p.get("sensitivity", "normal"))
            for c, p in d.get("warning_prefs", {}).items()
        }
        model = cls(
            user_id=d["user_id"],
            interests=list(d.get("interests", [])),
            domain_knowledge=dict(d.get("domain_knowledge", {})),
            digital_literacy=d.get("digital_literacy", "intermediate"),
            warning_prefs=prefs,
        )
        model.validate()
        return model


def default_user(user_id: str) -> UserModel:
    return UserModel(user_id=user_id)


class UserStore:
    """JSON-file persistence of user models; updates are atomic per user."""

    def __init__(self, path: str | Path) -> None:
        self.path = Path(path)
        self._lock = threading.Lock()
        self._users: dict[str, UserModel] = {}
        if self.path.exists():
            raw = json.loads(self.path.read_text(encoding="utf-8"))
            self._users = {uid: UserModel.from_dict(u) for uid, u in raw.items()}

    def get(self, user_id: str) -> UserModel:
        with self._lock:
            return self._users.get(user_id) or default_user(user_id)

    def update(self, user_id: str, patch: dict) -> UserModel:
        """Merge a partial patch into the stored (or default) model."""
        unknown = set(patch) - {"interests", "domain_knowledge", "digital_literacy", "warning_prefs"}
        if unknown:
            raise ValidationError(f"unknown user model fields: {sorted(unknown)}")
        with self._lock:
            current = self._users.get(user_id) or default_user(user_id)
            merged = current.to_dict()
            for key in ("interests", "domain_knowledge", "digital_literacy"):
                if key in patch:
                    merged[key] = patch[key]
            for criterion, pref_patch in patch.get("warning_prefs", {}).items():
                if criterion not in CRITERIA:
                    raise ValidationError(f"warning_prefs for unknown criterion: {criterion}")
                if not isinstance(pref_patch, dict):
                    raise ValidationError("warning_prefs entries must be objects")
                merged["warning_prefs"][criterion] = {
                    **merged["warning_prefs"][criterion],
                    **pref_patch,
                }
            model = UserModel.from_dict(merged)  # validates
            self._users[user_id] = model
            self._save()
            return model

    def _save(self) -> None:
        serialized = {uid: m.to_dict() for uid, m in sorted(self._users.items())}
        self.path.write_text(json.dumps(serialized, indent=2, sort_keys=True), encoding="utf-8")


@dataclass
class Icon:
    state: str
    short_label: str
    summary_text: str
    detail_text: str

    def to_dict(self) -> dict:
        return {
            "state": self.state,
            "short_label": self.short_label,
            "summary_text": self.summary_text,
            "detail_text": self.detail_text,
        }


@dataclass
class Presentation:
    badge: str
    icons: dict[str, Icon]

    def to_dict(self) -> dict:
        return {"badge": self.badge, "icons": {c: i.to_dict() for c, i in self.icons.items()}}


def effective_caution(result, pref: WarningPref) -> bool:
    """A caution counts iff the criterion is enabled and survives the
    user's sensitivity floor (low mutes scores under 0.25; normal and
    high never mute)."""
    if result.status != STATUS_CAUTION or not pref.enabled:
        return False
    if pref.sensitivity == "low" and result.score < LOW_SENSITIVITY_FLOOR:
        return False
    return True


class Presenter:
    """Pure mapping (record, user) -> Presentation, template-backed."""

    def __init__(self, templates_dir: str | Path) -> None:
        self.templates_dir = Path(templates_dir)
        self._cache: dict[tuple[str, str], str] = {}

    def _template(self, criterion: str, literacy: str) -> str:
        key = (criterion, literacy)
        if key not in self._cache:
            path = self.templates_dir / f"{criterion}.{literacy}.txt"
            self._cache[key] = path.read_text(encoding="utf-8").strip()
        return self._cache[key]

    @staticmethod
    def _threshold_from(result) -> str:
        for item in result.evidence:
            if isinstance(item, dict) and "threshold" in item:
                value = item["threshold"]
                return f"{value:g}" if isinstance(value, (int, float)) else str(value)
        return "n/a"

    def _detail_text(self, record_topic: str, result, user: UserModel, pref: WarningPref) -> str:
        template = self._template(result.criterion, user.digital_literacy)
        lines = []
        known_topics = set(user.interests) | set(user.domain_knowledge)
        for line in template.splitlines():
            if line.startswith("[topic:"):
                tag, _, rest = line[len("[topic:") :].partition("]")
                if tag == record_topic and tag in known_topics:
                    lines.append(rest.strip())
                continue
            lines.append(line)
        text = "\n".join(lines).format(
            score=f"{result.score:.2f}", threshold=self._threshold_from(result)
        )
        if result.explanation:
            text = f"{text}\n\n{result.explanation}"
        if pref.sensitivity == "high" and result.evidence:
            text += "\n\nEvidence: " + json.dumps(result.evidence, sort_keys=True)
        return text

    def present(self, record: VerificationRecord | None, user: UserModel) -> Presentation:
        user.validate()
        if record is None:
            icons = {
                c: Icon(
                    state=ICON_UNAVAILABLE,
                    short_label=CRITERION_LABELS[c],
                    summary_text="Not yet analysed.",
                    detail_text="This content has not been analysed yet.",
                )
                for c in CRITERIA
            }
            return Presentation(badge=BADGE_UNKNOWN, icons=icons)

        icons: dict[str, Icon] = {}
        any_caution = False
        for criterion in CRITERIA:
            result = record.results[criterion]
            pref = user.warning_prefs[criterion]
            label = CRITERION_LABELS[criterion]
            if not pref.enabled:
                icons[criterion] = Icon(
                    state=ICON_UNAVAILABLE,
                    short_label=label,
                    summary_text=f"{label} warnings are turned off.",
                    detail_text=f"You have disabled {label} warnings in your settings.",
                )
                continue
            if result.status == STATUS_UNAVAILABLE:
                icons[criterion] = Icon(
                    state=ICON_UNAVAILABLE,
                    short_label=label,
                    summary_text=f"{label} could not be assessed.",
                    detail_text=result.explanation or f"{label} could not be assessed for this content.",
                )
                continue
            flagged = effective_caution(result, pref)
            any_caution = any_caution or flagged
            icons[criterion] = Icon(
                state=ICON_CAUTION if flagged else ICON_PASS,
                short_label=label,
                summary_text=(
                    f"{label}: caution advised." if flagged else f"{label}: no issues found."
                ),
                detail_text=self._detail_text(record.topic, result, user, pref),
            )
        return Presentation(badge=BADGE_CAUTION if any_caution else BADGE_OK, icons=icons)
