"""Configuration: one TOML file, ``PROV_*`` environment overrides.

Unknown keys are rejected and every threshold is range-checked at load
time. Environment variables nest with double underscores, e.g.
``PROV_TONE__THRESHOLDS__FEAR=2.0`` overrides ``tone.thresholds.fear``.
"""

from __future__ import annotations

import os
import sys
from pathlib import Path
from typing import Any, Callable

from .errors import ConfigError

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

ENV_PREFIX = "PROV_"


def _positive(v) -> bool:
    return v > 0


def _non_negative(v) -> bool:
    return v >= 0


def _unit_interval(v) -> bool:
    return 0.0 <= v <= 1.0


def _port(v) -> bool:
    return 1 <= v <= 65535


def _band(v) -> bool:
    return isinstance(v, list) and len(v) == 2 and v[0] <= v[1]


# dotted key -> (default, type, range check)
SCHEMA: dict[str, tuple[Any, type, Callable[[Any], bool] | None]] = {
    "data_dir": ("./provenance-data", str, None),
    "server.port": (8420, int, _port),
    "server.ui_origin": ("*", str, None),
    "workflow.analyzer_timeout_secs": (30.0, float, _positive),
    "workflow.dispatch_mode": ("inprocess", str, lambda v: v in ("inprocess", "http")),
    "workflow.analyzer_base_url": ("", str, None),
    "ingestion.poll_interval_secs": (60.0, float, _positive),
    "ingestion.api_token": ("", str, None),
    "ingestion.fixture_path": ("", str, None),
    "text_similarity.k1": (1.2, float, _positive),
    "text_similarity.b": (0.75, float, _unit_interval),
    "text_similarity.top_k": (10, int, _positive),
    "text_similarity.tau_subj": (0.3, float, _unit_interval),
    "text_similarity.tau_sim": (0.75, float, _unit_interval),
    "text_similarity.tau_ratio": (0.5, float, _unit_interval),
    "text_similarity.min_facts": (3, int, _non_negative),
    "text_similarity.lexicon_path": ("", str, None),
    "text_similarity.corpus_dir": ("", str, None),
    "tone.thresholds.fear": (1.5, float, _positive),
    "tone.thresholds.anger": (1.5, float, _positive),
    "tone.thresholds.sadness": (1.5, float, _positive),
    "tone.thresholds.doubt": (2.0, float, _positive),
    "tone.thresholds.joy": (0.5, float, _positive),
    "tone.min_tokens": (20, int, _non_negative),
    "tone.lexicon_path": ("", str, None),
    "writing_quality.threshold": (50.0, float, lambda v: 0.0 <= v <= 100.0),
    "writing_quality.min_tokens": (30, int, _non_negative),
    "writing_quality.grade_band": ([6.0, 16.0], list, _band),
    "writing_quality.terms_path": ("", str, None),
    "media.delta_max": (16, int, lambda v: 0 <= v <= 64),
    "media.delta_match": (10, int, lambda v: 0 <= v <= 64),
    "media.block_threshold": (25.0, float, _non_negative),
    "media.keyframe_stride": (0, int, _non_negative),
    "companion.templates_dir": ("", str, None),
}


class Config:
    def __init__(self, values: dict[str, Any]) -> None:
        self._values = values

    def get(self, dotted_key: str) -> Any:
        return self._values[dotted_key]

    @property
    def data_dir(self) -> Path:
        return Path(self.get("data_dir"))

    def as_tree(self) -> dict:
        tree: dict = {}
        for dotted, value in self._values.items():
            node = tree
            *parents, leaf = dotted.split(".")
            for part in parents:
                node = node.setdefault(part, {})
            node[leaf] = value
        return tree

    def dump_toml(self) -> str:
        """Serialize the effective configuration; reloading the output
        yields an identical tree."""
        tree = self.as_tree()
        lines: list[str] = []

        def emit_value(v: Any) -> str:
            if isinstance(v, bool):
                return "true" if v else "false"
            if isinstance(v, (int, float)):
                return repr(v)
            if isinstance(v, list):
                return "[" + ", ".join(emit_value(x) for x in v) + "]"
            return '"' + str(v).replace("\\", "\\\\").replace('"', '\\"') + '"'

        def emit(table: dict, prefix: str) -> None:
            scalars = {k: v for k, v in table.items() if not isinstance(v, dict)}
            subtables = {k: v for k, v in table.items() if isinstance(v, dict)}
            if prefix and scalars:
                lines.append(f"[{prefix}]")
            for k, v in sorted(scalars.items()):
                lines.append(f"{k} = {emit_value(v)}")
            if scalars:
                lines.append("")
            for k, v in sorted(subtables.items()):
                emit(v, f"{prefix}.{k}" if prefix else k)

        emit(tree, "")
        return "\n".join(lines).rstrip() + "\n"


def _flatten(tree: dict, prefix: str = "") -> dict[str, Any]:
    flat: dict[str, Any] = {}
    for key, value in tree.items():
        dotted = f"{prefix}.{key}" if prefix else key
        if isinstance(value, dict):
            flat.update(_flatten(value, dotted))
        else:
            flat[dotted] = value
    return flat


def _coerce(dotted: str, value: Any) -> Any:
    default, expected, check = SCHEMA[dotted]
    if expected is float and isinstance(value, int) and not isinstance(value, bool):
        value = float(value)
    if expected is list:
        if not isinstance(value, list):
            raise ConfigError(f"{dotted}: expected a list, got {value!r}")
        try:
            value = [float(x) for x in value]
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"{dotted}: list entries must be numbers") from exc
    elif not isinstance(value, expected) or isinstance(value, bool) and expected is not bool:
        raise ConfigError(f"{dotted}: expected {expected.__name__}, got {value!r}")
    if check is not None and not check(value):
        raise ConfigError(f"{dotted}: value {value!r} out of range")
    return value


def _parse_env_value(raw: str) -> Any:
    lowered = raw.lower()
    if lowered in ("true", "false"):
        return lowered == "true"
    try:
        return int(raw)
    except ValueError:
        pass
    try:
        return float(raw)
    except ValueError:
        pass
    return raw


def load_config(path: str | Path | None = None, env: dict[str, str] | None = None) -> Config:
    values = {dotted: default for dotted, (default, _, _) in SCHEMA.items()}

    if path is not None:
        try:
            with open(path, "rb") as fh:
                tree = tomllib.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}") from exc
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"invalid TOML in {path}: {exc}") from exc
        for dotted, value in _flatten(tree).items():
            if dotted not in SCHEMA:
                raise ConfigError(f"unknown config key: {dotted}")
            values[dotted] = _coerce(dotted, value)

    env = os.environ if env is None else env
    for name, raw in env.items():
        if not name.startswith(ENV_PREFIX):
            continue
        dotted = name[len(ENV_PREFIX) :].lower().replace("__", ".")
        if dotted not in SCHEMA:
            raise ConfigError(f"unknown config key from environment: {name}")
        values[dotted] = _coerce(dotted, _parse_env_value(raw))

    return Config(values)
