"""Scenario files: flat ``key = value`` text.

    # scenario II with two relays
    name = scenario_II
    R = 2
    M = 4
    seed = 7

Keys are exactly the ScenarioConfig fields. List values (f_sr, f_rd) are
comma separated. When ``name`` is a preset, any Doppler key left out is
taken from the preset.
"""

from __future__ import annotations

import logging
from pathlib import Path

from pydantic import ValidationError

from dafsim.core.errors import ConfigError
from dafsim.core.scenarios import ScenarioConfig, preset_config, scenario_preset

logger = logging.getLogger("dafsim.harness")

LIST_KEYS = ("f_sr", "f_rd")
KNOWN_KEYS = tuple(ScenarioConfig.model_fields)


def _read(source: str | Path) -> tuple[str, str]:
    if isinstance(source, Path) or ("\n" not in source and "=" not in source):
        path = Path(source)
        try:
            return path.read_text(encoding="utf-8"), str(path)
        except OSError as e:
            raise ConfigError(f"{path}: {e.strerror or e}") from e
    return source, "<text>"


def parse_config_text(text: str, origin: str = "<text>") -> dict[str, object]:
    data: dict[str, object] = {}
    problems: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            problems.append(f"{origin}:{lineno}: expected 'key = value', got {raw.strip()!r}")
            continue
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in KNOWN_KEYS:
            problems.append(f"{origin}:{lineno}: unknown key '{key}'")
            continue
        if key in data:
            problems.append(f"{origin}:{lineno}: duplicate key '{key}'")
            continue
        if key in LIST_KEYS:
            data[key] = [v.strip() for v in value.split(",") if v.strip()]
        else:
            data[key] = value
    if problems:
        raise ConfigError(problems)
    return data


def _fill_from_preset(data: dict[str, object]) -> None:
    preset = scenario_preset(str(data.get("name", "")))
    if preset is None:
        return
    data["name"] = preset.name
    try:
        relays = int(str(data.get("R", "")))
    except ValueError:
        return
    data.setdefault("f_sd", preset.f_sd)
    data.setdefault("f_sr", [preset.f_sr] * relays)
    data.setdefault("f_rd", [preset.f_rd] * relays)


def validation_problems(err: ValidationError) -> list[str]:
    out = []
    for e in err.errors():
        loc = ".".join(str(p) for p in e.get("loc", ())) or "config"
        out.append(f"{loc}: {e.get('msg', 'invalid value')}")
    return out


def load_config(source: str | Path) -> ScenarioConfig:
    """Parse and validate a scenario file (path) or inline text."""
    text, origin = _read(source)
    data = parse_config_text(text, origin)
    _fill_from_preset(data)
    try:
        cfg = ScenarioConfig(**data)
    except ValidationError as e:
        raise ConfigError([f"{origin}: {p}" for p in validation_problems(e)]) from e
    logger.debug("loaded scenario %s from %s", cfg.name, origin)
    return cfg


def load_preset(name: str, relays: int, M: int, **overrides) -> ScenarioConfig:
    try:
        return preset_config(name, relays, M, **overrides)
    except ValidationError as e:
        raise ConfigError(validation_problems(e)) from e
