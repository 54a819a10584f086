"""Scenario catalog and the validated scenario model.

One source of truth for:
  - the standard fading presets (normalized Doppler per link class)
  - combining-scheme and channel-generator identifiers
  - ScenarioConfig, the validated description of one simulated network

Autocorrelations are never stored here; they are always derived from the
Doppler values through the Jakes relation in the channel module.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Annotated

from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, field_validator

from dafsim.core.config import settings
from dafsim.core.errors import ConfigError


class Scheme(str, enum.Enum):
    CDD = "cdd"
    TVD = "tvd"
    OPTIMUM = "optimum"


SCHEME_LABELS = {
    Scheme.CDD: "conventional differential detection",
    Scheme.TVD: "time-varying differential detection",
    Scheme.OPTIMUM: "genie MRC (optimum weights)",
}


class Generator(str, enum.Enum):
    AR1 = "AR1"
    JAKES_SOS = "JAKES_SOS"


GENERATOR_LABELS = {
    Generator.AR1: "first-order autoregressive",
    Generator.JAKES_SOS: "sum-of-sinusoids Jakes",
}


@dataclass(frozen=True, slots=True)
class ScenarioPreset:
    """One row of the fading-scenario table."""

    name: str
    label: str
    f_sd: float
    f_sr: float
    f_rd: float


SCENARIO_PRESETS: tuple[ScenarioPreset, ...] = (
    ScenarioPreset(name="scenario_I", label="all links fairly slow", f_sd=0.005, f_sr=0.005, f_rd=0.005),
    ScenarioPreset(name="scenario_II", label="fast SD/SR, slow RD", f_sd=0.05, f_sr=0.05, f_rd=0.005),
    ScenarioPreset(name="scenario_III", label="very fast SD/SR, fairly fast RD", f_sd=0.1, f_sr=0.1, f_rd=0.05),
)


def scenario_preset(name: str) -> ScenarioPreset | None:
    key = (name or "").strip().lower()
    for p in SCENARIO_PRESETS:
        if p.name.lower() == key:
            return p
    return None


Doppler = Annotated[float, Field(ge=0.0, lt=0.5)]


class ScenarioConfig(BaseModel):
    """Validated scenario: relays, constellation, per-link Dopplers, framing, seed."""

    model_config = ConfigDict(extra="forbid", frozen=True, use_enum_values=False)

    name: str = "custom"
    R: int = Field(ge=0, le=20)
    M: int = Field(ge=2)
    f_sd: Doppler
    f_sr: list[Doppler]
    f_rd: list[Doppler]
    spacing_n: int = Field(default=1, ge=1)
    generator: Generator = Generator.AR1
    frame_length: int = Field(default_factory=lambda: settings.FRAME_LENGTH, ge=1)
    seed: int = Field(default=42, ge=0, lt=2**64)

    @field_validator("M")
    @classmethod
    def _power_of_two(cls, v: int) -> int:
        if v & (v - 1):
            raise ValueError("M must be a power of two")
        return v

    @field_validator("f_sr", "f_rd")
    @classmethod
    def _one_per_relay(cls, v: list[float], info: ValidationInfo) -> list[float]:
        relays = info.data.get("R")
        if relays is not None and len(v) != relays:
            raise ValueError(f"expected {relays} entries (one per relay), got {len(v)}")
        return v

    @property
    def bits_per_symbol(self) -> int:
        return self.M.bit_length() - 1


def preset_config(name: str, relays: int, M: int, **overrides) -> ScenarioConfig:
    """Build a ScenarioConfig from a named preset."""
    p = scenario_preset(name)
    if p is None:
        known = ", ".join(x.name for x in SCENARIO_PRESETS)
        raise ConfigError(f"unknown preset '{name}' (known: {known})")
    data = {
        "name": p.name,
        "R": relays,
        "M": M,
        "f_sd": p.f_sd,
        "f_sr": [p.f_sr] * relays,
        "f_rd": [p.f_rd] * relays,
    }
    data.update(overrides)
    return ScenarioConfig(**data)
