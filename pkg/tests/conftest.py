from __future__ import annotations

import pytest

from dafsim.core.scenarios import ScenarioConfig, preset_config


@pytest.fixture
def scenario_ii() -> ScenarioConfig:
    return preset_config("scenario_II", 2, 2)


@pytest.fixture
def static_config() -> ScenarioConfig:
    """Two relays, every link frozen (all Dopplers zero), short frames."""
    return ScenarioConfig(name="static", R=2, M=4, f_sd=0.0, f_sr=[0.0, 0.0], f_rd=[0.0, 0.0], frame_length=100)


@pytest.fixture
def short_frames():
    """Factory for preset scenarios with 100-symbol frames (fast Monte Carlo)."""

    def make(name: str = "scenario_I", relays: int = 2, M: int = 2, **overrides) -> ScenarioConfig:
        overrides.setdefault("frame_length", 100)
        return preset_config(name, relays, M, **overrides)

    return make
