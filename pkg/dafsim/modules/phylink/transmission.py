"""Two-hop D-AF transmission of differentially encoded frames.

    y0[k]   = sqrt(P0) h0[k] s[k] + w0[k]
    ysr_i[k] = sqrt(P0) hsr_i[k] s[k] + wsr_i[k]
    yi[k]   = A_i hrd_i[k] ysr_i[k] + wrd_i[k]

The equivalent relay noise A_i hrd_i wsr_i + wrd_i is never sampled as an
aggregate; both hops are simulated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from dafsim.core.errors import require
from dafsim.core.scenarios import ScenarioConfig
from dafsim.modules.channel import make_fading
from dafsim.modules.mathkernel import sample_complex_gaussian, stream
from dafsim.modules.phylink.constellation import bits_to_indices, differential_encode_indices
from dafsim.modules.phylink.power import PowerAllocation


@dataclass(frozen=True, slots=True)
class FrameGains:
    """Link gains over a frame; relay arrays have the relay index first."""

    h_sd: np.ndarray
    h_sr: np.ndarray
    h_rd: np.ndarray

    def __post_init__(self) -> None:
        for name in ("h_sd", "h_sr", "h_rd"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=complex))


@dataclass(frozen=True, slots=True)
class FrameObservation:
    y0: np.ndarray
    yi: np.ndarray
    genie_h_rd: np.ndarray | None = None

    def __post_init__(self) -> None:
        L = self.y0.shape[-1]
        require(self.yi.shape[-1] == L, "direct and relay observations must share one length")
        if self.genie_h_rd is not None:
            require(self.genie_h_rd.shape == self.yi.shape, "genie gains must match the relay observations")

    @property
    def length(self) -> int:
        return self.y0.shape[-1]


def draw_gains(cfg: ScenarioConfig, rng: np.random.Generator, batch: int, length: int) -> FrameGains:
    n = cfg.spacing_n
    h_sd = make_fading(cfg.generator, cfg.f_sd, n).gains(rng, batch, length)
    h_sr = np.empty((cfg.R, batch, length), dtype=complex)
    h_rd = np.empty((cfg.R, batch, length), dtype=complex)
    for i in range(cfg.R):
        h_sr[i] = make_fading(cfg.generator, cfg.f_sr[i], n).gains(rng, batch, length)
        h_rd[i] = make_fading(cfg.generator, cfg.f_rd[i], n).gains(rng, batch, length)
    return FrameGains(h_sd=h_sd, h_sr=h_sr, h_rd=h_rd)


def transmit(
    s: np.ndarray,
    gains: FrameGains,
    alloc: PowerAllocation,
    rng: np.random.Generator,
    noise_variance: float = 1.0,
) -> FrameObservation:
    """Pass transmitted symbols ``s`` (..., L) through both hops of every relay."""
    require(noise_variance >= 0, "noise_variance must be >= 0")
    R = len(alloc.Pi)
    require(gains.h_sr.shape[0] == R, f"gains cover {gains.h_sr.shape[0]} relays, allocation {R}")
    amp = math.sqrt(alloc.P0)
    shape = np.shape(s)

    y0 = amp * gains.h_sd * s + sample_complex_gaussian(rng, noise_variance, shape)
    yi = np.empty((R,) + shape, dtype=complex)
    for i, A in enumerate(alloc.amplification):
        y_sr = amp * gains.h_sr[i] * s + sample_complex_gaussian(rng, noise_variance, shape)
        yi[i] = A * gains.h_rd[i] * y_sr + sample_complex_gaussian(rng, noise_variance, shape)
    return FrameObservation(y0=y0, yi=yi, genie_h_rd=gains.h_rd)


def simulate_frame(
    scenario: ScenarioConfig,
    alloc: PowerAllocation,
    data_bits,
    seed: int,
    *,
    noise_variance: float = 1.0,
    gains: FrameGains | None = None,
) -> FrameObservation:
    """One frame: a reference symbol followed by the differentially encoded data bits.

    ``gains`` overrides the channel draw (shape (L,) for the direct link and
    (R, L) for the relay links).
    """
    indices = bits_to_indices(np.asarray(data_bits).ravel(), scenario.bits_per_symbol)
    length = indices.size + 1
    require(length >= 2, "a frame needs at least one data symbol after the reference")
    s = differential_encode_indices(indices, scenario.M)
    rng = stream(seed)
    if gains is None:
        g = draw_gains(scenario, rng, 1, length)
        gains = FrameGains(h_sd=g.h_sd[0], h_sr=g.h_sr[:, 0], h_rd=g.h_rd[:, 0])
    require(np.shape(gains.h_sd)[-1] == length, "gain arrays must cover the whole frame")
    return transmit(s, gains, alloc, rng, noise_variance)
