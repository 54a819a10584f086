"""Cascaded source-relay-destination channel h_i = h_sr * h_rd.

The exact recursion advances both hops with their own AR(1) models and
writes the product as alpha_i * h_i[k-1] + delta_i[k], with
alpha_i = alpha_sr * alpha_rd. The model recursion keeps only the
second term of delta_i, giving an AR(1) process in h_i itself:

    h_i[k] = alpha_i h_i[k-1] + sqrt(1 - alpha_i^2) h_rd[k-1] e_sr[k]
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from dafsim.core.errors import require
from dafsim.modules.channel.fading import ar1_process
from dafsim.modules.mathkernel import sample_complex_gaussian


@dataclass(frozen=True, slots=True)
class CascadedChannelState:
    h_prev: complex
    h_rd_prev: complex
    alpha_sr: float
    alpha_rd: float
    # SR gain at k-1; derived from h_prev / h_rd_prev when not given
    h_sr_prev: complex | None = None

    def __post_init__(self) -> None:
        require(0.0 <= self.alpha_sr <= 1.0, f"alpha_sr must be in [0, 1], got {self.alpha_sr}")
        require(0.0 <= self.alpha_rd <= 1.0, f"alpha_rd must be in [0, 1], got {self.alpha_rd}")
        if self.h_sr_prev is None:
            require(self.h_rd_prev != 0, "h_sr_prev is required when h_rd_prev is zero")

    @property
    def alpha_i(self) -> float:
        return self.alpha_sr * self.alpha_rd

    @property
    def sr_prev(self) -> complex:
        return self.h_sr_prev if self.h_sr_prev is not None else self.h_prev / self.h_rd_prev


def _exact_delta(h_sr_prev, h_rd_prev, a_sr: float, a_rd: float, e_sr, e_rd):
    c_sr = math.sqrt(1.0 - a_sr * a_sr)
    c_rd = math.sqrt(1.0 - a_rd * a_rd)
    return a_sr * c_rd * h_sr_prev * e_rd + a_rd * c_sr * h_rd_prev * e_sr + c_sr * c_rd * e_sr * e_rd


def cascaded_step_exact(state: CascadedChannelState, e_sr: complex, e_rd: complex) -> tuple[complex, complex]:
    """Advance both hops; returns (h_i[k], delta_i[k])."""
    delta = _exact_delta(state.sr_prev, state.h_rd_prev, state.alpha_sr, state.alpha_rd, e_sr, e_rd)
    return state.alpha_i * state.h_prev + delta, delta


def cascaded_step_model(state: CascadedChannelState, e_sr: complex) -> complex:
    a = state.alpha_i
    return a * state.h_prev + math.sqrt(1.0 - a * a) * state.h_rd_prev * e_sr


@dataclass(frozen=True, slots=True)
class CascadedSeries:
    """(batch, length) arrays: cascaded gain, its innovation term and the RD gain."""

    h: np.ndarray
    delta: np.ndarray
    h_rd: np.ndarray


def _hops(alpha_sr: float, alpha_rd: float, length: int, rng: np.random.Generator, batch: int):
    require(0.0 <= alpha_sr <= 1.0 and 0.0 <= alpha_rd <= 1.0, "alphas must be in [0, 1]")
    require(length >= 1 and batch >= 1, "length and batch must be >= 1")
    sr0 = sample_complex_gaussian(rng, 1.0, batch)
    rd0 = sample_complex_gaussian(rng, 1.0, batch)
    e_sr = sample_complex_gaussian(rng, 1.0, (batch, length))
    e_rd = sample_complex_gaussian(rng, 1.0, (batch, length))
    h_rd = ar1_process(alpha_rd, e_rd, rd0)
    h_rd_prev = np.concatenate([rd0[:, np.newaxis], h_rd[:, :-1]], axis=1)
    return sr0, rd0, e_sr, e_rd, h_rd, h_rd_prev


def cascaded_series_exact(
    alpha_sr: float, alpha_rd: float, length: int, rng: np.random.Generator, batch: int = 1
) -> CascadedSeries:
    sr0, rd0, e_sr, _, h_rd, _ = _hops(alpha_sr, alpha_rd, length, rng, batch)
    h_sr = ar1_process(alpha_sr, e_sr, sr0)
    h = h_sr * h_rd
    h_prev = np.concatenate([(sr0 * rd0)[:, np.newaxis], h[:, :-1]], axis=1)
    delta = h - alpha_sr * alpha_rd * h_prev
    return CascadedSeries(h=h, delta=delta, h_rd=h_rd)


def cascaded_series_model(
    alpha_sr: float, alpha_rd: float, length: int, rng: np.random.Generator, batch: int = 1
) -> CascadedSeries:
    sr0, rd0, e_sr, _, h_rd, h_rd_prev = _hops(alpha_sr, alpha_rd, length, rng, batch)
    a = alpha_sr * alpha_rd
    drive = h_rd_prev * e_sr
    h = ar1_process(a, drive, sr0 * rd0)
    return CascadedSeries(h=h, delta=math.sqrt(1.0 - a * a) * drive, h_rd=h_rd)
