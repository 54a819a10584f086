"""Single-link fading generators.

Every link gain is a unit-power complex Rayleigh process whose lag-m
autocorrelation follows the Jakes relation J0(2 pi f n m), f being the
normalized Doppler and n the channel-use spacing between consecutive
samples of that link.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

from dafsim.core.config import settings
from dafsim.core.errors import ArgumentError, require
from dafsim.core.scenarios import Generator, ScenarioConfig
from dafsim.modules.mathkernel import bessel_j0, sample_complex_gaussian, stream

logger = logging.getLogger("dafsim.channel")

_SOS_CHUNK = 1 << 15


def _check_doppler(f: float) -> None:
    require(math.isfinite(f) and 0.0 <= f < 0.5, f"normalized Doppler must be in [0, 0.5), got {f}")


def jakes_autocorrelation(f: float, n: int) -> float:
    _check_doppler(f)
    require(n >= 0, f"lag must be >= 0, got {n}")
    return bessel_j0(2.0 * math.pi * f * n)


@dataclass(frozen=True, slots=True)
class FadingSpec:
    normalized_doppler: float
    spacing_n: int = 1
    length: int = 1

    def __post_init__(self) -> None:
        _check_doppler(self.normalized_doppler)
        require(self.spacing_n >= 1, "spacing_n must be >= 1")
        require(self.length >= 1, "length must be >= 1")

    @property
    def alpha(self) -> float:
        return jakes_autocorrelation(self.normalized_doppler, self.spacing_n)


def ar1_step(h_prev: complex, alpha: float, innovation: complex) -> complex:
    """One AR(1) update: alpha * h_prev + sqrt(1 - alpha^2) * innovation."""
    if abs(alpha) > 1.0:
        raise ArgumentError(f"|alpha| must be <= 1, got {alpha}")
    return alpha * h_prev + math.sqrt(1.0 - alpha * alpha) * innovation


def ar1_process(alpha: float, innovations: np.ndarray, h0) -> np.ndarray:
    """Run the AR(1) recursion along the last axis.

    ``h0`` is the state just before the first innovation (scalar or one value
    per leading index); ``out[..., k]`` equals ``ar1_step`` iterated k+1 times.
    """
    if abs(alpha) > 1.0:
        raise ArgumentError(f"|alpha| must be <= 1, got {alpha}")
    e = np.asarray(innovations, dtype=complex)
    start = np.broadcast_to(np.asarray(h0, dtype=complex), e.shape[:-1])
    zi = (alpha * start)[..., np.newaxis]
    out, _ = lfilter([math.sqrt(1.0 - alpha * alpha)], [1.0, -alpha], e, axis=-1, zi=zi)
    return out


class LinkFading:
    """Gain generator for one link class (fixed Doppler and spacing)."""

    kind: Generator

    def __init__(self, normalized_doppler: float, spacing_n: int = 1):
        self.spec = FadingSpec(normalized_doppler=normalized_doppler, spacing_n=spacing_n)

    @property
    def alpha(self) -> float:
        return self.spec.alpha

    def gains(self, rng: np.random.Generator, batch: int, length: int) -> np.ndarray:
        """(batch, length) complex gains; rows are independent realizations."""
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"{type(self).__name__}(f={self.spec.normalized_doppler}, n={self.spec.spacing_n})"


class Ar1Fading(LinkFading):
    kind = Generator.AR1

    def gains(self, rng: np.random.Generator, batch: int, length: int) -> np.ndarray:
        h0 = sample_complex_gaussian(rng, 1.0, batch)
        if length == 1:
            return h0[:, np.newaxis]
        e = sample_complex_gaussian(rng, 1.0, (batch, length - 1))
        tail = ar1_process(self.alpha, e, h0)
        return np.concatenate([h0[:, np.newaxis], tail], axis=1)


class JakesSosFading(LinkFading):
    """Sum-of-sinusoids Jakes generator with randomized arrival angles and phases.

    X_c(t) = sqrt(2/S) sum cos(w t cos a_s + phi_s), X_s(t) likewise with sin a_s
    and independent phases, a_s = (2 pi s - pi + theta) / (4 S); the gain is
    (X_c + j X_s) / sqrt(2) sampled at t = k * spacing_n.
    """

    kind = Generator.JAKES_SOS

    def __init__(self, normalized_doppler: float, spacing_n: int = 1, sinusoids: int | None = None):
        super().__init__(normalized_doppler, spacing_n)
        self.sinusoids = int(sinusoids or settings.SOS_SINUSOIDS)
        require(self.sinusoids >= 1, "sinusoids must be >= 1")
        if normalized_doppler == 0.0:
            logger.warning("sum-of-sinusoids generator with zero Doppler: gains are held constant")

    def gains(self, rng: np.random.Generator, batch: int, length: int) -> np.ndarray:
        f = self.spec.normalized_doppler
        if f == 0.0:
            h = sample_complex_gaussian(rng, 1.0, batch)
            return np.repeat(h[:, np.newaxis], length, axis=1)

        S = self.sinusoids
        s = np.arange(1, S + 1)
        theta = rng.uniform(-np.pi, np.pi, size=(batch, 1))
        angles = (2.0 * np.pi * s - np.pi + theta) / (4.0 * S)  # (batch, S)
        phi_c = rng.uniform(-np.pi, np.pi, size=(batch, S))
        phi_s = rng.uniform(-np.pi, np.pi, size=(batch, S))
        w = 2.0 * np.pi * f
        wc = (w * np.cos(angles))[:, :, np.newaxis]
        ws = (w * np.sin(angles))[:, :, np.newaxis]
        amp = math.sqrt(2.0 / S)

        out = np.empty((batch, length), dtype=complex)
        for start in range(0, length, _SOS_CHUNK):
            stop = min(start + _SOS_CHUNK, length)
            t = (np.arange(start, stop, dtype=float) * self.spec.spacing_n)[np.newaxis, np.newaxis, :]
            xc = amp * np.cos(wc * t + phi_c[:, :, np.newaxis]).sum(axis=1)
            xs = amp * np.cos(ws * t + phi_s[:, :, np.newaxis]).sum(axis=1)
            out[:, start:stop] = (xc + 1j * xs) / math.sqrt(2.0)
        return out


def make_fading(generator: Generator | str, normalized_doppler: float, spacing_n: int = 1) -> LinkFading:
    kind = Generator(generator)
    if kind is Generator.JAKES_SOS:
        return JakesSosFading(normalized_doppler, spacing_n)
    return Ar1Fading(normalized_doppler, spacing_n)


def generate_jakes_process(spec: FadingSpec, seed: int) -> np.ndarray:
    """One sum-of-sinusoids realization of length ``spec.length``."""
    gen = JakesSosFading(spec.normalized_doppler, spec.spacing_n)
    return gen.gains(stream(seed), 1, spec.length)[0]


@dataclass(frozen=True, slots=True)
class LinkAlphas:
    """Per-link autocorrelations of a scenario, all derived from its Dopplers."""

    alpha0: float
    alpha_sr: tuple[float, ...]
    alpha_rd: tuple[float, ...]

    @property
    def alphai(self) -> tuple[float, ...]:
        return tuple(a * b for a, b in zip(self.alpha_sr, self.alpha_rd))


def scenario_alphas(cfg: ScenarioConfig) -> LinkAlphas:
    n = cfg.spacing_n
    return LinkAlphas(
        alpha0=jakes_autocorrelation(cfg.f_sd, n),
        alpha_sr=tuple(jakes_autocorrelation(f, n) for f in cfg.f_sr),
        alpha_rd=tuple(jakes_autocorrelation(f, n) for f in cfg.f_rd),
    )
