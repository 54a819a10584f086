"""Per-branch SNR factors and their high-power limits."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from dafsim.core.errors import ArgumentError, require


def gamma0(alpha0: float, P0: float) -> float:
    require(P0 > 0, "P0 must be > 0")
    return alpha0**2 * P0 / (2.0 * P0 * (1.0 - alpha0**2) + 4.0 + 2.0 / P0)


def gamma_i(alphai: float, rho_i: float) -> float:
    require(rho_i > 0, "rho_i must be > 0")
    return alphai**2 * rho_i / (2.0 * rho_i * (1.0 - alphai**2) + 4.0 + 2.0 / rho_i)


def relay_snr(A, P0: float, eta):
    """rho_i = A^2 P0 eta / (A^2 eta + 1), eta = |h_rd|^2."""
    A2 = np.asarray(A, dtype=float) ** 2
    eta = np.asarray(eta, dtype=float)
    return A2 * P0 * eta / (A2 * eta + 1.0)


def relay_gamma(alphai, A, P0: float, eta, *, exact: bool = True):
    """gamma_i as a function of eta = |h_rd|^2 (vectorized; 0 where eta = 0).

    ``exact=False`` drops the 2/rho_i term of the denominator.
    """
    rho, a2 = np.broadcast_arrays(np.asarray(relay_snr(A, P0, eta), dtype=float), np.asarray(alphai, dtype=float) ** 2)
    live = rho > 0
    den = 2.0 * rho * (1.0 - a2) + 4.0
    if exact:
        den = den + np.divide(2.0, rho, out=np.zeros_like(rho), where=live)
    out = np.where(live, a2 * rho / den, 0.0)
    return float(out) if out.ndim == 0 else out


def gamma_bar(alpha: float) -> float:
    """alpha^2 / (2 (1 - alpha^2)); ``math.inf`` for a static link (alpha = 1)."""
    if not (0.0 <= alpha <= 1.0):
        raise ArgumentError(f"alpha must be in [0, 1], got {alpha}")
    if alpha == 1.0:
        return math.inf
    return alpha**2 / (2.0 * (1.0 - alpha**2))


@dataclass(frozen=True, slots=True)
class GammaBarSet:
    gbar0: float
    gbari: tuple[float, ...]

    @classmethod
    def from_alphas(cls, alpha0: float, alphai) -> GammaBarSet:
        return cls(gbar0=gamma_bar(alpha0), gbari=tuple(gamma_bar(a) for a in alphai))

    @property
    def values(self) -> tuple[float, ...]:
        return (self.gbar0,) + self.gbari

    @property
    def finite(self) -> bool:
        return all(math.isfinite(g) for g in self.values)
