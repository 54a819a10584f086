"""Combining weights and the differential decision statistic.

    zeta = b0 y0*[k-1] y0[k] + sum_i b_i yi*[k-1] yi[k]

CDD assumes consecutive channel uses are identical. TVD weights each branch by
its autocorrelation over the average differential-noise variance. OPTIMUM uses
the instantaneous relay-destination gains (genie) and is the analytical
benchmark.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from dafsim.core.errors import PreconditionError, require
from dafsim.core.scenarios import Scheme


@dataclass(frozen=True, slots=True)
class CombinerWeights:
    """Branch weights; for OPTIMUM ``bi`` may carry trailing per-symbol axes.

    ``genie_inputs`` holds (alpha0, alphai, A, P0) so OPTIMUM weights can be
    recomputed for any symbol from the genie gains.
    """

    scheme: Scheme
    b0: float
    bi: np.ndarray
    genie_inputs: tuple | None = field(default=None, repr=False)


def _unit_interval(name: str, values: Sequence[float]) -> None:
    require(all(0.0 <= a <= 1.0 for a in values), f"{name} must lie in [0, 1]")


def weights_cdd(A: Sequence[float]) -> CombinerWeights:
    A = np.asarray(A, dtype=float)
    require(bool(np.all(A >= 0)), "amplification factors must be >= 0")
    return CombinerWeights(scheme=Scheme.CDD, b0=0.5, bi=1.0 / (2.0 * (1.0 + A**2)))


def weights_tvd(alpha0: float, alphai: Sequence[float], A: Sequence[float], P0: float) -> CombinerWeights:
    _unit_interval("alpha0", [alpha0])
    _unit_interval("alphai", alphai)
    a = np.asarray(alphai, dtype=float)
    A2 = np.asarray(A, dtype=float) ** 2
    b0 = alpha0 / (1.0 + alpha0**2 + (1.0 - alpha0**2) * P0)
    bi = a / ((1.0 + a**2) * (1.0 + A2) + (1.0 - a**2) * A2 * P0)
    return CombinerWeights(scheme=Scheme.TVD, b0=float(b0), bi=bi)


def weights_optimum(alpha0: float, alphai, A, P0: float, h_rd_now) -> CombinerWeights:
    """alpha / sigma_n^2 per branch with the conditional variance given h_rd.

    ``h_rd_now`` has the relay index first; any further axes (frames, symbols)
    carry through to ``bi``.
    """
    if h_rd_now is None:
        raise PreconditionError("optimum weights need the genie relay-destination gains")
    _unit_interval("alpha0", [alpha0])
    _unit_interval("alphai", alphai)
    g2 = np.abs(np.asarray(h_rd_now, dtype=complex)) ** 2
    R = len(alphai)
    require(g2.shape[:1] == (R,), f"expected {R} relay gains, got shape {g2.shape}")
    extra = (1,) * (g2.ndim - 1)
    a = np.asarray(alphai, dtype=float).reshape((R,) + extra)
    A2 = np.asarray(A, dtype=float).reshape((R,) + extra) ** 2

    sigma2 = A2 * g2 + 1.0
    rho = A2 * P0 * g2 / sigma2
    sigma_n2 = sigma2 * (1.0 + a**2 + (1.0 - a**2) * rho)
    b0 = alpha0 / (1.0 + alpha0**2 + (1.0 - alpha0**2) * P0)
    return CombinerWeights(
        scheme=Scheme.OPTIMUM,
        b0=float(b0),
        bi=a / sigma_n2,
        genie_inputs=(float(alpha0), tuple(float(x) for x in alphai), tuple(float(x) for x in A), float(P0)),
    )


def combine_frame(
    y0: np.ndarray, yi: np.ndarray, w: CombinerWeights, genie_h_rd: np.ndarray | None = None
) -> np.ndarray:
    """Decision statistics for symbols 1..L-1 along the last axis.

    ``yi`` and ``genie_h_rd`` have the relay index first. OPTIMUM weights are
    recomputed per symbol from the genie gains when ``genie_h_rd`` is given.
    """
    y0 = np.asarray(y0, dtype=complex)
    zeta = w.b0 * np.conj(y0[..., :-1]) * y0[..., 1:]
    yi = np.asarray(yi, dtype=complex)
    if yi.shape[0] == 0:
        return zeta

    if w.scheme is Scheme.OPTIMUM and genie_h_rd is not None:
        alpha0, alphai, A, P0 = w.genie_inputs
        bi = weights_optimum(alpha0, alphai, A, P0, np.asarray(genie_h_rd)[..., 1:]).bi
    else:
        bi = np.asarray(w.bi, dtype=float)
        bi = bi.reshape(bi.shape + (1,) * (yi.ndim - bi.ndim))
    branch = np.conj(yi[..., :-1]) * yi[..., 1:]
    return zeta + (bi * branch).sum(axis=0)


def combine(obs, w: CombinerWeights, k: int) -> complex:
    """zeta for symbol k of a single-frame observation."""
    L = np.asarray(obs.y0).shape[-1]
    require(1 <= k < L, f"symbol index must be in [1, {L - 1}], got {k}")
    y0 = np.asarray(obs.y0)[k - 1 : k + 1]
    yi = np.asarray(obs.yi)[:, k - 1 : k + 1]
    if w.scheme is Scheme.OPTIMUM:
        if obs.genie_h_rd is None:
            raise PreconditionError("optimum combining needs genie relay-destination gains")
        genie = np.asarray(obs.genie_h_rd)[:, k - 1 : k + 1]
        return complex(combine_frame(y0, yi, w, genie)[0])
    return complex(combine_frame(y0, yi, w)[0])
