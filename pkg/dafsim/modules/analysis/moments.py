"""Conditional statistics of the detection variable.

For a transmitted symbol v1 and its neighbour v2 (d = v1 - v2) the decision
with optimum weights errs when z > a, where

    a = |d|^2 (alpha0 b0 |y0[k-1]|^2 + sum_i alpha_i b_i |yi[k-1]|^2)
    z = -2 Re{ d* (b0 y0*[k-1] n0[k] + sum_i b_i yi*[k-1] ni[k]) }

Given y[k-1] (and h_rd for the relay branches), z is Gaussian. Its mean uses
E{w[k-1] | y[k-1]} = y[k-1] / (rho + 1); its variance uses the conditional
variance of the differential noise, in which the past-noise term is reduced
to alpha^2 sigma^2 rho / (rho + 1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr

from dafsim.core.errors import require
from dafsim.modules.analysis.gammas import relay_snr
from dafsim.modules.analysis.pep import PepInputs


@dataclass(frozen=True, slots=True)
class ZMoments:
    mean: float
    variance: float
    threshold: float

    @property
    def error_probability(self) -> float:
        """Q((a - mu) / sigma)."""
        if self.variance <= 0:
            return float(self.mean > self.threshold)
        return float(ndtr(-(self.threshold - self.mean) / np.sqrt(self.variance)))


def branch_parameters(inputs: PepInputs, h_rd) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(alpha, sigma^2, rho) for the direct link followed by each relay."""
    eta = np.abs(np.asarray(h_rd, dtype=complex).ravel()) ** 2
    require(eta.size == inputs.R, f"expected {inputs.R} relay gains")
    A2 = np.asarray(inputs.A) ** 2
    alpha = np.concatenate([[inputs.alpha0], inputs.alphai])
    sigma2 = np.concatenate([[1.0], A2 * eta + 1.0])
    rho = np.concatenate([[inputs.P0], relay_snr(np.asarray(inputs.A), inputs.P0, eta)])
    return alpha, sigma2, rho


def optimum_branch_weights(inputs: PepInputs, h_rd) -> np.ndarray:
    """b_k = alpha_k / (sigma_k^2 (1 + alpha_k^2 + (1 - alpha_k^2) rho_k)), direct link first."""
    alpha, sigma2, rho = branch_parameters(inputs, h_rd)
    return alpha / (sigma2 * (1.0 + alpha**2 + (1.0 - alpha**2) * rho))


def conditional_noise_variance(inputs: PepInputs, h_rd) -> np.ndarray:
    """Var{n_k[k] | y_k[k-1], h_rd} per branch, direct link first."""
    alpha, sigma2, rho = branch_parameters(inputs, h_rd)
    return sigma2 * (1.0 + alpha**2 * rho / (rho + 1.0) + (1.0 - alpha**2) * rho)


def z_moments(inputs: PepInputs, y0_prev: complex, yi_prev, h_rd, weights=None) -> ZMoments:
    """Mean, variance and error threshold of z given the previous observations.

    ``weights`` (direct link first) default to the optimum weights.
    """
    alpha, _, rho = branch_parameters(inputs, h_rd)
    y = np.concatenate([[complex(y0_prev)], np.asarray(yi_prev, dtype=complex).ravel()])
    require(y.size == inputs.R + 1, "need one previous observation per branch")
    b = optimum_branch_weights(inputs, h_rd) if weights is None else np.asarray(weights, dtype=float)
    y2 = np.abs(y) ** 2
    d2 = inputs.dmin2
    V = conditional_noise_variance(inputs, h_rd)
    return ZMoments(
        mean=float(d2 * np.sum(alpha * b * y2 / (rho + 1.0))),
        variance=float(2.0 * d2 * np.sum(b**2 * y2 * V)),
        threshold=float(d2 * np.sum(alpha * b * y2)),
    )
