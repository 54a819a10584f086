"""Pairwise error probability with optimum combining weights.

All integrals run over theta in (0, pi/2) with the MGF form of the Gaussian
Q-function, c(theta) = |d_min|^2 / (2 sin^2 theta):

    PEP = (1/pi) int  prod_i I_i(theta) / (1 + gamma0 c(theta))  dtheta

I_i is the average of 1 / (1 + gamma_i c) over eta_i = |h_rd|^2 ~ Exp(1).
With the 2/rho_i term of gamma_i dropped it has the closed form

    I_i = b/D + 4 (D - b) / D^2 * e^{4/D} E1(4/D)
    b = 2 (1 - alpha_i^2) A_i^2 P0 + 4 A_i^2,   D = b + c alpha_i^2 A_i^2 P0
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from dafsim.core.config import settings
from dafsim.core.errors import NumericError, require
from dafsim.modules.analysis.gammas import gamma0, relay_gamma
from dafsim.modules.mathkernel import exp_e1_scaled, gauss_legendre_rule, integrate

logger = logging.getLogger("dafsim.analysis")


@dataclass(frozen=True, slots=True)
class PepInputs:
    alpha0: float
    alphai: tuple[float, ...]
    A: tuple[float, ...]
    P0: float
    dmin2: float
    quadrature_nodes: int = field(default_factory=lambda: settings.QUADRATURE_NODES)

    def __post_init__(self) -> None:
        object.__setattr__(self, "alphai", tuple(float(a) for a in self.alphai))
        object.__setattr__(self, "A", tuple(float(a) for a in self.A))
        require(len(self.alphai) == len(self.A), "alphai and A need one entry per relay")
        require(all(0.0 <= a <= 1.0 for a in (self.alpha0,) + self.alphai), "autocorrelations must lie in [0, 1]")
        require(all(a >= 0 for a in self.A), "amplification factors must be >= 0")
        require(self.P0 > 0, "P0 must be > 0")
        require(0.0 < self.dmin2 <= 4.0, "dmin2 must lie in (0, 4]")
        require(self.quadrature_nodes >= 2, "quadrature_nodes must be >= 2")

    @property
    def R(self) -> int:
        return len(self.alphai)


def _c(theta: np.ndarray, dmin2: float) -> np.ndarray:
    return dmin2 / (2.0 * np.sin(theta) ** 2)


def _direct_factor(inputs: PepInputs, c: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + gamma0(inputs.alpha0, inputs.P0) * c)


def _finish(value, inputs: PepInputs, what: str):
    if not np.all(np.isfinite(value)):
        raise NumericError(f"{what} is not finite", {"P0": inputs.P0, "R": inputs.R})
    return value


def pep_conditional(inputs: PepInputs, h_rd, *, exact_gamma: bool = True):
    """PEP given the relay-destination gains (relay index first, extra axes batch)."""
    h = np.asarray(h_rd, dtype=complex)
    require(h.shape[:1] == (inputs.R,), f"expected {inputs.R} relay gains, got shape {h.shape}")
    extra = (1,) * (h.ndim - 1)
    alphai = np.asarray(inputs.alphai).reshape((inputs.R,) + extra)
    A = np.asarray(inputs.A).reshape((inputs.R,) + extra)
    gi = np.asarray(relay_gamma(alphai, A, inputs.P0, np.abs(h) ** 2, exact=exact_gamma))

    def integrand(theta: np.ndarray) -> np.ndarray:
        c = _c(theta, inputs.dmin2)
        relays = np.prod(1.0 / (1.0 + gi[..., np.newaxis] * c), axis=0)
        return _direct_factor(inputs, c) * relays

    rule = gauss_legendre_rule(inputs.quadrature_nodes)
    return _finish(integrate(integrand, rule) / math.pi, inputs, "conditional PEP")


def relay_integral(inputs: PepInputs, theta) -> np.ndarray:
    """Closed-form I_i(theta) for every relay: shape (R, len(theta))."""
    c = _c(np.atleast_1d(np.asarray(theta, dtype=float)), inputs.dmin2)
    a2 = np.asarray(inputs.alphai)[:, np.newaxis] ** 2
    A2 = np.asarray(inputs.A)[:, np.newaxis] ** 2
    b = 2.0 * (1.0 - a2) * A2 * inputs.P0 + 4.0 * A2
    D = b + c * a2 * A2 * inputs.P0
    out = np.ones(np.broadcast(b, D).shape)
    live = np.broadcast_to(D > 0, out.shape)
    if live.any():
        Dl = np.broadcast_to(D, out.shape)[live]
        bl = np.broadcast_to(b, out.shape)[live]
        out[live] = bl / Dl + 4.0 * (Dl - bl) / Dl**2 * exp_e1_scaled(4.0 / Dl)
    return out


def relay_integral_exact(inputs: PepInputs, theta) -> np.ndarray:
    """I_i(theta) with the full gamma_i, by adaptive quadrature over eta."""
    thetas = np.atleast_1d(np.asarray(theta, dtype=float))
    out = np.ones((inputs.R, thetas.size))
    for i, (alpha, A) in enumerate(zip(inputs.alphai, inputs.A)):
        if A == 0:
            continue
        for j, c in enumerate(_c(thetas, inputs.dmin2)):

            def f(eta: float) -> float:
                return math.exp(-eta) / (1.0 + c * relay_gamma(alpha, A, inputs.P0, eta, exact=True))

            res = quad(f, 0.0, math.inf, epsabs=1e-14, epsrel=1e-10, limit=200, full_output=1)
            if len(res) > 3:
                logger.debug("eta quadrature relay %d theta %.3g: %s", i, thetas[j], res[3])
            out[i, j] = res[0]
    return out


def pep_unconditional(inputs: PepInputs, *, exact_gamma: bool = False) -> float:
    """PEP averaged over the relay-destination fading.

    The default integrates the closed-form I_i; ``exact_gamma=True`` keeps the
    2/rho_i term and averages over eta numerically.
    """
    integral = relay_integral_exact if exact_gamma else relay_integral

    def integrand(theta: np.ndarray) -> np.ndarray:
        c = _c(theta, inputs.dmin2)
        return _direct_factor(inputs, c) * np.prod(integral(inputs, theta), axis=0)

    rule = gauss_legendre_rule(inputs.quadrature_nodes)
    return float(_finish(integrate(integrand, rule) / math.pi, inputs, "unconditional PEP"))


def pep_upper_bound(inputs: PepInputs) -> float:
    """Integrand at theta = pi/2 times the interval: prod_i I_i(pi/2) / (2 + gamma0 |d_min|^2)."""
    relays = float(np.prod(relay_integral(inputs, math.pi / 2.0)))
    return relays / (2.0 + gamma0(inputs.alpha0, inputs.P0) * inputs.dmin2)


def ber_from_pep(pep: float, M: int) -> float:
    """Nearest-neighbour BER with Gray mapping; exact for M = 2."""
    require(M >= 2 and not M & (M - 1), f"M must be a power of two >= 2, got {M}")
    if M == 2:
        return pep
    return 2.0 / math.log2(M) * pep
