from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from dafsim.core.errors import NumericError, require

HALF_PI = 0.5 * math.pi


@dataclass(frozen=True, slots=True)
class QuadratureRule:
    """Gauss-Legendre nodes and weights on the open interval (0, pi/2)."""

    node_count: int
    nodes: np.ndarray
    weights: np.ndarray


@lru_cache(maxsize=16)
def gauss_legendre_rule(node_count: int) -> QuadratureRule:
    require(int(node_count) == node_count and node_count >= 2, "gauss_legendre_rule: node_count must be >= 2")
    x, w = np.polynomial.legendre.leggauss(int(node_count))
    # [-1, 1] -> (0, pi/2)
    nodes = HALF_PI * 0.5 * (x + 1.0)
    weights = HALF_PI * 0.5 * w
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(node_count=int(node_count), nodes=nodes, weights=weights)


def integrate(func: Callable[[np.ndarray], np.ndarray], rule: QuadratureRule) -> np.ndarray | float:
    """Integrate ``func`` over (0, pi/2).

    ``func`` receives the node vector and must return values whose trailing axis
    runs over the nodes; leading axes are kept, so a batch of integrands can be
    evaluated in one call.
    """
    values = np.asarray(func(rule.nodes), dtype=float)
    if not np.all(np.isfinite(values)):
        bad = int(np.argmax(~np.isfinite(values.reshape(-1, rule.node_count)).any(axis=0)))
        raise NumericError(
            "quadrature integrand is not finite",
            {"node_count": rule.node_count, "theta": float(rule.nodes[bad])},
        )
    out = values @ rule.weights
    return float(out) if np.ndim(out) == 0 else out
