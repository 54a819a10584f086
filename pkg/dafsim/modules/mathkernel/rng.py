"""Seeded random streams.

Every Monte Carlo work unit draws from its own child stream, keyed by its
position (SNR point, batch index, ...). Two runs that visit the same keys see
the same numbers no matter how the units are spread over workers.
"""

from __future__ import annotations

import numpy as np

from dafsim.core.errors import require


def stream(seed: int, *key: int) -> np.random.Generator:
    """PCG64 generator for the child ``key`` of ``seed``."""
    require(seed >= 0, "stream: seed must be non-negative")
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.PCG64(ss))


def sample_complex_gaussian(rng: np.random.Generator, variance: float = 1.0, size=None):
    """Circularly-symmetric CN(0, variance) draws; a scalar when ``size`` is None."""
    require(variance >= 0, "sample_complex_gaussian: variance must be >= 0")
    scale = np.sqrt(0.5 * variance)
    if size is None:
        re, im = rng.standard_normal(2)
        return complex(scale * re, scale * im)
    re = rng.standard_normal(size)
    im = rng.standard_normal(size)
    return scale * (re + 1j * im)
