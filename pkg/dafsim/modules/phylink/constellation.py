"""Differential M-PSK: constellation, Gray labels, encoding and detection.

Symbol index m maps to e^{j 2 pi m / M}. Bit groups are read MSB first and
their Gray label selects m, so for M = 4 the pairs (00, 01, 11, 10) map to
m = (0, 1, 2, 3).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from dafsim.core.errors import ArgumentError, require

TIE_RTOL = 1e-12


@dataclass(frozen=True)
class ConstellationSpec:
    M: int
    gray_mapping: bool = True

    def __post_init__(self) -> None:
        require(self.M >= 2 and not self.M & (self.M - 1), f"M must be a power of two >= 2, got {self.M}")
        require(self.gray_mapping, "only Gray mapping is supported")

    @property
    def bits_per_symbol(self) -> int:
        return self.M.bit_length() - 1

    @cached_property
    def symbols(self) -> np.ndarray:
        return np.exp(2j * np.pi * np.arange(self.M) / self.M)

    @property
    def dmin2(self) -> float:
        return 4.0 * math.sin(math.pi / self.M) ** 2


def gray_label(m):
    m = np.asarray(m, dtype=np.int64)
    return m ^ (m >> 1)


def _gray_inverse(g: np.ndarray) -> np.ndarray:
    m = g.copy()
    shift = g >> 1
    while np.any(shift):
        m ^= shift
        shift >>= 1
    return m


def bits_to_indices(bits, bits_per_symbol: int) -> np.ndarray:
    """Group bits (MSB first) and return the symbol index whose Gray label they spell."""
    b = np.asarray(bits, dtype=np.int64)
    k = int(bits_per_symbol)
    require(b.shape[-1] % k == 0, f"bit count {b.shape[-1]} is not a multiple of {k}")
    require(bool(np.all((b == 0) | (b == 1))), "bits must be 0 or 1")
    groups = b.reshape(*b.shape[:-1], -1, k)
    weights = 1 << np.arange(k - 1, -1, -1, dtype=np.int64)
    return _gray_inverse(groups @ weights)


def indices_to_bits(indices, bits_per_symbol: int) -> np.ndarray:
    k = int(bits_per_symbol)
    g = gray_label(indices)
    shifts = np.arange(k - 1, -1, -1, dtype=np.int64)
    bits = (g[..., np.newaxis] >> shifts) & 1
    return bits.reshape(*g.shape[:-1], -1) if g.ndim else bits


def differential_encode(v) -> np.ndarray:
    """s[0] = 1, s[k] = v[k] s[k-1]; returns len(v) + 1 symbols."""
    v = np.asarray(v, dtype=complex).ravel()
    if v.size and not np.allclose(np.abs(v), 1.0, rtol=0, atol=1e-9):
        raise ArgumentError("differential_encode: symbols must have unit modulus")
    return np.concatenate([[1.0 + 0j], np.cumprod(v)])


def differential_encode_indices(indices, M: int) -> np.ndarray:
    """Index form of differential_encode along the last axis: phases add modulo M."""
    m = np.asarray(indices, dtype=np.int64)
    acc = np.concatenate([np.zeros(m.shape[:-1] + (1,), dtype=np.int64), np.cumsum(m, axis=-1) % M], axis=-1)
    return np.exp(2j * np.pi * acc / M)


def detect_indices(zeta, M: int) -> np.ndarray:
    """Vectorized minimum-distance decision over unit-modulus candidates.

    Picks argmax Re{conj(v_m) zeta}; candidates within TIE_RTOL * max(|zeta|, 1)
    of the best metric tie and the smallest index wins.
    """
    z = np.asarray(zeta, dtype=complex)
    cand = np.exp(-2j * np.pi * np.arange(M) / M)
    metric = (z[..., np.newaxis] * cand).real
    best = metric.max(axis=-1, keepdims=True)
    tol = TIE_RTOL * np.maximum(np.abs(z), 1.0)[..., np.newaxis]
    return np.argmax(metric >= best - tol, axis=-1)


def detect_min_ed(zeta: complex, constellation: ConstellationSpec) -> complex:
    m = int(detect_indices(zeta, constellation.M))
    return complex(constellation.symbols[m])
