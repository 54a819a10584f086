from __future__ import annotations

import numpy as np

from dafsim.core.config import settings
from dafsim.core.errors import ArgumentError, require
from dafsim.modules.mathkernel import bessel_k0


def envelope_pdf(lam):
    """Density 4 lam K0(2 lam) of the cascaded-channel envelope (0 at lam = 0)."""
    arr = np.asarray(lam, dtype=float)
    if np.any(arr < 0) or not np.all(np.isfinite(arr)):
        raise ArgumentError("envelope_pdf: lambda must be finite and >= 0")
    flat = np.atleast_1d(arr).ravel()
    out = np.zeros_like(flat)
    pos = flat > 0
    if pos.any():
        out[pos] = 4.0 * flat[pos] * bessel_k0(2.0 * flat[pos])
    out = out.reshape(arr.shape)
    return float(out) if arr.ndim == 0 else out


def envelope_histogram(values, bins: int | None = None, upper: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Uniform-bin density estimate on [0, upper]: (bin_centers, counts / (N * width)).

    Samples beyond ``upper`` still count in N, so the densities integrate to the
    in-range mass.
    """
    bins = int(bins or settings.HIST_BINS)
    upper = float(upper or settings.HIST_MAX)
    v = np.abs(np.asarray(values)).ravel()
    require(v.size > 0, "envelope_histogram: no samples")
    require(bins >= 1 and upper > 0, "envelope_histogram: bins and upper must be positive")
    counts, edges = np.histogram(v, bins=bins, range=(0.0, upper))
    width = edges[1] - edges[0]
    centers = 0.5 * (edges[:-1] + edges[1:])
    return centers, counts / (v.size * width)


def estimate_autocorrelation(series, lag: int) -> complex:
    """(1 / (L - lag)) * sum_k h[k] conj(h[k + lag])."""
    h = np.asarray(series, dtype=complex).ravel()
    require(h.size > 0, "estimate_autocorrelation: empty series")
    require(0 <= lag < h.size, f"lag must be in [0, {h.size}), got {lag}")
    n = h.size - lag
    return complex(np.vdot(h[lag:], h[:n]) / n)


def envelope_bin_density(edges, nodes: int = 16) -> np.ndarray:
    """Average of envelope_pdf over each bin [edges[j], edges[j+1]]."""
    e = np.asarray(edges, dtype=float)
    require(e.ndim == 1 and e.size >= 2 and bool(np.all(np.diff(e) > 0)), "edges must be increasing")
    x, w = np.polynomial.legendre.leggauss(nodes)
    lo, hi = e[:-1, np.newaxis], e[1:, np.newaxis]
    pts = lo + 0.5 * (hi - lo) * (x + 1.0)
    return 0.5 * (envelope_pdf(pts) @ w)
