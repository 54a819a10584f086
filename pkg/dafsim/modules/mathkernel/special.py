"""In-house special functions: J0, K0, E1 and the fused e^x E1(x).

All functions accept scalars or numpy arrays and return the same shape
(scalars come back as Python floats).

J0 follows the Cephes split: rational approximation with the first two zeros
factored out on [0, 5], Hankel asymptotic form with rational P/Q beyond.
K0 uses the power series for x <= 2 and Steed's continued fraction beyond.
E1 uses the alternating series for x <= 1 and a Lentz continued fraction beyond.
"""

from __future__ import annotations

import math

import numpy as np

from dafsim.core.errors import ArgumentError, NumericError, require

EULER_GAMMA = 0.57721566490153286061
SQ2OPI = 7.9788456080286535587989e-1  # sqrt(2/pi)
PIO4 = 7.85398163397448309616e-1  # pi/4

_EPS = 1e-16
_MAXIT = 500

# J0, |x| <= 5: (z - r1)(z - r2) P3(z) / Q8(z), z = x^2
_DR1 = 5.78318596294678452118e0
_DR2 = 3.04712623436620863991e1
_RP = (
    -4.79443220978201773821e9,
    1.95617491946556577543e12,
    -2.49248344360967716204e14,
    9.70862251047306323952e15,
)
_RQ = (
    4.99563147152651017219e2,
    1.73785401676374683123e5,
    4.84409658339962045305e7,
    1.11855537045356834862e10,
    2.11277520115489217587e12,
    3.10518229857422583814e14,
    3.18121955943204943306e16,
    1.71086294081043136091e18,
)

# J0, |x| > 5: Hankel asymptotic modulus/phase corrections
_PP = (
    7.96936729297347051624e-4,
    8.28352392107440799803e-2,
    1.23953371646414299388e0,
    5.44725003058768775090e0,
    8.74716500199817011941e0,
    5.30324038235394892183e0,
    9.99999999999999997821e-1,
)
_PQ = (
    9.24408810558863637013e-4,
    8.56288474354474431428e-2,
    1.25352743901058953537e0,
    5.47097740330417105182e0,
    8.76190883237069594232e0,
    5.30605288235394617618e0,
    1.00000000000000000218e0,
)
_QP = (
    -1.13663838898469149931e-2,
    -1.28252718670509318512e0,
    -1.95539544257735972385e1,
    -9.32060152123768231369e1,
    -1.77681167980488050595e2,
    -1.47077505154951170175e2,
    -5.14105326766599330220e1,
    -6.05014350600728481186e0,
)
_QQ = (
    6.43178256118178023184e1,
    8.56430025976980587198e2,
    3.88240183605401609683e3,
    7.24046774195652478189e3,
    5.93072701187316984827e3,
    2.06209331660327847417e3,
    2.42005740240291393179e2,
)


def _polevl(x: np.ndarray, coef: tuple[float, ...]) -> np.ndarray:
    ans = np.full_like(x, coef[0])
    for c in coef[1:]:
        ans = ans * x + c
    return ans


def _p1evl(x: np.ndarray, coef: tuple[float, ...]) -> np.ndarray:
    """Polynomial with implicit leading coefficient 1."""
    ans = x + coef[0]
    for c in coef[1:]:
        ans = ans * x + c
    return ans


def _as_array(x, name: str) -> tuple[np.ndarray, bool]:
    arr = np.asarray(x, dtype=float)
    require(bool(np.all(np.isfinite(arr))), f"{name}: argument must be finite")
    return arr, arr.ndim == 0


def _out(arr: np.ndarray, scalar: bool):
    return float(arr) if scalar else arr


def bessel_j0(x):
    """Zeroth-order Bessel function of the first kind."""
    arr, scalar = _as_array(x, "bessel_j0")
    ax = np.abs(np.atleast_1d(arr))
    out = np.empty_like(ax)

    tiny = ax < 1e-5
    mid = (ax >= 1e-5) & (ax <= 5.0)
    far = ax > 5.0

    if tiny.any():
        z = ax[tiny] ** 2
        out[tiny] = 1.0 - z / 4.0
    if mid.any():
        z = ax[mid] ** 2
        out[mid] = (z - _DR1) * (z - _DR2) * _polevl(z, _RP) / _p1evl(z, _RQ)
    if far.any():
        xx = ax[far]
        w = 5.0 / xx
        q = 25.0 / (xx * xx)
        p = _polevl(q, _PP) / _polevl(q, _PQ)
        qq = _polevl(q, _QP) / _p1evl(q, _QQ)
        xn = xx - PIO4
        out[far] = (p * np.cos(xn) - w * qq * np.sin(xn)) * SQ2OPI / np.sqrt(xx)

    return _out(out.reshape(arr.shape), scalar)


def _k0_series(x: float) -> float:
    # K0 = -(ln(x/2) + gamma) I0 + sum_{k>=1} (x^2/4)^k / (k!)^2 * H_k
    t = 0.25 * x * x
    term = 1.0
    i0 = 1.0
    tail = 0.0
    harmonic = 0.0
    for k in range(1, _MAXIT):
        term *= t / (k * k)
        harmonic += 1.0 / k
        i0 += term
        tail += term * harmonic
        if term < _EPS * i0 and term * harmonic < _EPS * max(tail, 1e-300):
            break
    return -(math.log(0.5 * x) + EULER_GAMMA) * i0 + tail


def _k0_steed(x: float) -> float:
    # Steed's CF2 for K_nu at nu = 0
    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    h = delh = d
    q1, q2 = 0.0, 1.0
    a1 = 0.25
    q = c = a1
    a = -a1
    s = 1.0 + q * delh
    for i in range(2, _MAXIT):
        a -= 2 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1, q2 = q2, qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels / s) < _EPS:
            break
    else:
        raise NumericError("K0 continued fraction did not converge", {"x": x})
    return math.sqrt(math.pi / (2.0 * x)) * math.exp(-x) / s


def bessel_k0(x):
    """Zeroth-order modified Bessel function of the second kind, x > 0."""
    arr, scalar = _as_array(x, "bessel_k0")
    if np.any(arr <= 0):
        raise ArgumentError("bessel_k0: x must be > 0 (K0 diverges at the origin)")
    flat = np.atleast_1d(arr).ravel()
    out = np.array([_k0_series(v) if v <= 2.0 else _k0_steed(v) for v in flat], dtype=float)
    return _out(out.reshape(arr.shape), scalar)


def _e1_series(x: float) -> float:
    # E1 = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
    acc = 0.0
    fact = 1.0
    for k in range(1, _MAXIT):
        fact *= -x / k
        term = fact / k
        acc += term
        if abs(term) < _EPS * abs(acc):
            break
    return -EULER_GAMMA - math.log(x) - acc


def _e1_scaled_cf(x: float) -> float:
    # modified Lentz on E1(x) e^x = 1/(x+1- 1/(x+3- 4/(x+5- ...)))
    fpmin = 1e-300
    b = x + 1.0
    c = 1.0 / fpmin
    d = 1.0 / b
    h = d
    for i in range(1, _MAXIT):
        an = -float(i * i)
        b += 2.0
        d = 1.0 / (an * d + b)
        c = b + an / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise NumericError("E1 continued fraction did not converge", {"x": x})


def _scaled_scalar(x: float) -> float:
    if x <= 1.0:
        return math.exp(x) * _e1_series(x)
    return _e1_scaled_cf(x)


def exp_e1_scaled(x):
    """e^x * E1(x) without forming e^x or E1(x) separately for large x."""
    arr, scalar = _as_array(x, "exp_e1_scaled")
    if np.any(arr <= 0):
        raise ArgumentError("exp_e1_scaled: x must be > 0")
    flat = np.atleast_1d(arr).ravel()
    out = np.fromiter((_scaled_scalar(v) for v in flat), dtype=float, count=flat.size)
    return _out(out.reshape(arr.shape), scalar)


def expint_e1(x):
    """Exponential integral E1(x) = int_x^inf e^-t / t dt, x > 0."""
    arr, scalar = _as_array(x, "expint_e1")
    if np.any(arr <= 0):
        raise ArgumentError("expint_e1: x must be > 0")
    flat = np.atleast_1d(arr).ravel()
    out = np.fromiter(
        (_e1_series(v) if v <= 1.0 else _e1_scaled_cf(v) * math.exp(-v) for v in flat),
        dtype=float,
        count=flat.size,
    )
    return _out(out.reshape(arr.shape), scalar)
