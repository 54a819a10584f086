"""Error floors: the PEP limit as the transmit power grows.

With every branch at its high-power limit gamma_bar_k the PEP becomes

    (1/pi) int prod_k 1 / (1 + gamma_bar_k c(theta)) dtheta

which has a closed form for three equality patterns of {gamma_bar_0..R}:
all distinct (partial fractions), all equal, and relays equal to each
other but not to the direct link (mixed). Patterns outside those three,
or too close to equal for the partial fractions to hold their digits,
are integrated numerically.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from dafsim.core.config import settings
from dafsim.core.errors import NumericError, require
from dafsim.modules.analysis.gammas import GammaBarSet
from dafsim.modules.mathkernel import gauss_legendre_rule, integrate

logger = logging.getLogger("dafsim.analysis")


class FloorCase(str, enum.Enum):
    NO_FLOOR = "no_floor"
    DISTINCT = "distinct"
    EQUAL = "equal"
    MIXED = "mixed"
    QUADRATURE = "quadrature"


FLOOR_CASE_LABELS = {
    FloorCase.NO_FLOOR: "no floor (static link)",
    FloorCase.DISTINCT: "all gamma-bar distinct",
    FloorCase.EQUAL: "all gamma-bar equal",
    FloorCase.MIXED: "equal relays, distinct direct link",
    FloorCase.QUADRATURE: "numerical limit",
}


@dataclass(frozen=True, slots=True)
class FloorResult:
    value: float
    case: FloorCase

    @property
    def label(self) -> str:
        return FLOOR_CASE_LABELS[self.case]


_EPS = float(np.finfo(float).eps)


def _mu(g: float, dmin2: float) -> float:
    return math.sqrt(g * dmin2 / (2.0 + g * dmin2))


def _power_parts(g: float, dmin2: float, L: int) -> tuple[float, float]:
    """(1/pi) int (1 + g c)^-L dtheta, and the size of the operands it is the difference of."""
    ratio = 1.0 / (4.0 + 2.0 * g * dmin2)
    ms = _mu(g, dmin2) * sum(math.comb(2 * l, l) * ratio**l for l in range(L))
    return 0.5 * (1.0 - ms), 0.5 * (1.0 + ms)


# Each *_parts helper returns (value, scale); scale is the sum of the
# magnitudes that cancel into value, so eps * scale / value bounds the
# relative rounding error of the closed form.


def _distinct_parts(gbars: Sequence[float], dmin2: float) -> tuple[float, float]:
    g = [float(x) for x in gbars]
    R = len(g) - 1
    value = scale = 0.0
    for k, gk in enumerate(g):
        den = math.prod(gk - gj for j, gj in enumerate(g) if j != k)
        require(den != 0.0, "floor_distinct needs pairwise distinct gamma-bar values")
        coef = gk**R / den
        v, s = _power_parts(gk, dmin2, 1)
        value += coef * v
        scale += abs(coef) * s
    return value, scale


def _mixed_parts(gbar0: float, gbar: float, relays: int, dmin2: float) -> tuple[float, float]:
    a, g, R = float(gbar0), float(gbar), int(relays)
    require(a != g, "floor_mixed needs gbar0 != gbar")
    require(R >= 1, "floor_mixed needs at least one relay")
    coef = (a / (a - g)) ** R
    v, s = _power_parts(a, dmin2, 1)
    value, scale = coef * v, abs(coef) * s
    for k in range(1, R + 1):
        Bk = -(a ** (R - k)) * g / (a - g) ** (R - k + 1)
        v, s = _power_parts(g, dmin2, k)
        value += Bk * v
        scale += abs(Bk) * s
    return value, scale


def floor_distinct(gbars: Sequence[float], dmin2: float) -> float:
    return _distinct_parts(gbars, dmin2)[0]


def floor_equal(gbar: float, dmin2: float, branches: int) -> float:
    require(branches >= 1, "branches must be >= 1")
    return _power_parts(float(gbar), dmin2, branches)[0]


def floor_mixed(gbar0: float, gbar: float, relays: int, dmin2: float) -> float:
    """Direct link gbar0, all R relays at gbar (gbar0 != gbar)."""
    return _mixed_parts(gbar0, gbar, relays, dmin2)[0]


def floor_quadrature(gbars: Sequence[float], dmin2: float, nodes: int | None = None) -> float:
    g = np.asarray(gbars, dtype=float)[:, np.newaxis]

    def integrand(theta: np.ndarray) -> np.ndarray:
        c = dmin2 / (2.0 * np.sin(theta) ** 2)
        return np.prod(1.0 / (1.0 + g * c), axis=0)

    return float(integrate(integrand, gauss_legendre_rule(nodes or settings.QUADRATURE_NODES)) / math.pi)


def _close(x: float, y: float, rtol: float) -> bool:
    return abs(x - y) <= rtol * max(abs(x), abs(y))


def _all_close(values: Sequence[float], rtol: float) -> bool:
    return _close(min(values), max(values), rtol)


def _separated(values: Sequence[float], rtol: float) -> bool:
    return all(not _close(values[i], values[j], rtol) for i in range(len(values)) for j in range(i))


def _closed_form(gbars: GammaBarSet, dmin2: float) -> tuple[FloorCase, tuple[float, float]] | None:
    eq = settings.FLOOR_EQUAL_RTOL
    values, relays = gbars.values, gbars.gbari
    R = len(relays)
    if _all_close(values, eq):
        return FloorCase.EQUAL, _power_parts(float(np.mean(values)), dmin2, R + 1)
    if R >= 2 and _all_close(relays, eq) and not any(_close(gbars.gbar0, g, eq) for g in relays):
        return FloorCase.MIXED, _mixed_parts(gbars.gbar0, float(np.mean(relays)), R, dmin2)
    if _separated(values, eq):
        return FloorCase.DISTINCT, _distinct_parts(values, dmin2)
    return None


def error_floor(gbars: GammaBarSet, dmin2: float) -> FloorResult:
    """Closed form for the gamma-bar equality pattern, or quadrature.

    Near-equal values make the partial fractions cancel; when the
    estimated rounding error exceeds FLOOR_CLOSED_FORM_RTOL the limit is
    integrated numerically instead (case QUADRATURE).
    """
    require(0.0 < dmin2 <= 4.0, "dmin2 must lie in (0, 4]")
    values = gbars.values
    if not gbars.finite:
        return FloorResult(0.0, FloorCase.NO_FLOOR)

    result = None
    found = _closed_form(gbars, dmin2)
    if found is None:
        logger.warning("gamma-bar pattern %s has no closed form; integrating the limit numerically", values)
    else:
        case, (value, scale) = found
        err = _EPS * scale / value if value > 0.0 else math.inf
        if err <= settings.FLOOR_CLOSED_FORM_RTOL:
            result = FloorResult(value, case)
        else:
            logger.info(
                "%s form for %s is ill-conditioned (error ~%.1e); integrating numerically", case.value, values, err
            )
    if result is None:
        result = FloorResult(floor_quadrature(values, dmin2), FloorCase.QUADRATURE)

    if not 0.0 < result.value < 0.5:
        raise NumericError(
            "error floor outside (0, 0.5)",
            {"value": result.value, "case": result.case.value, "gbars": values},
        )
    return result
