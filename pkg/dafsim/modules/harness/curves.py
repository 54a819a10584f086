from __future__ import annotations

import math
from dataclasses import dataclass, fields

from dafsim.core.errors import require


@dataclass(frozen=True, slots=True)
class BerPoint:
    """One SNR point; simulated entries are None for schemes that were not run."""

    P_dB: float
    ber_sim_tvd: float | None
    ber_sim_cdd: float | None
    ber_theory_lb: float
    ber_upper_bound: float
    floor: float
    n_bits: int
    n_errors_tvd: int | None
    n_errors_cdd: int | None
    ber_sim_opt: float | None = None
    n_errors_opt: int | None = None

    def __post_init__(self) -> None:
        require(math.isfinite(self.P_dB), "P_dB must be finite")
        for name in ("ber_theory_lb", "ber_upper_bound", "floor"):
            v = getattr(self, name)
            require(0.0 <= v <= 0.5, f"{name} = {v} outside [0, 0.5]")
        for name in ("ber_sim_tvd", "ber_sim_cdd", "ber_sim_opt"):
            v = getattr(self, name)
            require(v is None or 0.0 <= v <= 1.0, f"{name} = {v} outside [0, 1]")

    def standard_error(self, ber: float | None) -> float | None:
        """Binomial standard error of a simulated rate at this point's bit count."""
        if ber is None or self.n_bits <= 0:
            return None
        return math.sqrt(ber * (1.0 - ber) / self.n_bits)


POINT_FIELDS: tuple[str, ...] = tuple(f.name for f in fields(BerPoint))


@dataclass(frozen=True, slots=True)
class BerCurve:
    points: tuple[BerPoint, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(self.points))
        P = [p.P_dB for p in self.points]
        require(all(a < b for a, b in zip(P, P[1:])), "P_dB must be strictly increasing")
        floors = {p.floor for p in self.points}
        require(len(floors) <= 1, "floor must be constant along a curve")

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def column(self, name: str) -> list:
        require(name in POINT_FIELDS, f"unknown column '{name}'")
        return [getattr(p, name) for p in self.points]
