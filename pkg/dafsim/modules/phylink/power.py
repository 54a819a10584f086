from __future__ import annotations

import math
from dataclasses import dataclass

from dafsim.core.errors import ArgumentError, require


@dataclass(frozen=True, slots=True)
class PowerAllocation:
    """Total transmit power P split between the source (P0) and the relays (Pi)."""

    total_P: float
    P0: float
    Pi: tuple[float, ...]

    def __post_init__(self) -> None:
        require(self.P0 >= 0 and all(p >= 0 for p in self.Pi), "powers must be non-negative")
        spent = self.P0 + sum(self.Pi)
        require(
            math.isclose(spent, self.total_P, rel_tol=1e-9, abs_tol=1e-12),
            f"P0 + sum(Pi) = {spent} does not match total_P = {self.total_P}",
        )

    @classmethod
    def split(cls, total_P: float, relays: int) -> PowerAllocation:
        """Half to the source, the other half shared evenly by the relays.

        With no relays the source keeps all of P.
        """
        require(total_P >= 0, "total_P must be >= 0")
        require(relays >= 0, "relay count must be >= 0")
        if relays == 0:
            return cls(total_P=total_P, P0=total_P, Pi=())
        return cls(total_P=total_P, P0=total_P / 2.0, Pi=tuple(total_P / (2.0 * relays) for _ in range(relays)))

    @classmethod
    def from_db(cls, P_dB: float, relays: int) -> PowerAllocation:
        return cls.split(10.0 ** (P_dB / 10.0), relays)

    @property
    def amplification(self) -> tuple[float, ...]:
        return tuple(amplification_factor(p, self.P0) for p in self.Pi)


def amplification_factor(Pi: float, P0: float) -> float:
    """Fixed relay gain sqrt(Pi / (P0 + 1)) normalizing the relay's average output power."""
    if Pi < 0 or P0 < 0:
        raise ArgumentError(f"powers must be non-negative (Pi={Pi}, P0={P0})")
    return math.sqrt(Pi / (P0 + 1.0))
