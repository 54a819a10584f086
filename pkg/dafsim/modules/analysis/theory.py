from __future__ import annotations

from dataclasses import dataclass

from dafsim.core.scenarios import ScenarioConfig
from dafsim.modules.analysis.floors import FloorResult, error_floor
from dafsim.modules.analysis.gammas import GammaBarSet
from dafsim.modules.analysis.pep import PepInputs, ber_from_pep, pep_unconditional, pep_upper_bound
from dafsim.modules.channel import scenario_alphas
from dafsim.modules.phylink import ConstellationSpec, PowerAllocation


@dataclass(frozen=True, slots=True)
class TheoryPoint:
    P_dB: float
    pep: float
    ber_theory_lb: float
    ber_upper_bound: float
    floor: float


def pep_inputs(cfg: ScenarioConfig, alloc: PowerAllocation, quadrature_nodes: int | None = None) -> PepInputs:
    alphas = scenario_alphas(cfg)
    kwargs = {} if quadrature_nodes is None else {"quadrature_nodes": quadrature_nodes}
    return PepInputs(
        alpha0=alphas.alpha0,
        alphai=alphas.alphai,
        A=alloc.amplification,
        P0=alloc.P0,
        dmin2=ConstellationSpec(cfg.M).dmin2,
        **kwargs,
    )


def scenario_floor(cfg: ScenarioConfig) -> FloorResult:
    """PEP floor of a scenario (independent of power)."""
    alphas = scenario_alphas(cfg)
    return error_floor(GammaBarSet.from_alphas(alphas.alpha0, alphas.alphai), ConstellationSpec(cfg.M).dmin2)


def theory_point(cfg: ScenarioConfig, P_dB: float, floor: FloorResult | None = None) -> TheoryPoint:
    """Lower-bound BER, upper bound and floor at total power P_dB (default power split)."""
    inputs = pep_inputs(cfg, PowerAllocation.from_db(P_dB, cfg.R))
    pep = pep_unconditional(inputs)
    floor = floor or scenario_floor(cfg)
    return TheoryPoint(
        P_dB=float(P_dB),
        pep=pep,
        ber_theory_lb=ber_from_pep(pep, cfg.M),
        ber_upper_bound=ber_from_pep(pep_upper_bound(inputs), cfg.M),
        floor=ber_from_pep(floor.value, cfg.M),
    )
