from dafsim.modules.analysis.floors import (
    FLOOR_CASE_LABELS,
    FloorCase,
    FloorResult,
    error_floor,
    floor_distinct,
    floor_equal,
    floor_mixed,
    floor_quadrature,
)
from dafsim.modules.analysis.gammas import GammaBarSet, gamma0, gamma_bar, gamma_i, relay_gamma, relay_snr
from dafsim.modules.analysis.moments import (
    ZMoments,
    branch_parameters,
    conditional_noise_variance,
    optimum_branch_weights,
    z_moments,
)
from dafsim.modules.analysis.pep import (
    PepInputs,
    ber_from_pep,
    pep_conditional,
    pep_unconditional,
    pep_upper_bound,
    relay_integral,
    relay_integral_exact,
)
from dafsim.modules.analysis.theory import TheoryPoint, pep_inputs, scenario_floor, theory_point

__all__ = [
    "FLOOR_CASE_LABELS",
    "FloorCase",
    "FloorResult",
    "GammaBarSet",
    "PepInputs",
    "TheoryPoint",
    "ZMoments",
    "ber_from_pep",
    "branch_parameters",
    "conditional_noise_variance",
    "error_floor",
    "floor_distinct",
    "floor_equal",
    "floor_mixed",
    "floor_quadrature",
    "gamma0",
    "gamma_bar",
    "gamma_i",
    "optimum_branch_weights",
    "pep_conditional",
    "pep_inputs",
    "pep_unconditional",
    "pep_upper_bound",
    "relay_gamma",
    "relay_integral",
    "relay_integral_exact",
    "relay_snr",
    "scenario_floor",
    "theory_point",
    "z_moments",
]
