from dafsim.modules.phylink.combining import (
    CombinerWeights,
    combine,
    combine_frame,
    weights_cdd,
    weights_optimum,
    weights_tvd,
)
from dafsim.modules.phylink.constellation import (
    ConstellationSpec,
    bits_to_indices,
    detect_indices,
    detect_min_ed,
    differential_encode,
    differential_encode_indices,
    gray_label,
    indices_to_bits,
)
from dafsim.modules.phylink.montecarlo import ErrorCounts, ber_montecarlo, count_bit_errors, scheme_weights
from dafsim.modules.phylink.power import PowerAllocation, amplification_factor
from dafsim.modules.phylink.transmission import FrameGains, FrameObservation, draw_gains, simulate_frame, transmit

__all__ = [
    "CombinerWeights",
    "ConstellationSpec",
    "ErrorCounts",
    "FrameGains",
    "FrameObservation",
    "PowerAllocation",
    "amplification_factor",
    "ber_montecarlo",
    "bits_to_indices",
    "combine",
    "combine_frame",
    "count_bit_errors",
    "detect_indices",
    "detect_min_ed",
    "differential_encode",
    "differential_encode_indices",
    "draw_gains",
    "gray_label",
    "indices_to_bits",
    "scheme_weights",
    "simulate_frame",
    "transmit",
    "weights_cdd",
    "weights_optimum",
    "weights_tvd",
]
