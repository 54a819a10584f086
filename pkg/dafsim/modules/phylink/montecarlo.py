"""Monte Carlo bit-error counting.

The work unit is a batch of frames drawn from its own child stream
``stream(seed, *key, batch_index)``. All requested combining schemes see the
same channel and noise realizations. Early stopping is decided in batch-index
order, so the counts never depend on how many workers ran the batches.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from dafsim.core.config import settings
from dafsim.core.errors import require
from dafsim.core.scenarios import ScenarioConfig, Scheme
from dafsim.modules.channel import scenario_alphas
from dafsim.modules.mathkernel import stream
from dafsim.modules.phylink.combining import CombinerWeights, combine_frame, weights_cdd, weights_optimum, weights_tvd
from dafsim.modules.phylink.constellation import detect_indices, differential_encode_indices, gray_label
from dafsim.modules.phylink.power import PowerAllocation
from dafsim.modules.phylink.transmission import draw_gains, transmit

logger = logging.getLogger("dafsim.phylink")

MIN_BITS = 10_000


@dataclass(slots=True)
class ErrorCounts:
    bits: int = 0
    errors: dict[Scheme, int] = field(default_factory=dict)
    batches: int = 0
    stopped_early: bool = False

    def ber(self, scheme: Scheme) -> float:
        return self.errors[scheme] / self.bits if self.bits else 0.0


def scheme_weights(cfg: ScenarioConfig, alloc: PowerAllocation, scheme: Scheme, h_rd=None) -> CombinerWeights:
    alphas = scenario_alphas(cfg)
    A = alloc.amplification
    if scheme is Scheme.CDD:
        return weights_cdd(A)
    if scheme is Scheme.TVD:
        return weights_tvd(alphas.alpha0, alphas.alphai, A, alloc.P0)
    if h_rd is None:
        h_rd = np.ones(cfg.R, dtype=complex)
    return weights_optimum(alphas.alpha0, alphas.alphai, A, alloc.P0, h_rd)


def _bit_errors(sent: np.ndarray, detected: np.ndarray, bits_per_symbol: int) -> int:
    diff = gray_label(sent) ^ gray_label(detected)
    return int(sum(((diff >> b) & 1).sum() for b in range(bits_per_symbol)))


def run_batch(
    cfg: ScenarioConfig,
    alloc: PowerAllocation,
    schemes: tuple[Scheme, ...],
    frames: int,
    seed: int,
    key: tuple[int, ...],
    noise_variance: float,
) -> dict[Scheme, int]:
    """Error counts of one work unit; pure function of its arguments."""
    rng = stream(seed, *key)
    K = cfg.frame_length
    sent = rng.integers(0, cfg.M, size=(frames, K))
    s = differential_encode_indices(sent, cfg.M)
    gains = draw_gains(cfg, rng, frames, K + 1)
    obs = transmit(s, gains, alloc, rng, noise_variance)

    out: dict[Scheme, int] = {}
    for scheme in schemes:
        w = scheme_weights(cfg, alloc, scheme)
        zeta = combine_frame(obs.y0, obs.yi, w, obs.genie_h_rd if scheme is Scheme.OPTIMUM else None)
        out[scheme] = _bit_errors(sent, detect_indices(zeta, cfg.M), cfg.bits_per_symbol)
    return out


def _batch_sizes(n_bits: int, bits_per_frame: int, frames_per_batch: int) -> list[int]:
    n_frames = math.ceil(n_bits / bits_per_frame)
    full, rest = divmod(n_frames, frames_per_batch)
    return [frames_per_batch] * full + ([rest] if rest else [])


def count_bit_errors(
    scenario: ScenarioConfig,
    alloc: PowerAllocation,
    schemes: Iterable[Scheme | str],
    n_bits: int,
    seed: int,
    *,
    key: Sequence[int] = (),
    noise_variance: float = 1.0,
    max_errors: int | None = None,
    workers: int | None = None,
    frames_per_batch: int | None = None,
) -> ErrorCounts:
    """Bit errors per scheme over at least ``n_bits`` bits (whole frames).

    Stops after the first batch, in index order, at which every scheme has
    reached ``max_errors``. ``max_errors=0`` disables the early stop.
    """
    schemes = tuple(dict.fromkeys(Scheme(s) for s in schemes))
    require(len(schemes) > 0, "at least one combining scheme is required")
    require(n_bits >= MIN_BITS, f"n_bits must be >= {MIN_BITS}")
    require(len(alloc.Pi) == scenario.R, "power allocation does not match the relay count")
    max_errors = settings.MAX_BIT_ERRORS if max_errors is None else int(max_errors)
    workers = max(1, int(workers or settings.WORKERS))
    fpb = int(frames_per_batch or settings.FRAMES_PER_BATCH)
    bits_per_frame = scenario.frame_length * scenario.bits_per_symbol
    sizes = _batch_sizes(n_bits, bits_per_frame, fpb)
    key = tuple(int(k) for k in key)

    counts = ErrorCounts(errors={s: 0 for s in schemes})

    def absorb(idx: int, result: dict[Scheme, int]) -> bool:
        counts.batches += 1
        counts.bits += sizes[idx] * bits_per_frame
        for s, e in result.items():
            counts.errors[s] += e
        logger.debug("batch %d: %s", idx, {s.value: e for s, e in result.items()})
        return max_errors > 0 and all(counts.errors[s] >= max_errors for s in schemes)

    def job(idx: int):
        return (scenario, alloc, schemes, sizes[idx], seed, key + (idx,), noise_variance)

    if workers == 1:
        for idx in range(len(sizes)):
            if absorb(idx, run_batch(*job(idx))):
                counts.stopped_early = idx + 1 < len(sizes)
                break
        return counts

    with ProcessPoolExecutor(max_workers=workers) as pool:
        for wave in range(0, len(sizes), workers):
            idxs = range(wave, min(wave + workers, len(sizes)))
            results = list(pool.map(run_batch, *zip(*(job(i) for i in idxs))))
            for idx, result in zip(idxs, results):
                if absorb(idx, result):
                    counts.stopped_early = idx + 1 < len(sizes)
                    return counts
    return counts


def ber_montecarlo(
    scenario: ScenarioConfig,
    alloc: PowerAllocation,
    scheme: Scheme | str,
    n_bits: int,
    seed: int,
    **kwargs,
) -> float:
    scheme = Scheme(scheme)
    return count_bit_errors(scenario, alloc, [scheme], n_bits, seed, **kwargs).ber(scheme)
