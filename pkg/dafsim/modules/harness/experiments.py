"""Experiment orchestration: BER sweeps, theory curves, envelope histograms, floors."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from dafsim.core.config import settings
from dafsim.core.errors import require
from dafsim.core.scenarios import ScenarioConfig, Scheme
from dafsim.modules.analysis import FloorCase, GammaBarSet, ber_from_pep, scenario_floor, theory_point
from dafsim.modules.channel import (
    cascaded_series_exact,
    cascaded_series_model,
    envelope_bin_density,
    envelope_histogram,
    scenario_alphas,
)
from dafsim.modules.harness.curves import BerCurve, BerPoint
from dafsim.modules.mathkernel import stream
from dafsim.modules.phylink import PowerAllocation, count_bit_errors

logger = logging.getLogger("dafsim.harness")

DEFAULT_SCHEMES = (Scheme.TVD, Scheme.CDD)


def power_grid(pmin: float, pmax: float, pstep: float) -> list[float]:
    """Inclusive dB grid pmin, pmin + pstep, ... <= pmax."""
    require(pstep > 0, "pstep must be > 0")
    require(pmax >= pmin, "pmax must be >= pmin")
    n = int(math.floor((pmax - pmin) / pstep + 1e-9)) + 1
    return [round(pmin + i * pstep, 10) for i in range(n)]


def _check_grid(grid: Sequence[float]) -> list[float]:
    grid = [float(p) for p in grid]
    require(len(grid) > 0, "the power grid is empty")
    require(all(a < b for a, b in zip(grid, grid[1:])), "the power grid must be strictly increasing")
    return grid


def run_ber_sweep(
    cfg: ScenarioConfig,
    P_grid_dB: Sequence[float],
    bits_per_point: int | None = None,
    seed: int | None = None,
    *,
    schemes: Iterable[Scheme | str] = DEFAULT_SCHEMES,
    workers: int | None = None,
    max_errors: int | None = None,
) -> BerCurve:
    """Simulated and theoretical BER over a power grid (default power split).

    Point j draws from the streams keyed (j, batch), so the curve is a pure
    function of (cfg, grid, bits, seed, schemes).
    """
    grid = _check_grid(P_grid_dB)
    schemes = tuple(dict.fromkeys(Scheme(s) for s in schemes))
    bits = int(bits_per_point or settings.BITS_PER_POINT)
    seed = cfg.seed if seed is None else int(seed)
    floor = scenario_floor(cfg)

    points = []
    for j, P_dB in enumerate(grid):
        alloc = PowerAllocation.from_db(P_dB, cfg.R)
        counts = count_bit_errors(
            cfg, alloc, schemes, bits, seed, key=(j,), workers=workers, max_errors=max_errors
        )
        th = theory_point(cfg, P_dB, floor)

        def sim(s: Scheme):
            return (counts.ber(s), counts.errors[s]) if s in counts.errors else (None, None)

        tvd, cdd, opt = sim(Scheme.TVD), sim(Scheme.CDD), sim(Scheme.OPTIMUM)
        points.append(
            BerPoint(
                P_dB=P_dB,
                ber_sim_tvd=tvd[0],
                ber_sim_cdd=cdd[0],
                ber_theory_lb=th.ber_theory_lb,
                ber_upper_bound=th.ber_upper_bound,
                floor=th.floor,
                n_bits=counts.bits,
                n_errors_tvd=tvd[1],
                n_errors_cdd=cdd[1],
                ber_sim_opt=opt[0],
                n_errors_opt=opt[1],
            )
        )
        logger.info(
            "P=%.1f dB bits=%d errors=%s theory=%.3g%s",
            P_dB,
            counts.bits,
            {s.value: e for s, e in counts.errors.items()},
            th.ber_theory_lb,
            " (early stop)" if counts.stopped_early else "",
        )
    return BerCurve(points=tuple(points))


def run_theory_curve(cfg: ScenarioConfig, P_grid_dB: Sequence[float]) -> BerCurve:
    grid = _check_grid(P_grid_dB)
    floor = scenario_floor(cfg)
    points = []
    for P_dB in grid:
        th = theory_point(cfg, P_dB, floor)
        points.append(
            BerPoint(
                P_dB=P_dB,
                ber_sim_tvd=None,
                ber_sim_cdd=None,
                ber_theory_lb=th.ber_theory_lb,
                ber_upper_bound=th.ber_upper_bound,
                floor=th.floor,
                n_bits=0,
                n_errors_tvd=None,
                n_errors_cdd=None,
            )
        )
    return BerCurve(points=tuple(points))


HISTOGRAM_COLUMNS = ("h_exact", "h_model", "delta_exact", "delta_model", "theory")


@dataclass(frozen=True, slots=True)
class PdfHistogram:
    centers: np.ndarray
    columns: dict[str, np.ndarray]
    alpha_i: float


def run_pdf_experiment(
    cfg: ScenarioConfig,
    samples: int,
    seed: int | None = None,
    *,
    relay: int = 0,
    stream_length: int = 10,
    bins: int | None = None,
    upper: float | None = None,
) -> PdfHistogram:
    """Envelope densities of |h_i|, |delta_i| and |delta_hat_i| for one relay path.

    Samples come from ``samples // stream_length`` independent streams, each
    started from the stationary cascaded distribution. The theory column is
    4 lam K0(2 lam) averaged over each bin.
    """
    require(samples >= 100_000, "samples must be >= 1e5")
    require(cfg.R >= 1, "the scenario has no relay path")
    require(0 <= relay < cfg.R, f"relay must be in [0, {cfg.R})")
    require(stream_length >= 1, "stream_length must be >= 1")
    seed = cfg.seed if seed is None else int(seed)
    bins = int(bins or settings.HIST_BINS)
    upper = float(upper or settings.HIST_MAX)

    alphas = scenario_alphas(cfg)
    a_sr, a_rd = alphas.alpha_sr[relay], alphas.alpha_rd[relay]
    batch = math.ceil(samples / stream_length)
    exact = cascaded_series_exact(a_sr, a_rd, stream_length, stream(seed, relay, 0), batch)
    model = cascaded_series_model(a_sr, a_rd, stream_length, stream(seed, relay, 1), batch)

    centers, h_exact = envelope_histogram(exact.h, bins, upper)
    _, h_model = envelope_histogram(model.h, bins, upper)
    _, d_exact = envelope_histogram(exact.delta, bins, upper)
    _, d_model = envelope_histogram(model.delta, bins, upper)
    edges = np.linspace(0.0, upper, bins + 1)
    logger.info("pdf experiment: alpha_i=%.6f, %d streams x %d samples", a_sr * a_rd, batch, stream_length)
    return PdfHistogram(
        centers=centers,
        columns={
            "h_exact": h_exact,
            "h_model": h_model,
            "delta_exact": d_exact,
            "delta_model": d_model,
            "theory": envelope_bin_density(edges),
        },
        alpha_i=a_sr * a_rd,
    )


@dataclass(frozen=True, slots=True)
class FloorReport:
    name: str
    M: int
    alpha0: float
    alphai: tuple[float, ...]
    gbar0: float
    gbari: tuple[float, ...]
    case: FloorCase
    pep_floor: float
    ber_floor: float


def floor_report(cfg: ScenarioConfig) -> FloorReport:
    alphas = scenario_alphas(cfg)
    gbars = GammaBarSet.from_alphas(alphas.alpha0, alphas.alphai)
    floor = scenario_floor(cfg)
    return FloorReport(
        name=cfg.name,
        M=cfg.M,
        alpha0=alphas.alpha0,
        alphai=alphas.alphai,
        gbar0=gbars.gbar0,
        gbari=gbars.gbari,
        case=floor.case,
        pep_floor=floor.value,
        ber_floor=ber_from_pep(floor.value, cfg.M),
    )
