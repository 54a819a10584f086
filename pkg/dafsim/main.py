"""Command-line entry point: ``python -m dafsim.main <verb> [options]``.

Verbs
    sweep    simulated + theoretical BER curve (CSV, optional gnuplot script)
    analyze  theory-only curve (fast)
    pdf      envelope histograms of the cascaded channel (CSV)
    floor    analytical error floor of a scenario (stdout)
    report   PDF run report from an existing curve CSV
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Sequence

from pydantic import ValidationError

from dafsim.core.config import settings
from dafsim.core.errors import ConfigError, DafError
from dafsim.core.log import configure_logging
from dafsim.core.scenarios import SCENARIO_PRESETS, ScenarioConfig, Scheme
from dafsim.modules.harness.config_file import load_config, load_preset, validation_problems
from dafsim.modules.harness.experiments import (
    floor_report,
    power_grid,
    run_ber_sweep,
    run_pdf_experiment,
    run_theory_curve,
)
from dafsim.utils.curve_csv import emit_curve_csv, parse_curve_csv
from dafsim.utils.gnuplot import emit_gnuplot
from dafsim.utils.histogram_csv import emit_histogram_csv
from dafsim.utils.pdf_report import write_run_report

logger = logging.getLogger("dafsim.cli")

SCHEME_CHOICES = {
    "tvd": (Scheme.TVD,),
    "cdd": (Scheme.CDD,),
    "optimum": (Scheme.OPTIMUM,),
    "all": (Scheme.TVD, Scheme.CDD, Scheme.OPTIMUM),
}


def _scenario_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--config", metavar="PATH", help="scenario file (key = value)")
    src.add_argument(
        "--preset",
        default="scenario_I",
        choices=[x.name for x in SCENARIO_PRESETS],
        help="fading scenario preset (default: scenario_I)",
    )
    p.add_argument("--relays", type=int, default=None, help="number of relays R (default 2 for presets)")
    p.add_argument("--mod", type=int, choices=(2, 4), default=None, help="DPSK order M")
    p.add_argument("--seed", type=int, default=None, help="master seed (overrides the scenario)")


def _grid_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--pmin", type=float, default=0.0, help="lowest total power in dB")
    p.add_argument("--pmax", type=float, default=40.0, help="highest total power in dB")
    p.add_argument("--pstep", type=float, default=5.0, help="power step in dB")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dafsim", description="D-AF multi-relay BER simulator")
    parser.add_argument("--log-level", default=None, help="logging level (default from DAF_LOG_LEVEL)")
    sub = parser.add_subparsers(dest="verb", required=True)

    sw = sub.add_parser("sweep", help="simulated and theoretical BER curve")
    _scenario_args(sw)
    _grid_args(sw)
    sw.add_argument("--bits", type=int, default=None, help="bits per SNR point")
    sw.add_argument("--scheme", choices=tuple(SCHEME_CHOICES), default="all")
    sw.add_argument("--workers", type=int, default=None, help="process-pool size")
    sw.add_argument("--gnuplot", action="store_true", help="also write a gnuplot script next to the CSV")
    sw.add_argument("--out", metavar="PATH", help="output CSV")

    an = sub.add_parser("analyze", help="theory-only BER curve")
    _scenario_args(an)
    _grid_args(an)
    an.add_argument("--gnuplot", action="store_true")
    an.add_argument("--out", metavar="PATH")

    pdf = sub.add_parser("pdf", help="envelope histograms of one relay path")
    _scenario_args(pdf)
    pdf.add_argument("--samples", type=int, default=1_000_000)
    pdf.add_argument("--relay", type=int, default=0, help="relay index")
    pdf.add_argument("--out", metavar="PATH")

    fl = sub.add_parser("floor", help="analytical error floor")
    _scenario_args(fl)

    rp = sub.add_parser("report", help="PDF report from a curve CSV")
    _scenario_args(rp)
    rp.add_argument("--curve", metavar="PATH", required=True, help="curve CSV written by sweep/analyze")
    rp.add_argument("--out", metavar="PATH")
    return parser


def resolve_scenario(args: argparse.Namespace) -> ScenarioConfig:
    if args.config:
        cfg = load_config(Path(args.config))
        overrides: dict[str, object] = {}
        if args.relays is not None and args.relays != cfg.R:
            raise ConfigError("--relays cannot change a scenario file; edit R and the Doppler lists")
        if args.mod is not None:
            overrides["M"] = args.mod
        if args.seed is not None:
            overrides["seed"] = args.seed
        if not overrides:
            return cfg
        try:
            return ScenarioConfig(**{**cfg.model_dump(), **overrides})
        except ValidationError as e:
            raise ConfigError(validation_problems(e)) from e
    extra = {} if args.seed is None else {"seed": args.seed}
    relays = 2 if args.relays is None else args.relays
    return load_preset(args.preset, relays, args.mod or 2, **extra)


def _default_out(cfg: ScenarioConfig, kind: str, suffix: str) -> Path:
    return Path(settings.OUTPUT_DIR) / f"{cfg.name}_R{cfg.R}_M{cfg.M}_{kind}{suffix}"


def _cmd_sweep(args: argparse.Namespace, cfg: ScenarioConfig) -> int:
    grid = power_grid(args.pmin, args.pmax, args.pstep)
    curve = run_ber_sweep(
        cfg, grid, args.bits, cfg.seed, schemes=SCHEME_CHOICES[args.scheme], workers=args.workers
    )
    out = emit_curve_csv(curve, args.out or _default_out(cfg, "ber", ".csv"))
    logger.info("wrote %s", out)
    if args.gnuplot:
        gp = emit_gnuplot(out, out.with_suffix(".gp"), title=f"{cfg.name}, R={cfg.R}, M={cfg.M}")
        logger.info("wrote %s", gp)
    return 0


def _cmd_analyze(args: argparse.Namespace, cfg: ScenarioConfig) -> int:
    curve = run_theory_curve(cfg, power_grid(args.pmin, args.pmax, args.pstep))
    out = emit_curve_csv(curve, args.out or _default_out(cfg, "theory", ".csv"))
    logger.info("wrote %s", out)
    if args.gnuplot:
        emit_gnuplot(out, out.with_suffix(".gp"), title=f"{cfg.name}, R={cfg.R}, M={cfg.M} (theory)")
    return 0


def _cmd_pdf(args: argparse.Namespace, cfg: ScenarioConfig) -> int:
    hist = run_pdf_experiment(cfg, args.samples, cfg.seed, relay=args.relay)
    out = emit_histogram_csv(hist, args.out or _default_out(cfg, f"pdf{args.relay}", ".csv"))
    logger.info("wrote %s", out)
    return 0


def _cmd_floor(args: argparse.Namespace, cfg: ScenarioConfig) -> int:
    r = floor_report(cfg)
    lines = [
        f"scenario     {r.name} (R={cfg.R}, M={r.M})",
        f"alpha_0      {r.alpha0:.9g}",
        f"alpha_i      {', '.join(f'{a:.9g}' for a in r.alphai) or '-'}",
        f"gamma_bar_0  {r.gbar0:.9g}",
        f"gamma_bar_i  {', '.join(f'{g:.9g}' for g in r.gbari) or '-'}",
        f"case         {r.case.value}",
        f"pep_floor    {r.pep_floor:.9g}",
        f"ber_floor    {r.ber_floor:.9g}",
    ]
    print("\n".join(lines))
    return 0


def _cmd_report(args: argparse.Namespace, cfg: ScenarioConfig) -> int:
    curve = parse_curve_csv(args.curve)
    out = write_run_report(curve, cfg, args.out or Path(args.curve).with_suffix(".pdf"))
    logger.info("wrote %s", out)
    return 0


COMMANDS = {
    "sweep": _cmd_sweep,
    "analyze": _cmd_analyze,
    "pdf": _cmd_pdf,
    "floor": _cmd_floor,
    "report": _cmd_report,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        cfg = resolve_scenario(args)
        return COMMANDS[args.verb](args, cfg)
    except ConfigError as e:
        for p in e.problems:
            print(f"config error: {p}", file=sys.stderr)
        return e.exit_code
    except DafError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
