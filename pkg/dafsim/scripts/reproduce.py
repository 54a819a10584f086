from __future__ import annotations

import logging
import os
from pathlib import Path

from dafsim.core.config import settings
from dafsim.core.errors import DafError
from dafsim.core.log import configure_logging
from dafsim.core.scenarios import SCENARIO_PRESETS, Scheme
from dafsim.modules.harness.config_file import load_preset
from dafsim.modules.harness.experiments import power_grid, run_ber_sweep, run_pdf_experiment
from dafsim.utils.curve_csv import emit_curve_csv
from dafsim.utils.gnuplot import emit_gnuplot
from dafsim.utils.histogram_csv import emit_histogram_csv

logger = logging.getLogger("dafsim.scripts")

# (relays, M) pairs of the reproduced BER curves
CURVE_SETS = ((2, 2), (3, 4))


def reproduce(out_dir: Path, bits: int, seed: int, workers: int) -> list[Path]:
    written: list[Path] = []
    grid = power_grid(0.0, 40.0, 5.0)
    for preset in SCENARIO_PRESETS:
        cfg = load_preset(preset.name, 1, 2, seed=seed)
        hist = run_pdf_experiment(cfg, 1_000_000, seed)
        written.append(emit_histogram_csv(hist, out_dir / f"{preset.name}_envelope.csv"))

    for relays, M in CURVE_SETS:
        for preset in SCENARIO_PRESETS:
            cfg = load_preset(preset.name, relays, M, seed=seed)
            logger.info("sweep %s R=%d M=%d", preset.name, relays, M)
            curve = run_ber_sweep(cfg, grid, bits, seed, schemes=(Scheme.TVD, Scheme.CDD), workers=workers)
            csv_path = emit_curve_csv(curve, out_dir / f"{preset.name}_R{relays}_M{M}.csv")
            emit_gnuplot(csv_path, csv_path.with_suffix(".gp"), title=f"{preset.name}, R={relays}, M={M}")
            written.append(csv_path)
    return written


def main() -> int:
    configure_logging()
    out_dir = Path(os.getenv("DAF_REPRODUCE_DIR") or settings.OUTPUT_DIR)
    bits = int(os.getenv("DAF_REPRODUCE_BITS", str(settings.BITS_PER_POINT)))
    seed = int(os.getenv("DAF_REPRODUCE_SEED", "42"))
    try:
        written = reproduce(out_dir, bits, seed, settings.WORKERS)
    except DafError as e:
        logger.error("reproduction failed: %s", e)
        return e.exit_code
    logger.info("wrote %d files to %s", len(written), out_dir)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
