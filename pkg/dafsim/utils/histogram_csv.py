from __future__ import annotations

import csv
from pathlib import Path

from dafsim.core.errors import DafError
from dafsim.modules.harness.experiments import HISTOGRAM_COLUMNS, PdfHistogram


def emit_histogram_csv(hist: PdfHistogram, path: str | Path) -> Path:
    path = Path(path)
    header = ("bin_center",) + HISTOGRAM_COLUMNS
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            for i, c in enumerate(hist.centers):
                w.writerow(["%.9g" % c] + ["%.9g" % hist.columns[name][i] for name in HISTOGRAM_COLUMNS])
    except OSError as e:
        raise DafError(f"cannot write histogram CSV {path}: {e.strerror or e}") from e
    return path
