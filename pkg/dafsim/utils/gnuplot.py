from __future__ import annotations

from pathlib import Path

from dafsim.core.errors import DafError
from dafsim.modules.harness.curves import POINT_FIELDS

# (column, title, style)
_SERIES = (
    ("ber_sim_tvd", "TVD (sim)", "points pt 7"),
    ("ber_sim_cdd", "CDD (sim)", "points pt 5"),
    ("ber_sim_opt", "optimum weights (sim)", "points pt 9"),
    ("ber_theory_lb", "lower bound", "lines lw 2"),
    ("ber_upper_bound", "upper bound", "lines dt 2"),
    ("floor", "error floor", "lines dt 3"),
)


def gnuplot_script(curve_csv: str | Path, title: str = "BER") -> str:
    data = Path(curve_csv).as_posix()
    plots = []
    for name, label, style in _SERIES:
        col = POINT_FIELDS.index(name) + 1
        plots.append(f"'{data}' using 1:(valid({col}) && ${col} > 0 ? ${col} : NaN) with {style} title '{label}'")
    return "\n".join(
        [
            "set datafile separator ','",
            "set key autotitle columnhead",
            f"set title '{title}'",
            "set xlabel 'P (dB)'",
            "set ylabel 'BER'",
            "set logscale y",
            "set format y '10^{%L}'",
            "set grid",
            "plot " + ", \\\n     ".join(plots),
            "",
        ]
    )


def emit_gnuplot(curve_csv: str | Path, path: str | Path, title: str = "BER") -> Path:
    """Write a gnuplot script plotting every BER column of a curve CSV."""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(gnuplot_script(curve_csv, title), encoding="utf-8")
    except OSError as e:
        raise DafError(f"cannot write gnuplot script {path}: {e.strerror or e}") from e
    return path
