from __future__ import annotations

import csv
import io
from pathlib import Path

from dafsim.core.errors import DafError
from dafsim.modules.harness.curves import POINT_FIELDS, BerCurve, BerPoint

INT_FIELDS = {"n_bits", "n_errors_tvd", "n_errors_cdd", "n_errors_opt"}


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, int):
        return str(value)
    return "%.9g" % value


def curve_to_text(curve: BerCurve) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(POINT_FIELDS)
    for p in curve:
        w.writerow([_cell(getattr(p, name)) for name in POINT_FIELDS])
    return buf.getvalue()


def emit_curve_csv(curve: BerCurve, path: str | Path) -> Path:
    """Write one header row plus one row per point; 9 significant digits."""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(curve_to_text(curve), encoding="utf-8")
    except OSError as e:
        raise DafError(f"cannot write curve CSV {path}: {e.strerror or e}") from e
    return path


def _parse(name: str, raw: str):
    raw = raw.strip()
    if raw == "":
        return None
    return int(raw) if name in INT_FIELDS else float(raw)


def parse_curve_text(text: str, origin: str = "<text>") -> BerCurve:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise DafError(f"{origin}: empty curve CSV")
    header = tuple(c.strip() for c in rows[0])
    missing = [f for f in POINT_FIELDS if f not in header]
    if missing:
        raise DafError(f"{origin}: missing columns {', '.join(missing)}")
    points = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        try:
            values = {name: _parse(name, raw) for name, raw in zip(header, row) if name in POINT_FIELDS}
            points.append(BerPoint(**values))
        except (TypeError, ValueError) as e:
            raise DafError(f"{origin}:{lineno}: {e}") from e
    return BerCurve(points=tuple(points))


def parse_curve_csv(path: str | Path) -> BerCurve:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise DafError(f"cannot read curve CSV {path}: {e.strerror or e}") from e
    return parse_curve_text(text, str(path))
