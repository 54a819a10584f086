from __future__ import annotations

from datetime import datetime
from io import BytesIO
from pathlib import Path
from typing import Any

from reportlab.lib import colors
from reportlab.lib.enums import TA_CENTER
from reportlab.lib.pagesizes import A4, landscape
from reportlab.lib.styles import ParagraphStyle, getSampleStyleSheet
from reportlab.lib.units import cm
from reportlab.platypus import BaseDocTemplate, Frame, PageTemplate, Paragraph, Spacer, Table, TableStyle

from dafsim.core.errors import DafError
from dafsim.core.scenarios import GENERATOR_LABELS, ScenarioConfig
from dafsim.modules.analysis import FLOOR_CASE_LABELS
from dafsim.modules.harness.curves import BerCurve
from dafsim.modules.harness.experiments import floor_report

_GRID = colors.HexColor("#d0d7de")
_HEAD_BG = colors.HexColor("#f6f8fa")
_HEAD_FG = colors.HexColor("#24292f")
_MUTED = colors.HexColor("#57606a")

_CURVE_HEAD = ("P (dB)", "TVD", "CDD", "Optimum", "Lower bound", "Upper bound", "Bits", "Err TVD", "Err CDD", "Err opt")


def _fmt(v: Any) -> str:
    if v is None:
        return "-"
    if isinstance(v, int):
        return str(v)
    return f"{v:.3e}" if v != 0 else "0"


def _header_footer(canvas, doc, meta: dict[str, str]):
    width, height = getattr(doc, "pagesize", A4)
    canvas.saveState()

    canvas.setStrokeColor(_GRID)
    canvas.setLineWidth(1)
    canvas.line(2 * cm, height - 2.2 * cm, width - 2 * cm, height - 2.2 * cm)

    canvas.setFillColor(colors.black)
    canvas.setFont("Helvetica-Bold", 12)
    canvas.drawString(2 * cm, height - 1.2 * cm, meta.get("title", "D-AF run report"))
    canvas.setFont("Helvetica", 9)
    canvas.setFillColor(_MUTED)
    canvas.drawString(2 * cm, height - 1.65 * cm, meta.get("subtitle", ""))
    canvas.drawRightString(width - 2 * cm, height - 1.55 * cm, meta.get("date", ""))

    canvas.setStrokeColor(_GRID)
    canvas.line(2 * cm, 1.6 * cm, width - 2 * cm, 1.6 * cm)
    canvas.drawCentredString(width / 2, 1.1 * cm, f"Page {canvas.getPageNumber()}")
    canvas.restoreState()


def _table(rows: list[list[str]], col_widths=None, header: bool = True) -> Table:
    t = Table(rows, colWidths=col_widths, repeatRows=1 if header else 0)
    style = [
        ("GRID", (0, 0), (-1, -1), 0.5, _GRID),
        ("FONTNAME", (0, 0), (-1, -1), "Helvetica"),
        ("FONTSIZE", (0, 0), (-1, -1), 8),
        ("VALIGN", (0, 0), (-1, -1), "MIDDLE"),
        ("ALIGN", (1, 0), (-1, -1), "RIGHT"),
    ]
    if header:
        style += [
            ("BACKGROUND", (0, 0), (-1, 0), _HEAD_BG),
            ("TEXTCOLOR", (0, 0), (-1, 0), _HEAD_FG),
            ("FONTNAME", (0, 0), (-1, 0), "Helvetica-Bold"),
            ("ROWBACKGROUNDS", (0, 1), (-1, -1), [colors.white, colors.HexColor("#fbfbfc")]),
        ]
    else:
        style += [
            ("BACKGROUND", (0, 0), (0, -1), _HEAD_BG),
            ("FONTNAME", (0, 0), (0, -1), "Helvetica-Bold"),
            ("ALIGN", (1, 0), (-1, -1), "LEFT"),
        ]
    t.setStyle(TableStyle(style))
    return t


def build_run_report_pdf(curve: BerCurve, cfg: ScenarioConfig) -> bytes:
    """Tabular PDF summary of a sweep: scenario, floors and the BER points."""
    styles = getSampleStyleSheet()
    base = ParagraphStyle(name="Base", parent=styles["Normal"], fontName="Helvetica", fontSize=10, leading=14)
    h2 = ParagraphStyle(
        name="H2", parent=base, fontName="Helvetica-Bold", fontSize=12, leading=18, spaceBefore=10, spaceAfter=6
    )
    note = ParagraphStyle(name="Note", parent=base, fontSize=8, textColor=_MUTED, alignment=TA_CENTER)

    meta = {
        "title": "D-AF run report",
        "subtitle": f"{cfg.name} | R = {cfg.R} | M = {cfg.M}",
        "date": datetime.now().strftime("%Y-%m-%d %H:%M"),
    }

    buff = BytesIO()
    page = landscape(A4)
    left_m = right_m = 2 * cm
    top_m, bottom_m = 3 * cm, 2.2 * cm
    doc_tpl = BaseDocTemplate(
        buff,
        pagesize=page,
        leftMargin=left_m,
        rightMargin=right_m,
        topMargin=top_m,
        bottomMargin=bottom_m,
        title=f"daf_{cfg.name}",
    )
    frame = Frame(left_m, bottom_m, page[0] - left_m - right_m, page[1] - top_m - bottom_m, id="F", showBoundary=0)
    doc_tpl.addPageTemplates([PageTemplate(id="main", frames=[frame], onPage=lambda c, d: _header_footer(c, d, meta))])

    fl = floor_report(cfg)
    story: list[Any] = [Paragraph("Scenario", h2)]
    story.append(
        _table(
            [
                ["Name", cfg.name],
                ["Relays", str(cfg.R)],
                ["Constellation", f"{cfg.M}-DPSK"],
                ["Doppler S-D", f"{cfg.f_sd:g}"],
                ["Doppler S-R", ", ".join(f"{f:g}" for f in cfg.f_sr) or "-"],
                ["Doppler R-D", ", ".join(f"{f:g}" for f in cfg.f_rd) or "-"],
                ["Generator", GENERATOR_LABELS[cfg.generator]],
                ["Frame length", str(cfg.frame_length)],
                ["Seed", str(cfg.seed)],
            ],
            col_widths=[5 * cm, 12 * cm],
            header=False,
        )
    )
    story.append(Paragraph("Error floor", h2))
    story.append(
        _table(
            [
                ["alpha_0", f"{fl.alpha0:.9g}"],
                ["alpha_i", ", ".join(f"{a:.9g}" for a in fl.alphai) or "-"],
                ["gamma-bar_0", f"{fl.gbar0:.6g}"],
                ["gamma-bar_i", ", ".join(f"{g:.6g}" for g in fl.gbari) or "-"],
                ["Case", FLOOR_CASE_LABELS[fl.case]],
                ["BER floor", _fmt(fl.ber_floor)],
            ],
            col_widths=[5 * cm, 12 * cm],
            header=False,
        )
    )

    story.append(Paragraph("BER curve", h2))
    rows = [list(_CURVE_HEAD)]
    for p in curve:
        rows.append(
            [
                f"{p.P_dB:g}",
                _fmt(p.ber_sim_tvd),
                _fmt(p.ber_sim_cdd),
                _fmt(p.ber_sim_opt),
                _fmt(p.ber_theory_lb),
                _fmt(p.ber_upper_bound),
                _fmt(p.n_bits),
                _fmt(p.n_errors_tvd),
                _fmt(p.n_errors_cdd),
                _fmt(p.n_errors_opt),
            ]
        )
    story.append(_table(rows))
    story.append(Spacer(1, 8))
    story.append(Paragraph("Lower bound: optimum-weight analysis; simulated columns use the listed bit counts.", note))

    doc_tpl.build(story)
    return buff.getvalue()


def write_run_report(curve: BerCurve, cfg: ScenarioConfig, path: str | Path) -> Path:
    path = Path(path)
    data = build_run_report_pdf(curve, cfg)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(data)
    except OSError as e:
        raise DafError(f"cannot write report {path}: {e.strerror or e}") from e
    return path
