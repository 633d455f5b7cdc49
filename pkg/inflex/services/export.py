"""
Inflex — Exportación de resultados
CSV con cabecera de procedencia, JSON canónico de reportes y SVG de polígonos
de Newton renderizado con Jinja2.
"""
import csv
import io
import json
import logging
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Sequence

from jinja2 import Environment, FileSystemLoader, select_autoescape

from inflex.core.constants import (
    APP_NAME,
    APP_VERSION,
    HISTOGRAM_CSV_HEADER,
    POINT_COUNT_CSV_HEADER,
    SVG_SCALE,
)
from inflex.core.ffarith import PointCountRecord, SatoTateResult
from inflex.core.lattice import LatticePolygon, interior_lattice_points
from inflex.core.reports import VerificationReport, serialize

logger = logging.getLogger(__name__)

TEMPLATES_DIR = Path(__file__).resolve().parent.parent / "templates"

_env = Environment(
    loader=FileSystemLoader(str(TEMPLATES_DIR)),
    autoescape=select_autoescape(["svg", "xml", "j2"]),
    keep_trailing_newline=True,
)


# ── Cabecera de procedencia ───────────────────────────────────────────────────

def provenance_lines(command: str, params: dict) -> list[str]:
    """Comment lines for the top of a CSV; the only non-deterministic content is the timestamp."""
    stamp = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
    rendered = json.dumps(serialize(params), sort_keys=True, ensure_ascii=False)
    return [f"# {APP_NAME} {APP_VERSION} {command}", f"# params: {rendered}", f"# generated: {stamp}"]


def write_csv(header: Sequence[str], rows: Iterable[Sequence], command: str = "",
              params: dict | None = None, include_header: bool = True) -> str:
    output = io.StringIO()
    if include_header:
        for line in provenance_lines(command, params or {}):
            output.write(line + "\n")
    writer = csv.writer(output, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return output.getvalue()


def point_counts_csv(records: Sequence[PointCountRecord], params: dict | None = None,
                     include_header: bool = True) -> str:
    return write_csv(POINT_COUNT_CSV_HEADER, (r.to_row() for r in records), "count", params, include_header)


def histogram_csv(result: SatoTateResult, include_header: bool = True) -> str:
    rows = [(f"{lo:.6f}", f"{hi:.6f}", freq) for lo, hi, freq in result.histogram]
    text = write_csv(HISTOGRAM_CSV_HEADER, rows, "satotate",
                     {"bound": result.bound, "bins": len(result.histogram)}, include_header)
    return text + f"# ks_statistic={result.ks_statistic:.6f} ks_pvalue={result.ks_pvalue:.6f}\n"


# ── JSON ──────────────────────────────────────────────────────────────────────

def to_json(obj) -> str:
    return json.dumps(serialize(obj), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def reports_json(reports: Sequence[VerificationReport], include_time: bool = True) -> str:
    """Reports ordered by id; without timing the output is byte-stable."""
    ordered = sorted(reports, key=lambda r: r.id)
    return json.dumps([r.to_dict(include_time) for r in ordered], indent=2, sort_keys=True,
                      ensure_ascii=False) + "\n"


def write_text(path: Path, text: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.info(f"[Export] {path} ({len(text)} bytes)")
    return path


# ── SVG ───────────────────────────────────────────────────────────────────────

def polygon_svg(polygon: LatticePolygon, title: str = "", scale: int = SVG_SCALE) -> str:
    """Newton polygon with every lattice point of its bounding box that lies in it."""
    xs = [p[0] for p in polygon.vertices]
    ys = [p[1] for p in polygon.vertices]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    margin = 2 * scale
    width = (x1 - x0) * scale + 2 * margin
    height = (y1 - y0) * scale + 2 * margin

    def cx(i):
        return margin + (i - x0) * scale

    def cy(j):
        return height - margin - (j - y0) * scale

    count, inside = interior_lattice_points(polygon)
    interior = set(inside)
    vertices = set(polygon.vertices)
    points = [
        {"i": i, "j": j, "cx": cx(i), "cy": cy(j), "vertex": (i, j) in vertices, "interior": (i, j) in interior}
        for i in range(x0, x1 + 1) for j in range(y0, y1 + 1)
        if polygon.contains((i, j))
    ]
    return _env.get_template("polygon.svg.j2").render(
        title=title or "Newton polygon",
        width=width,
        height=height,
        margin=margin,
        grid_x=[cx(i) for i in range(x0, x1 + 1)],
        grid_y=[cy(j) for j in range(y0, y1 + 1)],
        outline=[(cx(i), cy(j)) for i, j in polygon.vertices],
        points=points,
        interior=count,
    )
