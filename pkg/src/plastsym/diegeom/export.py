"""Geometry serialization: delimited text and static SVG.

CSV rows are `curve_id,kind,x,y` with coordinates printed to 17
significant digits, enough for a bit-exact float64 round trip.  SVG
output is static 1.1 markup, one path per polyline, auto-fit viewBox
with a 5% margin and a fixed style per curve kind.
"""
from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .assemble import DieGeometry
from .trace import Polyline

_SVG_STYLE = {
    "flowline": ("#1f77b4", 1.0),
    "limit": ("#d62728", 1.4),
    "sliplineA": ("#2ca02c", 0.8),
    "sliplineB": ("#9467bd", 0.8),
    "contour": ("#111111", 1.8),
    "vector": ("#7f7f7f", 0.6),
}


def _as_named_polylines(g) -> list[tuple[str, Polyline]]:
    if isinstance(g, DieGeometry):
        return [("inner", g.inner), ("outer", g.outer),
                ("entry_limit", g.entry_limit), ("exit_limit", g.exit_limit)]
    out = []
    for i, poly in enumerate(g):
        name = poly.meta.get("name") if poly.meta else None
        out.append((str(name) if name else f"{poly.kind}_{i:04d}", poly))
    if not out:
        raise ValueError("nothing to export")
    return out


def _write_csv(named, path: Path) -> Path:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["curve_id", "kind", "x", "y"])
        for name, poly in named:
            for x, y in poly.points:
                w.writerow([name, poly.kind, f"{x:.17g}", f"{y:.17g}"])
    return path


def _write_svg(named, path: Path) -> Path:
    allpts = np.vstack([p.points for _, p in named])
    lo = allpts.min(axis=0)
    hi = allpts.max(axis=0)
    span = np.maximum(hi - lo, 1e-9)
    margin = 0.05 * float(max(span))
    x0, y0 = lo - margin
    w, h = (hi - lo) + 2 * margin
    # flip y so the model's +y points up on screen
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{x0:.6g} {-(y0 + h):.6g} {w:.6g} {h:.6g}" '
        f'width="640" height="{640 * h / w:.6g}">',
    ]
    stroke_scale = float(max(w, h)) / 640.0
    for name, poly in named:
        color, rel_width = _SVG_STYLE[poly.kind]
        d = "M " + " L ".join(f"{x:.10g},{-y:.10g}" for x, y in poly.points)
        lines.append(
            f'  <path id="{name}" fill="none" stroke="{color}" '
            f'stroke-width="{2.0 * rel_width * stroke_scale:.6g}" '
            f'd="{d}"/>')
    lines.append("</svg>")
    path.write_text("\n".join(lines) + "\n")
    return path


def export_geometry(g, format: str, path) -> Path:
    """Write a DieGeometry or a list of Polylines to `path`."""
    named = _as_named_polylines(g)
    path = Path(path)
    if format == "csv":
        return _write_csv(named, path)
    if format == "svg":
        return _write_svg(named, path)
    raise ValueError(f"unknown export format {format!r}; use csv or svg")


def load_polylines_csv(path) -> list[Polyline]:
    """Re-read an exported CSV; coordinates round-trip bit-exactly."""
    groups: dict[str, tuple[str, list]] = {}
    with open(path, newline="") as fh:
        rdr = csv.reader(fh)
        header = next(rdr)
        if header != ["curve_id", "kind", "x", "y"]:
            raise ValueError(f"unexpected CSV header {header!r}")
        for cid, kind, x, y in rdr:
            groups.setdefault(cid, (kind, []))[1].append((float(x), float(y)))
    return [Polyline(np.array(pts), kind, {"name": cid})
            for cid, (kind, pts) in groups.items()]
