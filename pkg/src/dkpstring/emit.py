"""Deterministic JSON, CSV and SVG text output."""

from __future__ import annotations

import csv
import io
import json
import math
from enum import Enum
from fractions import Fraction

import numpy as np

SCHEMA_VERSION = 1


def fmt_full(x) -> str:
    return "" if x is None else format(float(x) + 0.0, ".17g")


def fmt_display(x) -> str:
    return "" if x is None else format(float(x) + 0.0, ".6g")


def _encode(obj, indent, level) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, Enum):
        return _encode(obj.value, indent, level)
    if isinstance(obj, (int, np.integer)) and not isinstance(obj, bool):
        return str(int(obj))
    if isinstance(obj, (float, np.floating, Fraction)):
        x = float(obj) + 0.0  # folds -0.0 into 0.0
        return format(x, ".17g") if math.isfinite(x) else "null"
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{_encode(str(k), indent, level + 1)}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def to_json(doc: dict, indent: int = 2) -> str:
    """JSON with every float written at 17 significant digits and a schema version."""
    doc = {"schema_version": SCHEMA_VERSION, **doc}
    return _encode(doc, indent, 0) + "\n"


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def svg_polyline(x, y, width=640, height=400, margin=40, title="") -> str:
    """Minimal standalone SVG: axes box, zero line and one polyline."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    x0, x1 = float(x.min()), float(x.max())
    y0, y1 = min(float(y.min()), 0.0), max(float(y.max()), 0.0)
    if y1 == y0:
        y1 = y0 + 1.0
    sx = (width - 2 * margin) / (x1 - x0 if x1 > x0 else 1.0)
    sy = (height - 2 * margin) / (y1 - y0)

    def px(u):
        return margin + (u - x0) * sx

    def py(v):
        return height - margin - (v - y0) * sy

    points = " ".join(f"{px(u):.3f},{py(v):.3f}" for u, v in zip(x, y))
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n'
        f"<title>{title}</title>\n"
        f'<rect x="{margin}" y="{margin}" width="{width - 2 * margin}" '
        f'height="{height - 2 * margin}" fill="none" stroke="black"/>\n'
        f'<line x1="{margin}" y1="{py(0.0):.3f}" x2="{width - margin}" y2="{py(0.0):.3f}" '
        f'stroke="gray" stroke-dasharray="4 3"/>\n'
        f'<polyline fill="none" stroke="steelblue" stroke-width="1.5" points="{points}"/>\n'
        f'<text x="{margin}" y="{height - 10}" font-size="12">r in [{x0:.4g}, {x1:.4g}]</text>\n'
        "</svg>\n"
    )
