"""JSON and SVG renderings of a triangulation of the junior simplex."""

from __future__ import annotations

import json
import math
from fractions import Fraction

from ..errors import UnsupportedFormat
from ..group_core import perm_is_odd
from .lattice import LatticePoint
from .triangulation import SymmetryAction, Triangulation

FORMATS = ("json", "svg")

WIDTH = 1000
HEIGHT = 866
_MARGIN = 40
_SQRT3_2 = math.sqrt(3) / 2


def vertex_kind(p: LatticePoint) -> str:
    if p.is_corner:
        return "corner"
    return "phi2" if p.has_zero_coord else "phi1"


def to_json(t: Triangulation) -> str:
    """Geometry JSON with one vertex or triangle per line."""
    verts = [
        json.dumps({"coords": [f"{a}/{p.den}" for a in p.num], "kind": vertex_kind(p)})
        for p in t.vertices
    ]
    tris = [json.dumps(list(tri)) for tri in t.triangles]
    return (
        "{\n"
        f'  "denominator": {t.denominator},\n'
        '  "vertices": [\n    ' + ",\n    ".join(verts) + "\n  ],\n"
        '  "triangles": [\n    ' + ",\n    ".join(tris) + "\n  ]\n"
        "}\n"
    )


def from_json(text: str | bytes) -> Triangulation:
    doc = json.loads(text)
    d = int(doc["denominator"])
    verts = []
    for v in doc["vertices"]:
        coords = [Fraction(c) for c in v["coords"]]
        num = tuple(int(c * d) for c in coords)
        if any(Fraction(a, d) != c for a, c in zip(num, coords)):
            raise ValueError(f"vertex {v['coords']} does not have denominator {d}")
        verts.append(LatticePoint(num, d))
    tris = tuple(tuple(int(i) for i in tri) for tri in doc["triangles"])
    return Triangulation(tuple(verts), tris)


def _project(p: LatticePoint) -> tuple[float, float]:
    """Barycentric placement e1 -> (0,0), e2 -> (1,0), e3 -> (1/2, sqrt3/2); y flipped for SVG."""
    x, y, z = (a / p.den for a in p.num)
    u = y + 0.5 * z
    v = _SQRT3_2 * z
    scale = WIDTH - 2 * _MARGIN
    return _MARGIN + u * scale, HEIGHT - _MARGIN - v * scale


def _fmt(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def _axes(w: SymmetryAction | None) -> list[tuple[LatticePoint, LatticePoint]]:
    """Reflection axes: the median through the fixed corner of each transposition."""
    perms = w.perms if w is not None else ((0, 1, 2), (0, 2, 1))
    out = []
    for perm in perms:
        if not perm_is_odd(perm):
            continue
        fixed = next(i for i in range(3) if perm[i] == i)
        corner = [0, 0, 0]
        corner[fixed] = 2
        mid = [1, 1, 1]
        mid[fixed] = 0
        out.append((LatticePoint(tuple(corner), 2), LatticePoint(tuple(mid), 2)))
    return out


def to_svg(t: Triangulation, w: SymmetryAction | None = None) -> str:
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        '<rect x="0" y="0" width="100%" height="100%" fill="white"/>',
        '<g id="axes" stroke="#c33" stroke-width="2" stroke-dasharray="8 6">',
    ]
    for a, b in _axes(w):
        (x1, y1), (x2, y2) = _project(a), _project(b)
        lines.append(f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}"/>')
    lines.append("</g>")
    lines.append('<g id="triangles" fill="none" stroke="black" stroke-width="1">')
    for tri in t.triangles:
        pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in (_project(t.vertices[i]) for i in tri))
        lines.append(f'<polygon points="{pts}"/>')
    lines.append("</g>")
    lines.append('<g id="vertices">')
    for p in t.vertices:
        x, y = _project(p)
        kind = vertex_kind(p)
        if kind == "phi2":
            lines.append(
                f'<rect class="phi2" x="{_fmt(x - 4)}" y="{_fmt(y - 4)}" width="8" height="8" fill="#1f5fbf"/>'
            )
        elif kind == "phi1":
            lines.append(f'<circle class="phi1" cx="{_fmt(x)}" cy="{_fmt(y)}" r="4.5" fill="#2a9d4a"/>')
        else:
            lines.append(
                f'<circle class="corner" cx="{_fmt(x)}" cy="{_fmt(y)}" r="7" fill="white" '
                'stroke="black" stroke-width="2"/>'
            )
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def export_geometry(t: Triangulation, format: str, w: SymmetryAction | None = None) -> bytes:
    fmt = str(format).lower()
    if fmt == "json":
        return to_json(t).encode("utf-8")
    if fmt == "svg":
        return to_svg(t, w).encode("utf-8")
    raise UnsupportedFormat(f"unsupported format {format!r}; choose one of {', '.join(FORMATS)}")
