"""Deterministic SVG drawings of knot projections with gaps at under-crossings."""

from __future__ import annotations

import math

from .diagram import KnotDiagram, extract_diagram
from .embedding import PolyKnot

SIZE = 600
MARGIN = 20
PAD = 0.2  # fraction of the crossing box added on every side
GAP = 0.025  # half-gap at an under passage, as a fraction of the box diagonal
MAX_DEPTH = 14
ANGLE_TOL = 0.08


def _point(k: PolyKnot, t: float) -> tuple[float, float]:
    return (k.f.evalf(t), k.g.evalf(t))


def view_box(k: PolyKnot, dg: KnotDiagram) -> tuple[float, float, float, float]:
    """Bounding box of all crossings, padded; a parameter window around 0 without crossings."""
    if dg.crossings:
        pts = [(c.node.x, c.node.y) for c in dg.crossings]
    else:
        pts = [_point(k, t / 4) for t in range(-8, 9)]
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    w = max(x1 - x0, 1e-9)
    h = max(y1 - y0, 1e-9)
    side = max(w, h)
    # square box so the drawing is not distorted
    cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
    half = side * (0.5 + PAD)
    return (cx - half, cy - half, cx + half, cy + half)


def _inside(p, box, slack=1.0) -> bool:
    x0, y0, x1, y1 = box
    w, h = (x1 - x0) * slack, (y1 - y0) * slack
    cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
    return abs(p[0] - cx) <= w / 2 and abs(p[1] - cy) <= h / 2


def parameter_range(k: PolyKnot, dg: KnotDiagram, box) -> tuple[float, float]:
    params = [p for c in dg.crossings for p in (c.s, c.t)] or [0.0]
    lo, hi = min(params), max(params)
    step = max(1.0, hi - lo)
    for _ in range(200):
        if not _inside(_point(k, lo), box, 3.0):
            break
        lo -= step / 8
    for _ in range(200):
        if not _inside(_point(k, hi), box, 3.0):
            break
        hi += step / 8
    return lo, hi


def _turn(a, b, c) -> float:
    v1 = (b[0] - a[0], b[1] - a[1])
    v2 = (c[0] - b[0], c[1] - b[1])
    n1, n2 = math.hypot(*v1), math.hypot(*v2)
    if n1 == 0 or n2 == 0:
        return 0.0
    cosang = max(-1.0, min(1.0, (v1[0] * v2[0] + v1[1] * v2[1]) / (n1 * n2)))
    return math.acos(cosang)


def sample_curve(k: PolyKnot, lo: float, hi: float, max_len: float, base: int = 256) -> list[float]:
    """Parameters refined where the curve turns sharply or a chord is long."""
    ts = [lo + (hi - lo) * i / base for i in range(base + 1)]
    out = [ts[0]]

    def refine(a, b, depth):
        m = (a + b) / 2
        pa, pm, pb = _point(k, a), _point(k, m), _point(k, b)
        long_chord = math.hypot(pb[0] - pa[0], pb[1] - pa[1]) > max_len
        if depth < MAX_DEPTH and (long_chord or _turn(pa, pm, pb) > ANGLE_TOL):
            refine(a, m, depth + 1)
            refine(m, b, depth + 1)
        else:
            out.append(b)

    for a, b in zip(ts, ts[1:]):
        refine(a, b, 0)
    return out


def _strokes(k: PolyKnot, dg: KnotDiagram, box) -> list[list[tuple[float, float]]]:
    x0, y0, x1, y1 = box
    diag = math.hypot(x1 - x0, y1 - y0)
    lo, hi = parameter_range(k, dg, box)
    ts = sample_curve(k, lo, hi, diag / 200)
    # (under parameter, half the distance to the over parameter, crossing point)
    gaps = [(c.under_param, abs(c.t - c.s) / 2, (c.node.x, c.node.y)) for c in dg.crossings]
    gap = GAP * diag
    strokes, cur = [], []
    for t in ts:
        p = _point(k, t)
        hidden = any(abs(t - u) < r and math.hypot(p[0] - q[0], p[1] - q[1]) < gap for u, r, q in gaps)
        visible = _inside(p, box, 1.5) and not hidden
        if visible:
            cur.append(p)
        elif cur:
            strokes.append(cur)
            cur = []
    if cur:
        strokes.append(cur)
    return [s for s in strokes if len(s) > 1]


def render_svg(k: PolyKnot, dg: KnotDiagram | None = None, title: str | None = None) -> str:
    if dg is None:
        dg = extract_diagram(k)
    box = view_box(k, dg)
    x0, y0, x1, y1 = box
    scale = (SIZE - 2 * MARGIN) / (x1 - x0)

    def sx(p):
        return f"{MARGIN + (p[0] - x0) * scale:.3f},{SIZE - MARGIN - (p[1] - y0) * scale:.3f}"

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
    ]
    if title:
        lines.append(f"<title>{_escape(title)}</title>")
    lines.append(f'<clipPath id="box"><rect x="{MARGIN}" y="{MARGIN}" width="{SIZE - 2 * MARGIN}" '
                 f'height="{SIZE - 2 * MARGIN}"/></clipPath>')
    lines.append(f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>')
    lines.append('<g clip-path="url(#box)" fill="none" stroke="black" stroke-width="2" stroke-linecap="round">')
    for stroke in _strokes(k, dg, box):
        lines.append(f'<polyline points="{" ".join(sx(p) for p in stroke)}"/>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def stroke_count(svg: str) -> int:
    return svg.count("<polyline")
