"""Serialisation and SVG rendering.

Signature documents are JSON objects::

    {"degree": 3,
     "blue": [[0, 2], [4, 10], [6, 8]],
     "red": [[1, 7], [3, 5], [9, 11]],
     "pencils": [{"color": "red", "spokes": [1, 3, 7, 9]}]}

``spokes`` lists the boundary labels reached by the spokes of a pencil in
counterclockwise order; spoke ``k`` and spoke ``k + m`` belong to one chord.
Nerve documents hold ``degree`` and ``cells``, each cell being
``{"id", "codim", "key", "boundary"}`` with ids ranked by key.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .core_map import BLUE, RED, label_color, norm_chord
from .signature import InvalidSignature, Signature

COLORS = {BLUE: "#1f4fd1", RED: "#d12a1f"}


class SchemaError(ValueError):
    def __init__(self, field: str, message: str) -> None:
        super().__init__(f"{field}: {message}")
        self.field = field


# signatures


def _spokes(chords) -> list[int]:
    return sorted(x for c in chords for x in c)


def signature_to_dict(sig: Signature) -> dict:
    return {
        "degree": sig.degree,
        "blue": [list(c) for c in sorted(sig.blue)],
        "red": [list(c) for c in sorted(sig.red)],
        "pencils": [
            {"color": color, "spokes": _spokes(chords)} for color, chords in sig.pencils
        ],
    }


def write_signature(sig: Signature) -> str:
    return json.dumps(signature_to_dict(sig), indent=1, sort_keys=True) + "\n"


def _chord_list(doc: dict, field: str, parity: int, n: int) -> list[tuple[int, int]]:
    raw = doc.get(field)
    if not isinstance(raw, list):
        raise SchemaError(field, "expected a list of pairs")
    out = []
    for i, pair in enumerate(raw):
        where = f"{field}[{i}]"
        if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(x, int) for x in pair)):
            raise SchemaError(where, "expected two integers")
        a, b = pair
        if not (0 <= a < n and 0 <= b < n) or a == b:
            raise SchemaError(where, f"labels must be distinct and lie in 0..{n - 1}")
        if a % 2 != parity or b % 2 != parity:
            raise SchemaError(where, f"{field} chords need {'even' if parity == 0 else 'odd'} labels")
        out.append(norm_chord(a, b))
    return out


def signature_from_dict(doc: dict) -> Signature:
    if not isinstance(doc, dict):
        raise SchemaError("document", "expected an object")
    d = doc.get("degree")
    if not isinstance(d, int) or d < 1:
        raise SchemaError("degree", "expected a positive integer")
    n = 4 * d
    blue = _chord_list(doc, "blue", 0, n)
    red = _chord_list(doc, "red", 1, n)
    pencils = []
    for i, rec in enumerate(doc.get("pencils", [])):
        where = f"pencils[{i}]"
        if not isinstance(rec, dict) or rec.get("color") not in (BLUE, RED):
            raise SchemaError(where, "expected {color, spokes}")
        spokes = rec.get("spokes")
        if not isinstance(spokes, list) or len(spokes) < 4 or len(spokes) % 2:
            raise SchemaError(f"{where}.spokes", "expected an even list of at least 4 labels")
        if any(not isinstance(x, int) or label_color(x) != rec["color"] for x in spokes):
            raise SchemaError(f"{where}.spokes", "labels must match the pencil color")
        m = len(spokes) // 2
        order = sorted(spokes)
        pencils.append((rec["color"], [norm_chord(order[k], order[k + m]) for k in range(m)]))
    try:
        return Signature(d, tuple(blue), tuple(red), tuple(pencils)).validate()
    except InvalidSignature as exc:
        raise SchemaError("document", str(exc)) from exc


def read_signature(text: str) -> Signature:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"line {exc.lineno}", exc.msg) from exc
    return signature_from_dict(doc)


# nerve and census


def write_nerve(cx) -> str:
    doc = {"degree": cx.degree, "cells": cx.records()}
    return json.dumps(doc, sort_keys=True) + "\n"


def read_nerve(text: str) -> dict:
    doc = json.loads(text)
    for i, cell in enumerate(doc.get("cells", [])):
        for key in ("id", "codim", "key", "boundary"):
            if key not in cell:
                raise SchemaError(f"cells[{i}]", f"missing {key}")
    return doc


# SVG


def _fmt(x: float) -> str:
    s = f"{x:.4f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _point(k: int, n: int, r: float = 1.0) -> np.ndarray:
    a = 2 * math.pi * k / n
    return np.array([r * math.cos(a), -r * math.sin(a)])


def _bezier(p0, c0, c1, p1, steps: int = 48) -> np.ndarray:
    t = np.linspace(0, 1, steps + 1)[:, None]
    return (1 - t) ** 3 * p0 + 3 * (1 - t) ** 2 * t * c0 + 3 * (1 - t) * t**2 * c1 + t**3 * p1


def _segment_hit(p, q, a, b):
    d1, d2 = q - p, b - a
    den = d1[0] * d2[1] - d1[1] * d2[0]
    if den == 0:
        return None
    w = a - p
    s = (w[0] * d2[1] - w[1] * d2[0]) / den
    u = (w[0] * d1[1] - w[1] * d1[0]) / den
    if 0 <= s <= 1 and 0 <= u <= 1:
        return p + s * d1
    return None


def _first_hit(pa: np.ndarray, pb: np.ndarray):
    for i in range(len(pa) - 1):
        for j in range(len(pb) - 1):
            hit = _segment_hit(pa[i], pa[i + 1], pb[j], pb[j + 1])
            if hit is not None:
                return hit
    return None


def _strand_geometry(sig: Signature):
    """Per strand: SVG path data and a polyline, plus pencil dot positions."""
    n = sig.n
    dot = {}
    for color, chords in sig.pencils:
        pts = [_point(x, n) for c in chords for x in c]
        dot[frozenset(chords)] = (color, np.mean(pts, axis=0))
    through = {}
    for group in dot:
        for c in group:
            through[c] = group
    out = {}
    for chord in sig.blue + sig.red:
        a, b = (_point(x, n) for x in chord)
        if chord in through:
            m = dot[through[chord]][1]
            half1 = _bezier(a, 0.7 * a, 0.5 * (0.7 * a + m), m)
            half2 = _bezier(m, 0.5 * (0.7 * b + m), 0.7 * b, b)
            poly = np.vstack([half1, half2[1:]])
            d = (
                f"M {_fmt(a[0])} {_fmt(a[1])} C {_fmt(0.7 * a[0])} {_fmt(0.7 * a[1])} "
                f"{_fmt(0.5 * (0.7 * a[0] + m[0]))} {_fmt(0.5 * (0.7 * a[1] + m[1]))} "
                f"{_fmt(m[0])} {_fmt(m[1])} C {_fmt(0.5 * (0.7 * b[0] + m[0]))} "
                f"{_fmt(0.5 * (0.7 * b[1] + m[1]))} {_fmt(0.7 * b[0])} {_fmt(0.7 * b[1])} "
                f"{_fmt(b[0])} {_fmt(b[1])}"
            )
        else:
            poly = _bezier(a, 0.7 * a, 0.7 * b, b)
            d = (
                f"M {_fmt(a[0])} {_fmt(a[1])} C {_fmt(0.7 * a[0])} {_fmt(0.7 * a[1])} "
                f"{_fmt(0.7 * b[0])} {_fmt(0.7 * b[1])} {_fmt(b[0])} {_fmt(b[1])}"
            )
        out[chord] = (d, poly)
    return out, list(dot.values())


def render_signature(sig: Signature, size: int = 400) -> str:
    """SVG 1.1 picture: boundary labels, chords as cubic arcs, pencil and crossing dots."""
    n = sig.n
    geo, dots = _strand_geometry(sig)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        'viewBox="-1.25 -1.25 2.5 2.5">',
        f"<title>{sig.key}</title>",
        '<circle cx="0" cy="0" r="1" fill="none" stroke="#888" stroke-width="0.008"/>',
    ]
    for chord in sorted(geo):
        color = COLORS[label_color(chord[0])]
        lines.append(
            f'<path class="chord" d="{geo[chord][0]}" fill="none" stroke="{color}" stroke-width="0.02"/>'
        )
    for color, m in sorted(dots, key=lambda t: (t[0], tuple(t[1]))):
        lines.append(
            f'<circle class="pencil" cx="{_fmt(m[0])}" cy="{_fmt(m[1])}" r="0.04" fill="{COLORS[color]}"/>'
        )
    for b, r in sorted(sig.crossings()):
        hit = _first_hit(geo[b][1], geo[r][1])
        if hit is not None:
            lines.append(
                f'<circle class="crossing" cx="{_fmt(hit[0])}" cy="{_fmt(hit[1])}" r="0.03" fill="#000"/>'
            )
    for k in range(n):
        p, q = _point(k, n), _point(k, n, 1.12)
        lines.append(f'<circle cx="{_fmt(p[0])}" cy="{_fmt(p[1])}" r="0.015" fill="#000"/>')
        lines.append(
            f'<text x="{_fmt(q[0])}" y="{_fmt(q[1])}" font-size="0.09" text-anchor="middle" '
            f'dominant-baseline="middle">{k}</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_drawing(dr, size: int = 400) -> str:
    """SVG of a traced drawing with root dots and the asymptotic direction guides."""
    radius = dr.radius
    d = dr.degree
    view = 1.1 * radius
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="{_fmt(-view)} {_fmt(-view)} {_fmt(2 * view)} {_fmt(2 * view)}">',
    ]
    width = radius / 150
    for k in range(4 * d):
        a = k * math.pi / (2 * d)
        lines.append(
            f'<line class="guide" x1="0" y1="0" x2="{_fmt(radius * math.cos(a))}" '
            f'y2="{_fmt(-radius * math.sin(a))}" stroke="#ccc" stroke-width="{_fmt(width)}"/>'
        )
    for c in dr.curves:
        pts = " ".join(f"{_fmt(z.real)},{_fmt(-z.imag)}" for z in c.points)
        lines.append(
            f'<polyline class="curve" points="{pts}" fill="none" stroke="{COLORS[c.color]}" '
            f'stroke-width="{_fmt(2 * width)}"/>'
        )
    for z in dr.roots:
        lines.append(
            f'<circle class="root" cx="{_fmt(z.real)}" cy="{_fmt(-z.imag)}" r="{_fmt(4 * width)}" fill="#000"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
