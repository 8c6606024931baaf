"""Numerical drawings of polynomials and their signatures.

The drawing of a monic ``P`` of degree ``d`` is the preimage of the real
axis (blue) and the imaginary axis (red).  Far from the roots it leaves along
the ``4d`` directions ``k pi / 2d``; direction ``k`` carries values of ``P``
on the ray ``s i^k`` with ``s -> +inf``.

Each end is traced by continuation of ``P(z) = s i^k`` as ``s`` decreases to
0, which lands on a root.  The preimage of an open ray contains no critical
point when the drawing is generic, so every root receives exactly one end
from each of the four rays ``i^k``.  Two ends of one color meeting at a root
form one curve, and their labels form one chord of the signature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .signature import Signature

DEFAULT_TOL = 1e-9
DEFAULT_STEP = 0.1


class NearDegenerate(ValueError):
    """A critical value lies on the real or the imaginary axis."""

    def __init__(self, value: complex, margin: float) -> None:
        super().__init__(f"critical value {value:.6g} within {margin:.3g} of the axes")
        self.value = value
        self.margin = margin


class TracingError(RuntimeError):
    pass


@dataclass(frozen=True)
class Polynomial:
    """Monic complex polynomial, coefficients from the highest degree down."""

    coeffs: tuple[complex, ...]

    def __post_init__(self) -> None:
        c = tuple(complex(x) for x in self.coeffs)
        if len(c) < 2:
            raise ValueError("degree must be at least 1")
        if c[0] != 1:
            if c[0] == 0:
                raise ValueError("leading coefficient is zero")
            c = tuple(x / c[0] for x in c)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_roots(cls, roots) -> "Polynomial":
        return cls(tuple(np.poly(np.asarray(roots, dtype=complex))))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=complex)

    def __call__(self, z):
        return np.polyval(self.array, z)

    def derivative(self, z):
        return np.polyval(np.polyder(self.array), z)

    def roots(self) -> np.ndarray:
        return np.roots(self.array)

    def critical_points(self) -> np.ndarray:
        if self.degree < 2:
            return np.zeros(0, dtype=complex)
        return np.roots(np.polyder(self.array))

    def critical_values(self) -> np.ndarray:
        return self(self.critical_points())

    def is_tschirnhausen(self, tol: float = 1e-12) -> bool:
        return abs(self.coeffs[1]) < tol


def degeneracy_margin(p: Polynomial) -> float:
    """Smallest distance from a critical value to the nearer axis."""
    values = p.critical_values()
    if values.size == 0:
        return math.inf
    return float(np.min(np.minimum(np.abs(values.real), np.abs(values.imag))))


def far_field_radius(p: Polynomial) -> float:
    """Radius ``R`` with all roots inside ``R/2`` and ``|P/z^d - 1| < 0.05`` on ``|z| = R``."""
    d = p.degree
    r = max(1.0, 2 * float(np.max(np.abs(p.roots()))))
    tail = np.abs(p.array[1:])
    while True:
        # bound |P/z^d - 1| by the sum of |a_j| / R^j
        if sum(a / r ** (j + 1) for j, a in enumerate(tail)) < 0.05:
            return r
        r *= 1.5
        if r > 1e12 ** (1 / max(d, 1)) * 1e3:
            raise TracingError("no far-field radius found")


@dataclass
class Curve:
    color: str
    ends: tuple[int, int]
    root: complex
    points: np.ndarray


@dataclass
class Drawing:
    polynomial: Polynomial
    radius: float
    curves: list[Curve] = field(default_factory=list)
    roots: list[complex] = field(default_factory=list)
    margin: float = math.inf

    @property
    def degree(self) -> int:
        return self.polynomial.degree

    def chords(self, color: str) -> list[tuple[int, int]]:
        return sorted(tuple(sorted(c.ends)) for c in self.curves if c.color == color)

    @property
    def signature(self) -> Signature:
        sig = Signature(self.degree, tuple(self.chords("blue")), tuple(self.chords("red")))
        return sig.validate()


def _trace_end(p: Polynomial, k: int, radius: float, crit: np.ndarray, step: float) -> np.ndarray:
    """Follow ``P(z) = s i^k`` from the far field down to ``s = 0``."""
    d = p.degree
    unit = 1j**k
    s = radius**d
    z = radius * np.exp(1j * k * math.pi / (2 * d))
    z = _newton(p, z, s * unit)
    if z is None:
        raise TracingError(f"far-field start failed for direction {k}")
    points = [z]
    while s > 0:
        scale = abs(z) if crit.size == 0 else min(abs(z), float(np.min(np.abs(z - crit))))
        scale = max(scale, 1e-12)
        dz_ds = unit / p.derivative(z)
        ds = min(s, step * scale / max(abs(dz_ds), 1e-300))
        while True:
            z_pred = z - ds * dz_ds
            z_new = _newton(p, z_pred, (s - ds) * unit)
            if z_new is not None and abs(z_new - z_pred) <= 0.5 * step * scale:
                break
            ds /= 2
            if ds < 1e-14 * max(s, 1.0):
                raise TracingError(f"step collapsed near {z:.6g} (direction {k})")
        z, s = z_new, s - ds
        points.append(z)
        if len(points) > 200000:
            raise TracingError(f"too many steps in direction {k}")
    return np.asarray(points)


def _newton(p: Polynomial, z: complex, target: complex, iters: int = 30) -> complex | None:
    for _ in range(iters):
        f = p(z) - target
        df = p.derivative(z)
        if df == 0:
            return None
        dz = f / df
        z = z - dz
        if abs(dz) <= 1e-13 * max(1.0, abs(z)):
            return z
    return None


def trace(p: Polynomial, tol: float = DEFAULT_TOL, step: float = DEFAULT_STEP) -> Drawing:
    """Trace the drawing of ``p``; ``step`` bounds each move relative to the
    distance to the nearest critical point."""
    margin = degeneracy_margin(p)
    if margin < tol:
        values = p.critical_values()
        worst = values[np.argmin(np.minimum(np.abs(values.real), np.abs(values.imag)))]
        raise NearDegenerate(complex(worst), margin)
    d = p.degree
    roots = p.roots()
    gaps = [abs(a - b) for i, a in enumerate(roots) for b in roots[i + 1 :]]
    if gaps and min(gaps) < 1e-9:
        raise NearDegenerate(complex(p(roots[0])), 0.0)
    radius = far_field_radius(p)
    crit = p.critical_points()
    arrivals: dict[int, dict[int, tuple[int, np.ndarray]]] = {}
    for k in range(4 * d):
        path = _trace_end(p, k, radius, crit, step)
        idx = int(np.argmin(np.abs(roots - path[-1])))
        # the other roots must be clearly farther than the landing point
        arrivals.setdefault(idx, {})
        if k % 4 in arrivals[idx]:
            raise TracingError(f"two ends of ray {k % 4} reach root {roots[idx]:.6g}")
        arrivals[idx][k % 4] = (k, path)
    curves = []
    for idx in sorted(arrivals):
        ends = arrivals[idx]
        if len(ends) != 4:
            raise TracingError(f"root {roots[idx]:.6g} met {len(ends)} ray ends")
        for color, (a, b) in (("blue", (0, 2)), ("red", (1, 3))):
            ka, pa = ends[a]
            kb, pb = ends[b]
            pts = np.concatenate([pa, pb[::-1][1:]])
            curves.append(Curve(color, (ka, kb), complex(roots[idx]), pts))
    return Drawing(p, radius, curves, [complex(r) for r in roots], margin)


def signature_of(p: Polynomial, tol: float = DEFAULT_TOL, step: float = DEFAULT_STEP) -> Signature:
    return trace(p, tol, step).signature


def parse_polynomial(text: str) -> Polynomial:
    """Coefficients separated by spaces or commas, highest degree first.

    Complex entries use Python syntax, e.g. ``"1 0 -1-1j"``.
    """
    parts = [x for x in text.replace(",", " ").split() if x]
    return Polynomial(tuple(complex(x.replace("i", "j")) for x in parts))
