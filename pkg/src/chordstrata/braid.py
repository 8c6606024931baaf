"""Braid words read off root trajectories.

Strands are ordered by real part.  Whenever two neighbouring strands swap
order a generator is emitted at their position.  The sign is positive when
the strand moving from right to left passes above (larger imaginary part),
so a counterclockwise half-turn of two roots gives ``s1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .tracer import Polynomial


class AmbiguousMatching(ValueError):
    """Consecutive samples are too far apart to match roots reliably."""


class PerturbationNeeded(ValueError):
    """Swaps that do not commute happen at the same time; perturb the path."""


@dataclass(frozen=True)
class BraidWord:
    degree: int
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        for i, e in self.letters:
            if not 1 <= i < self.degree or e not in (1, -1):
                raise ValueError(f"bad letter ({i}, {e}) for {self.degree} strands")
        object.__setattr__(self, "letters", _reduce(self.letters))

    def __str__(self) -> str:
        return " ".join(f"s{i}" if e == 1 else f"s{i}^-1" for i, e in self.letters)

    @classmethod
    def parse(cls, degree: int, text: str) -> "BraidWord":
        letters = []
        for tok in text.split():
            m = re.fullmatch(r"s(\d+)(\^-1)?", tok)
            if not m:
                raise ValueError(f"bad braid token {tok!r}")
            letters.append((int(m.group(1)), -1 if m.group(2) else 1))
        return cls(degree, tuple(letters))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        return BraidWord(max(self.degree, other.degree), self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.degree, tuple((i, -e) for i, e in reversed(self.letters)))

    def writhe(self) -> int:
        return sum(e for _, e in self.letters)

    def permutation(self) -> tuple[int, ...]:
        """``perm[p]`` is the final position of the strand starting at position ``p``."""
        where = list(range(self.degree))
        for i, _ in self.letters:
            a, b = where.index(i - 1), where.index(i)
            where[a], where[b] = i, i - 1
        return tuple(where)

    def embedded(self, degree: int) -> "BraidWord":
        """The same word read in a braid group with more strands."""
        return BraidWord(degree, self.letters)


def _reduce(letters) -> tuple[tuple[int, int], ...]:
    out: list[tuple[int, int]] = []
    for i, e in letters:
        if out and out[-1] == (i, -e):
            out.pop()
        else:
            out.append((i, e))
    return tuple(out)


def _as_roots(sample) -> np.ndarray:
    if isinstance(sample, Polynomial):
        return sample.roots()
    return np.asarray(sample, dtype=complex)


def track_roots(path) -> np.ndarray:
    """Match roots along sampled polynomials (or root lists) into trajectories.

    Returns an array of shape ``(samples, d)``.  Matching is by nearest
    neighbour and is accepted only when every root moves less than half the
    smallest gap between roots at the next sample.
    """
    samples = [_as_roots(s) for s in path]
    if not samples:
        raise ValueError("empty path")
    d = len(samples[0])
    out = np.empty((len(samples), d), dtype=complex)
    out[0] = samples[0]
    for t in range(1, len(samples)):
        cur = samples[t]
        if len(cur) != d:
            raise ValueError("degree changes along the path")
        dist = np.abs(out[t - 1][:, None] - cur[None, :])
        choice = np.argmin(dist, axis=1)
        pair = np.abs(cur[:, None] - cur[None, :])
        np.fill_diagonal(pair, np.inf)
        gap = np.min(pair)
        motion = np.max(dist[np.arange(d), choice])
        if len(set(choice.tolist())) != d or not motion < gap / 2:
            raise AmbiguousMatching(f"sample {t}: root motion {motion:.3g} against gap {gap:.3g}")
        out[t] = cur[choice]
    return out


def braid_word(traj: np.ndarray) -> BraidWord:
    """Artin word of root trajectories, shape ``(samples, d)``."""
    traj = np.asarray(traj, dtype=complex)
    n_samples, d = traj.shape
    order = sorted(range(d), key=lambda j: (traj[0, j].real, traj[0, j].imag))
    letters = []
    for t in range(n_samples - 1):
        a, b = traj[t], traj[t + 1]
        events = []
        for x in range(d):
            for y in range(x + 1, d):
                before = a[x].real - a[y].real
                after = b[x].real - b[y].real
                if before == 0 or after == 0 or (before > 0) == (after > 0):
                    continue
                tau = before / (before - after)
                events.append((tau, x, y))
        events.sort()
        # simultaneous swaps commute only when they involve disjoint strands
        for k in range(1, len(events)):
            if events[k][0] - events[k - 1][0] < 1e-12 and {*events[k][1:]} & {*events[k - 1][1:]}:
                raise PerturbationNeeded(f"overlapping swaps between samples {t} and {t + 1}")
        for tau, x, y in events:
            px, py = order.index(x), order.index(y)
            if abs(px - py) != 1:
                raise PerturbationNeeded(f"non-adjacent strands swap at sample {t}")
            left, right = (x, y) if px < py else (y, x)
            # the strand on the right moves left; compare heights at the swap
            zr = a[right] + tau * (b[right] - a[right])
            zl = a[left] + tau * (b[left] - a[left])
            sign = 1 if zr.imag > zl.imag else -1
            pos = min(px, py)
            order[pos], order[pos + 1] = order[pos + 1], order[pos]
            letters.append((pos + 1, sign))
    return BraidWord(d, tuple(letters))


def endpoint_permutation(traj: np.ndarray) -> tuple[int, ...]:
    """Position change of each strand between the first and last sample."""
    traj = np.asarray(traj, dtype=complex)
    d = traj.shape[1]

    def ranks(row):
        order = sorted(range(d), key=lambda j: (row[j].real, row[j].imag))
        return {j: p for p, j in enumerate(order)}

    first, last = ranks(traj[0]), ranks(traj[-1])
    perm = [0] * d
    for j in range(d):
        perm[first[j]] = last[j]
    return tuple(perm)


def appended_root(roots) -> complex:
    """Extra root ``z0 + max |z_i - z0| + 1`` with ``z0`` the mean of the roots."""
    roots = np.asarray(roots, dtype=complex)
    z0 = roots.mean()
    return complex(z0 + np.max(np.abs(roots - z0)) + 1)


def embed(p: Polynomial) -> Polynomial:
    """Degree-raising inclusion: add one root to the right of all others."""
    roots = p.roots()
    return Polynomial.from_roots(np.append(roots, appended_root(roots)))


def embed_trajectories(traj: np.ndarray) -> np.ndarray:
    """Apply the root-append map at every sample of a trajectory array."""
    traj = np.asarray(traj, dtype=complex)
    extra = np.array([appended_root(row) for row in traj])
    return np.column_stack([traj, extra])


@dataclass(frozen=True)
class QuadrangleLoop:
    cell: int
    vertices: tuple[int, int, int, int]
    walls: tuple[int, int, int, int]


def quadrangle_generators(cx) -> list[QuadrangleLoop]:
    """Every 2-cell of the nerve as a loop of four Whitehead moves."""
    from .nerve import quadrangle_cycle

    out = []
    for c in cx.of_dim(2):
        cyc = quadrangle_cycle(cx, c.id)
        walls = []
        edges = {frozenset(cx.cells[e].boundary): e for e in cx.closure(c.id) if cx.cells[e].dim == 1}
        for i in range(4):
            walls.append(edges[frozenset((cyc[i], cyc[(i + 1) % 4]))])
        out.append(QuadrangleLoop(c.id, tuple(cyc), tuple(walls)))
    return out


def sample_root_path(func, samples: int) -> np.ndarray:
    """Evaluate a parametric root formula ``t -> roots`` on ``[0, 1]``."""
    return np.array([np.asarray(func(t), dtype=complex) for t in np.linspace(0, 1, samples)])
