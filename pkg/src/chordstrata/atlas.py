"""Enumeration of all signatures of a given degree, bucketed by codimension.

Generic signatures are pairs of non-crossing matchings whose validity is
checked directly.  Every other signature is reached from them by
contractions, so :func:`enumerate_all` closes the generic set upward.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

from .core_map import Chord, norm_chord
from .moves import all_smoothings, contractions
from .signature import Signature

MIN_DEGREE = 2
MAX_DEGREE = 6


def _check_degree(degree: int) -> None:
    if not MIN_DEGREE <= degree <= MAX_DEGREE:
        raise ValueError(f"degree must lie in {MIN_DEGREE}..{MAX_DEGREE}, got {degree}")


def noncrossing_matchings(points: list[int]) -> Iterator[list[Chord]]:
    """Non-crossing perfect matchings of ``points`` taken in circular order."""
    if not points:
        yield []
        return
    a = points[0]
    for i in range(1, len(points), 2):
        for inner in noncrossing_matchings(points[1:i]):
            for outer in noncrossing_matchings(points[i + 1 :]):
                yield [norm_chord(a, points[i])] + inner + outer


def enumerate_generic(degree: int) -> list[Signature]:
    _check_degree(degree)
    n = 4 * degree
    blues = list(noncrossing_matchings(list(range(0, n, 2))))
    reds = list(noncrossing_matchings(list(range(1, n, 2))))
    out = []
    for b in blues:
        for r in reds:
            sig = Signature(degree, tuple(b), tuple(r))
            if sig.is_valid():
                out.append(sig)
    return sorted(out)


def _contracted(sig: Signature) -> list[Signature]:
    return [c.result for c in contractions(sig)]


@dataclass
class Atlas:
    """All signatures of one degree, indexed by canonical key."""

    degree: int
    signatures: dict[str, Signature]
    _below: dict[str, frozenset] = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return len(self.signatures)

    def __iter__(self) -> Iterator[Signature]:
        return (self.signatures[k] for k in sorted(self.signatures))

    def __contains__(self, sig: Signature) -> bool:
        return sig.key in self.signatures

    def by_codim(self, k: int) -> list[Signature]:
        return [s for s in self if s.codim == k]

    def generic(self) -> list[Signature]:
        return self.by_codim(0)

    def census(self) -> dict[int, int]:
        return dict(sorted(Counter(s.codim for s in self).items()))

    def class_census(self) -> dict[str, int]:
        return dict(sorted(Counter(s.kind() for s in self.generic()).items()))

    def euler_sum(self) -> int:
        return sum((-1) ** k * v for k, v in self.census().items())

    def below(self, sig: Signature) -> frozenset[str]:
        """Keys of all signatures strictly below ``sig``."""
        if sig.key not in self._below:
            self._below[sig.key] = frozenset(s.key for s in all_smoothings(sig))
        return self._below[sig.key]

    def facets(self, sig: Signature) -> list[Signature]:
        """Signatures one codimension lower that lie below ``sig``."""
        return sorted(
            self.signatures[k] for k in self.below(sig) if self.signatures[k].codim == sig.codim - 1
        )

    def families(self, k: int) -> list[list[Signature]]:
        """Orbits of the codimension-``k`` signatures under label rotation."""
        left = {s.key: s for s in self.by_codim(k)}
        out = []
        while left:
            s = left[min(left)]
            orbit = {t.key: t for t in (s.shift(j) for j in range(4 * self.degree))}
            out.append(sorted(orbit.values()))
            for key in orbit:
                left.pop(key, None)
        return out

    def table(self) -> list[dict]:
        """Machine-readable census rows."""
        rows = []
        for k, count in self.census().items():
            row = {"degree": self.degree, "codim": k, "count": count}
            if k == 0:
                row.update(self.class_census())
            rows.append(row)
        return rows


def enumerate_all(degree: int, max_codim: int | None = None, jobs: int = 1) -> Atlas:
    """Close the generic signatures under contraction.

    With ``jobs > 1`` each frontier is expanded in worker processes.  New
    signatures are merged by key, so the result does not depend on ``jobs``.
    """
    found = {s.key: s for s in enumerate_generic(degree)}
    frontier = sorted(found.values())
    pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
    try:
        while frontier:
            if pool:
                batches = list(pool.map(_contracted, frontier, chunksize=8))
            else:
                batches = [_contracted(s) for s in frontier]
            new: dict[str, Signature] = {}
            for batch in batches:
                for t in batch:
                    if max_codim is not None and t.codim > max_codim:
                        continue
                    if t.key not in found:
                        new[t.key] = t
            found.update(new)
            frontier = [new[k] for k in sorted(new)]
    finally:
        if pool:
            pool.shutdown()
    return Atlas(degree, found)


def euler_sum(degree: int) -> int:
    return enumerate_all(degree).euler_sum()


def format_census(atlas: Atlas) -> str:
    lines = [f"degree {atlas.degree}"]
    for k, count in atlas.census().items():
        lines.append(f"codim {k}: {count}")
    classes = " ".join(f"{k}={v}" for k, v in atlas.class_census().items())
    lines.append(f"generic classes: {classes}")
    lines.append(f"euler sum: {atlas.euler_sum()}")
    return "\n".join(lines)
