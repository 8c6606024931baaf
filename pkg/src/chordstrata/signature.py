"""Signatures: a blue and a red chord diagram superimposed in the disc.

A signature of degree ``d`` lives on ``n = 4d`` boundary labels.  It is
stored canonically as

* ``blue``: a perfect matching of the even labels (sorted chords),
* ``red``: a perfect matching of the odd labels,
* ``pencils``: groups of same-colored chords passing through one point.

Interleaving chords of different colors cross once at a root.  Interleaving
chords of one color must meet at a pencil.  Everything else about the plane
picture is forced, so this record is a complete invariant.

A record is a valid signature when the incidences are acyclic and every
bounded face is a branched copy of one quadrant.  Concretely, all boundary
arcs of a face share ``k mod 4``, and between two consecutive arcs the face
walk turns at exactly one root.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property

from .core_map import (
    BLUE,
    CROSS,
    PENCIL,
    RED,
    Chord,
    EmbeddedForest,
    ForestError,
    circ_dist,
    interleaved,
    is_short,
    label_color,
    norm_chord,
)


class InvalidSignature(ValueError):
    pass


Pencil = tuple[str, tuple[Chord, ...]]


def _norm_pencil(color: str, chords) -> Pencil:
    return color, tuple(sorted(norm_chord(*c) for c in chords))


@dataclass(frozen=True)
class Signature:
    degree: int
    blue: tuple[Chord, ...]
    red: tuple[Chord, ...]
    pencils: tuple[Pencil, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "blue", tuple(sorted(norm_chord(*c) for c in self.blue)))
        object.__setattr__(self, "red", tuple(sorted(norm_chord(*c) for c in self.red)))
        object.__setattr__(
            self, "pencils", tuple(sorted(_norm_pencil(c, p) for c, p in self.pencils))
        )

    # basic data

    @property
    def n(self) -> int:
        return 4 * self.degree

    @property
    def codim(self) -> int:
        return sum(2 * len(p) - 3 for _, p in self.pencils)

    @property
    def is_generic(self) -> bool:
        return not self.pencils

    def chords(self, color: str) -> tuple[Chord, ...]:
        return self.blue if color == BLUE else self.red

    @cached_property
    def key(self) -> str:
        def fmt(cs):
            return ",".join(f"{a}-{b}" for a, b in cs)

        parts = [f"d{self.degree}", "b" + fmt(self.blue), "r" + fmt(self.red)]
        for c, p in self.pencils:
            parts.append(c[0] + "(" + fmt(p) + ")")
        return "|".join(parts)

    def __repr__(self) -> str:
        return f"Signature({self.key})"

    def __lt__(self, other: "Signature") -> bool:
        return self.key < other.key

    @cached_property
    def forest(self) -> EmbeddedForest:
        return EmbeddedForest.from_strands(
            self.n, self.blue + self.red, self.pencils
        )

    def crossings(self) -> list[tuple[Chord, Chord]]:
        """Interleaving (blue, red) pairs, i.e. the roots."""
        return [
            (b, r) for b in self.blue for r in self.red if interleaved(b, r, self.n)
        ]

    def local_indices(self) -> list[int]:
        """Index ``2m - 3`` of each pencil of ``m`` chords."""
        return [2 * len(p) - 3 for _, p in self.pencils]

    # validation

    def validate(self) -> "Signature":
        """Return ``self`` or raise :class:`InvalidSignature`."""
        d, n = self.degree, self.n
        if d < 1:
            raise InvalidSignature("degree must be positive")
        for color, chords, parity in ((BLUE, self.blue, 0), (RED, self.red, 1)):
            ends = sorted(x for c in chords for x in c)
            if ends != list(range(parity, n, 2)):
                raise InvalidSignature(f"{color} chords are not a perfect matching")
        covered: dict[str, set[frozenset]] = {BLUE: set(), RED: set()}
        for color, group in self.pencils:
            if len(group) < 2:
                raise InvalidSignature("a pencil needs at least two chords")
            if not set(group) <= set(self.chords(color)):
                raise InvalidSignature("pencil chord missing from its color")
            for a, b in itertools.combinations(group, 2):
                if not interleaved(a, b, n):
                    raise InvalidSignature(f"pencil chords {a} and {b} do not cross")
                pair = frozenset((a, b))
                if pair in covered[color]:
                    raise InvalidSignature(f"chords {a} and {b} meet twice")
                covered[color].add(pair)
        for color in (BLUE, RED):
            for a, b in itertools.combinations(self.chords(color), 2):
                if interleaved(a, b, n) and frozenset((a, b)) not in covered[color]:
                    raise InvalidSignature(f"crossing {color} chords {a}, {b} share no pencil")
        if len(self.crossings()) != d:
            raise InvalidSignature("number of roots differs from the degree")
        try:
            forest = self.forest
        except ForestError as exc:
            raise InvalidSignature(str(exc)) from exc
        _check_faces(forest)
        return self

    def is_valid(self) -> bool:
        try:
            self.validate()
        except InvalidSignature:
            return False
        return True

    # generic signatures: trees

    def trees(self) -> list[tuple[Chord, Chord]]:
        """For a generic signature, the (blue, red) pairs meeting at each root."""
        return sorted(self.crossings())

    def kind(self) -> str:
        """``M``, ``F``, ``S`` or ``FS`` for a generic signature."""
        types = {tree_type(b, r, self.n) for b, r in self.trees()}
        types.discard("M")
        if not types:
            return "M"
        if types == {"F", "S"}:
            return "FS"
        return types.pop()

    def long_chords(self, color: str | None = None) -> list[Chord]:
        colors = (BLUE, RED) if color is None else (color,)
        return [c for col in colors for c in self.chords(col) if not is_short(c, self.n)]

    # symmetries

    def relabel(self, f) -> "Signature":
        chords = [norm_chord(f(a), f(b)) for a, b in self.blue + self.red]
        blue = [c for c in chords if c[0] % 2 == 0]
        red = [c for c in chords if c[0] % 2 == 1]
        pencils = []
        for _, group in self.pencils:
            mapped = [norm_chord(f(a), f(b)) for a, b in group]
            pencils.append((label_color(mapped[0][0]), mapped))
        return Signature(self.degree, tuple(blue), tuple(red), tuple(pencils))

    def shift(self, k: int) -> "Signature":
        """Rotate labels by ``k``; odd ``k`` swaps the colors."""
        n = self.n
        return self.relabel(lambda x: (x + k) % n)

    def reflect(self, axis: int = 0) -> "Signature":
        """Mirror labels by ``x -> axis - x``."""
        n = self.n
        return self.relabel(lambda x: (axis - x) % n)

    # conversions

    @classmethod
    def from_forest(cls, forest: EmbeddedForest, degree: int | None = None) -> "Signature":
        n = forest.n
        blue, red = [], []
        through: dict[int, list[Chord]] = {}
        for chord, path in forest.strands():
            (blue if chord[0] % 2 == 0 else red).append(chord)
            for v in path:
                through.setdefault(v, []).append(chord)
        pencils = []
        for v, chords in through.items():
            if forest.kind[v] == PENCIL:
                pencils.append((forest.color[v], chords))
            elif forest.kind[v] != CROSS:
                raise InvalidSignature("unexpected vertex kind")
        return cls(degree or n // 4, tuple(blue), tuple(red), tuple(pencils))


def _check_faces(forest: EmbeddedForest) -> None:
    n = forest.n
    for face in forest.faces():
        arcs = face.arcs
        if len({k % 4 for k in arcs}) != 1:
            raise InvalidSignature("a face spans boundary arcs of different quadrants")
        darts = face.darts
        m = len(darts)
        start = next(i for i, (u, v) in enumerate(darts) if u < n and v == (u + 1) % n)
        roots = 0
        for i in range(1, m + 1):
            u, v = darts[(start + i) % m]
            if u < n and v == (u + 1) % n:
                if roots != 1:
                    raise InvalidSignature("a face side passes through %d roots" % roots)
                roots = 0
            elif forest.kind[v] == CROSS:
                roots += 1


def tree_type(blue: Chord, red: Chord, n: int) -> str:
    short = is_short(blue, n) + is_short(red, n)
    return {2: "M", 1: "F", 0: "S"}[short]


# standard generic signatures


def short_matching(degree: int, start: int) -> tuple[Chord, ...]:
    """Short chords ``(start, start+2), (start+4, start+6), ...``."""
    n = 4 * degree
    return tuple(norm_chord((start + 4 * k) % n, (start + 4 * k + 2) % n) for k in range(degree))


def m_signatures(degree: int) -> dict[str, Signature]:
    """The four signatures whose chords are all short."""
    a, b = short_matching(degree, 0), short_matching(degree, 2)
    a_, b_ = short_matching(degree, 1), short_matching(degree, 3)
    return {
        "M1": Signature(degree, b, a_),
        "M2": Signature(degree, a, a_),
        "M3": Signature(degree, b, b_),
        "M4": Signature(degree, a, b_),
    }


def m_name(sig: Signature) -> str | None:
    for name, m in m_signatures(sig.degree).items():
        if m == sig:
            return name
    return None


# matrix notation


def _enclosed(short: Chord, n: int) -> int:
    a, b = short
    return (a + 1) % n if (b - a) % n == 2 else (b + 1) % n


def tree_symbol(blue: Chord, red: Chord, n: int) -> str:
    t = tree_type(blue, red, n)
    if t == "S":
        return "[%d,%d;%d,%d]" % (red + blue)
    if t == "M":
        short, other = blue, red
    else:
        short, other = (blue, red) if is_short(blue, n) else (red, blue)
    j = _enclosed(short, n)
    i = other[0] if other[1] == j else other[1]
    return f"|{j};{i}|"


def notation(sig: Signature, full: bool = False) -> str:
    """Matrix notation of a generic signature.

    By default only the non-M trees are written and all-short signatures are
    named ``M1 .. M4``.
    """
    if not sig.is_generic:
        raise ValueError("matrix notation needs a generic signature")
    if not full:
        name = m_name(sig)
        if name:
            return name
    trees = sorted(sig.trees(), key=lambda t: min(t[0] + t[1]))
    n = sig.n
    return "".join(
        tree_symbol(b, r, n) for b, r in trees if full or tree_type(b, r, n) != "M"
    )


_TOKEN = re.compile(r"\|\s*(-?\d+)\s*;\s*(-?\d+)\s*\||\[([^\]]*)\]|(M[1-4])")


def _short_completions(labels: list[int], n: int):
    if not labels:
        yield []
        return
    x, rest = labels[0], labels[1:]
    for y in ((x + 2) % n, (x - 2) % n):
        if y in rest:
            others = [z for z in rest if z != y]
            for m in _short_completions(others, n):
                yield [norm_chord(x, y)] + m


def parse_notation(degree: int, text: str) -> Signature:
    """Inverse of :func:`notation`, completing unlisted trees with short chords.

    Accepts ``|j;i|`` trees, bracket trees and Q-matrices such as
    ``[1,11 3,9; 0,10 2,8]``, and the names ``M1 .. M4``.  Labels are read
    modulo ``4d``.
    """
    n = 4 * degree
    chords: set[Chord] = set()
    pos = 0
    text = text.strip()
    for m in _TOKEN.finditer(text):
        if text[pos : m.start()].strip():
            raise ValueError(f"cannot parse {text[pos:m.start()]!r}")
        pos = m.end()
        if m.group(4):
            return m_signatures(degree)[m.group(4)]
        if m.group(3) is not None:
            for row in m.group(3).split(";"):
                for pair in row.split():
                    a, b = (int(x) % n for x in pair.split(","))
                    chords.add(norm_chord(a, b))
        else:
            j, i = int(m.group(1)) % n, int(m.group(2)) % n
            chords.add(norm_chord(j, i))
            chords.add(norm_chord((j - 1) % n, (j + 1) % n))
    if text[pos:].strip():
        raise ValueError(f"cannot parse {text[pos:]!r}")
    used = {x for c in chords for x in c}
    if len(used) != 2 * len(chords):
        raise ValueError("notation reuses a label")
    free_b = [x for x in range(0, n, 2) if x not in used]
    free_r = [x for x in range(1, n, 2) if x not in used]
    found = []
    for cb in _short_completions(free_b, n):
        for cr in _short_completions(free_r, n):
            allc = list(chords) + cb + cr
            sig = Signature(
                degree,
                tuple(c for c in allc if c[0] % 2 == 0),
                tuple(c for c in allc if c[0] % 2 == 1),
            )
            if sig.is_valid():
                found.append(sig)
    if len(found) != 1:
        raise ValueError(f"{text!r} names {len(found)} signatures at degree {degree}")
    return found[0]


def chord_length(chord: Chord, n: int) -> int:
    return circ_dist(chord[0], chord[1], n)
