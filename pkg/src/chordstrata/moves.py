"""Half-Whitehead moves: contraction and smoothing.

A contraction picks one face and glues a few same-colored sites on its
boundary to a single new pencil point.  A site is an edge or an existing
pencil.  The sites must come from different components, otherwise the glued
picture would contain a cycle.  Gluing ``m`` free edges at a fresh point
raises the codimension by ``2m - 3``.

A smoothing resolves one pencil along a non-crossing partition of its spokes
into blocks of even size.  Blocks of two spokes become plain edges, so the
full smoothings of an ``m``-pencil are its Catalan(m) non-crossing
re-pairings.

A Whitehead move is a contraction of two free edges followed by the other
smoothing of the new 4-valent point.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .core_map import PENCIL, EmbeddedForest, ForestError
from .signature import InvalidSignature, Signature, chord_length


class MoveError(ValueError):
    pass


@dataclass(frozen=True)
class Contraction:
    face: int
    sites: tuple
    result: Signature

    @property
    def fresh_edges(self) -> int:
        return sum(isinstance(s, frozenset) for s in self.sites)


def face_sites(sig: Signature, face_index: int) -> dict[str, dict[int, list]]:
    """Candidate sites on one face, as color -> component -> sites."""
    forest = sig.forest
    face = forest.faces()[face_index]
    comp = forest.components()
    out: dict[str, dict[int, list]] = {}
    n = forest.n
    for u, v in face.darts:
        if u < n and v < n and v == (u + 1) % n:
            continue
        edge = frozenset((u, v))
        col = forest.edge_color[edge]
        out.setdefault(col, {}).setdefault(comp[u], []).append(edge)
        if forest.kind[v] == PENCIL:
            out.setdefault(forest.color[v], {}).setdefault(comp[v], []).append(v)
    return out


def contract(sig: Signature, face_index: int, sites) -> Signature:
    """Glue ``sites`` of face ``face_index`` to one point.

    Raises :class:`MoveError` when the sites do not share the face and a
    color, when two of them lie in one component, or when the result is not
    a signature.
    """
    sites = list(sites)
    if len(sites) < 2:
        raise MoveError("a contraction glues at least two sites")
    forest = sig.forest
    faces = forest.faces()
    if not 0 <= face_index < len(faces):
        raise MoveError(f"no face {face_index}")
    comp = forest.components()
    owners = [comp[next(iter(s))] if isinstance(s, frozenset) else comp[s] for s in sites]
    if len(set(owners)) != len(owners):
        raise MoveError("sites in one component would close a cycle")
    try:
        glued, _ = forest.pinch(faces[face_index], sites)
        return Signature.from_forest(glued, sig.degree).validate()
    except (ForestError, InvalidSignature) as exc:
        raise MoveError(str(exc)) from exc


def contractions(sig: Signature, fresh_only: bool = False) -> Iterator[Contraction]:
    """All contractions of ``sig``, each glued point taken once per face.

    With ``fresh_only`` only pairs of free edges are glued, which are the
    codimension-one steps.
    """
    seen: set[str] = set()
    for fi in range(len(sig.forest.faces())):
        for col, by_comp in sorted(face_sites(sig, fi).items()):
            comps = sorted(by_comp)
            sizes = [2] if fresh_only else range(2, len(comps) + 1)
            for k in sizes:
                for chosen in itertools.combinations(comps, k):
                    options = [by_comp[c] for c in chosen]
                    for sites in itertools.product(*options):
                        if fresh_only and not all(isinstance(s, frozenset) for s in sites):
                            continue
                        try:
                            res = contract(sig, fi, sites)
                        except MoveError:
                            continue
                        if res.key not in seen:
                            seen.add(res.key)
                            yield Contraction(fi, tuple(sites), res)


def even_noncrossing_partitions(points: list[int]) -> Iterator[list[list[int]]]:
    """Non-crossing partitions of ``points`` (in cyclic order) into even blocks."""
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    # choose the other members of the block holding ``first``; every gap
    # between consecutive members must have even length
    for size in range(1, len(rest) + 1, 2):
        for members in itertools.combinations(range(len(rest)), size):
            gaps, prev = [], -1
            for m in members:
                gaps.append(rest[prev + 1 : m])
                prev = m
            gaps.append(rest[prev + 1 :])
            if any(len(g) % 2 for g in gaps):
                continue
            block = [first] + [rest[m] for m in members]
            for parts in itertools.product(*(list(even_noncrossing_partitions(g)) for g in gaps)):
                yield [block] + [b for p in parts for b in p]


def _pencil_vertex(forest: EmbeddedForest, color: str, chords) -> int:
    want = frozenset(chords)
    through: dict[int, set] = {}
    for chord, path in forest.strands():
        for v in path:
            through.setdefault(v, set()).add(chord)
    for v, s in through.items():
        if forest.kind[v] == PENCIL and forest.color[v] == color and s == want:
            return v
    raise MoveError("no such pencil")


def _split_results(sig: Signature, forest: EmbeddedForest, v: int, partial: bool):
    deg = len(forest.rot[v])
    out = []
    for blocks in even_noncrossing_partitions(list(range(deg))):
        if len(blocks) == 1:
            continue
        if not partial and any(len(b) > 2 for b in blocks):
            continue
        try:
            res = Signature.from_forest(forest.split(v, blocks), sig.degree).validate()
        except (ForestError, InvalidSignature):
            continue
        out.append(res)
    return out


def smoothings(sig: Signature, pencil, partial: bool = False) -> list[Signature]:
    """Resolutions of one pencil, given as ``(color, chords)``.

    Full smoothings only by default; ``partial=True`` also splits the pencil
    into smaller pencils.
    """
    color, chords = pencil
    v = _pencil_vertex(sig.forest, color, chords)
    return _split_results(sig, sig.forest, v, partial)


def all_smoothings(sig: Signature) -> set[Signature]:
    """Every signature strictly below ``sig``: partial smoothings at any pencils."""
    out: set[Signature] = set()
    frontier = {sig}
    while frontier:
        nxt = set()
        for s in frontier:
            for p in s.pencils:
                for r in smoothings(s, p, partial=True):
                    if r not in out:
                        out.add(r)
                        nxt.add(r)
        frontier = nxt
    return out


def whitehead(sig: Signature) -> list[tuple[Signature, Signature]]:
    """Whitehead moves from ``sig`` as (wall, neighbour) pairs.

    The wall glues two free edges, the neighbour is the other resolution of
    the glued point.
    """
    out = []
    forest = sig.forest
    faces = forest.faces()
    seen = set()
    for fi, face in enumerate(faces):
        for col, by_comp in sorted(face_sites(sig, fi).items()):
            for c1, c2 in itertools.combinations(sorted(by_comp), 2):
                for e1 in by_comp[c1]:
                    for e2 in by_comp[c2]:
                        if not (isinstance(e1, frozenset) and isinstance(e2, frozenset)):
                            continue
                        try:
                            glued, p = forest.pinch(face, [e1, e2])
                            wall = Signature.from_forest(glued, sig.degree).validate()
                        except (ForestError, InvalidSignature):
                            continue
                        for res in _split_results(wall, glued, p, partial=False):
                            if res != sig and res.key not in seen:
                                seen.add(res.key)
                                out.append((wall, res))
    return out


def whitehead_neighbors(sig: Signature) -> list[Signature]:
    return sorted(t for _, t in whitehead(sig))


@lru_cache(maxsize=None)
def neighbors(sig: Signature) -> tuple[Signature, ...]:
    """Cached Whitehead neighbours."""
    return tuple(whitehead_neighbors(sig))


def bfs_distances(start) -> dict[Signature, int]:
    """Whitehead distance from ``start`` (one signature or several)."""
    starts = [start] if isinstance(start, Signature) else list(start)
    dist = {s: 0 for s in starts}
    queue = deque(starts)
    while queue:
        x = queue.popleft()
        for y in neighbors(x):
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def _potential(sig: Signature) -> tuple[int, int]:
    total = sum(chord_length(c, sig.n) for c in sig.blue + sig.red)
    return len(sig.long_chords()), total


def path_to_M(sig: Signature) -> list[Signature]:
    """Whitehead path from a generic signature to one with only short chords.

    Each step takes the neighbour that most reduces the number of long
    chords, then their total length.  If no neighbour improves on the
    current signature the rest of the path is found by breadth-first search.
    The returned list starts at ``sig``; consecutive entries are adjacent.
    """
    if not sig.is_generic:
        raise MoveError("paths run between generic signatures")
    path = [sig]
    cur = sig
    while cur.long_chords():
        best = min(neighbors(cur), key=lambda t: (_potential(t), t.key))
        if _potential(best) >= _potential(cur):
            return path + _bfs_to_M(cur)[1:]
        path.append(best)
        cur = best
    return path


def _bfs_to_M(sig: Signature) -> list[Signature]:
    prev: dict[Signature, Signature | None] = {sig: None}
    queue = deque([sig])
    while queue:
        x = queue.popleft()
        if not x.long_chords():
            out = []
            while x is not None:
                out.append(x)
                x = prev[x]
            return out[::-1]
        for y in neighbors(x):
            if y not in prev:
                prev[y] = x
                queue.append(y)
    raise MoveError("no all-short signature reachable")


def incidence(a: Signature, b: Signature) -> str:
    """Order relation: ``"<"`` if ``a`` lies below ``b``, ``">"``, ``"="`` or ``"incomparable"``."""
    if a.degree != b.degree:
        raise MoveError("signatures of different degree")
    if a == b:
        return "="
    if a.codim < b.codim and a in all_smoothings(b):
        return "<"
    if b.codim < a.codim and b in all_smoothings(a):
        return ">"
    return "incomparable"
