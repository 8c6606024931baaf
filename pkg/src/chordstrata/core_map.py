"""Plane forests inscribed in a disc with labelled boundary points.

Boundary points carry the labels ``0 .. n-1`` counterclockwise, ``n = 4d``.
Even labels are blue ends, odd labels are red ends.  Interior vertices are
either crossings (one blue and one red strand) or pencils (several strands of
one color through a single point).

The forest is stored as a rotation system.  Leaves are the integers
``0 .. n-1`` and interior vertices get ids ``n, n+1, ...``.  ``rot[v]`` lists
the neighbours of ``v`` counterclockwise.  Faces are traced with the face on
the left, treating the boundary circle as extra edges between consecutive
leaves.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

BLUE = "blue"
RED = "red"
COLORS = (BLUE, RED)

LEAF = "leaf"
CROSS = "cross"
PENCIL = "pencil"

Chord = tuple[int, int]


class ForestError(ValueError):
    """The requested structure is not a plane forest with the stated data."""


def label_color(k: int) -> str:
    return BLUE if k % 2 == 0 else RED


def norm_chord(a: int, b: int) -> Chord:
    return (a, b) if a < b else (b, a)


def circ_dist(a: int, b: int, n: int) -> int:
    x = (a - b) % n
    return min(x, n - x)


def is_short(chord: Chord, n: int) -> bool:
    return circ_dist(chord[0], chord[1], n) == 2


def between(x: int, a: int, b: int, n: int) -> bool:
    """True if ``x`` lies strictly inside the counterclockwise arc from a to b."""
    return 0 < (x - a) % n < (b - a) % n


def interleaved(c1: Chord, c2: Chord, n: int) -> bool:
    """Endpoints alternate around the circle (chords sharing no endpoint)."""
    a, b = c1
    return between(c2[0], a, b, n) != between(c2[1], a, b, n)


def is_noncrossing(matching: Iterable[Chord], n: int) -> bool:
    chords = list(matching)
    return not any(
        interleaved(a, b, n) for i, a in enumerate(chords) for b in chords[i + 1 :]
    )


class _UnionFind:
    def __init__(self, items: Iterable) -> None:
        self.parent = {x: x for x in items}

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


@dataclass(frozen=True)
class Face:
    """A bounded face, given by its boundary darts in walking order."""

    darts: tuple[tuple[int, int], ...]
    n: int

    @property
    def arcs(self) -> list[int]:
        """Boundary arcs ``(k, k+1)`` of the face, identified by ``k``."""
        return [u for u, v in self.darts if u < self.n and v == (u + 1) % self.n]

    def vertices(self) -> list[int]:
        return [v for _, v in self.darts]


@dataclass
class EmbeddedForest:
    """Rotation system of a chord forest in the disc."""

    n: int
    kind: dict[int, str]
    color: dict[int, str | None]
    rot: dict[int, list[int]]
    edge_color: dict[frozenset, str] = field(default_factory=dict)

    # construction

    @classmethod
    def from_strands(
        cls,
        n: int,
        chords: Iterable[Chord],
        pencils: Iterable[tuple[str, Iterable[Chord]]] = (),
        transversal: bool = False,
    ) -> "EmbeddedForest":
        """Rebuild the unique plane forest with the given strands and pencils.

        Interleaving chords of different colors cross once.  Interleaving
        chords of one color must share a listed pencil.  The vertex order
        along each strand and the rotation at each vertex are forced by the
        boundary order once the incidence structure is acyclic.  Labels may
        be left without a strand.

        With ``transversal`` every interleaving pair outside a pencil crosses
        and cycles are kept, so :func:`forest_check` can inspect raw chord
        pictures.
        """
        chords = [norm_chord(*c) for c in chords]
        col = {c: label_color(c[0]) for c in chords}
        pencils = [(c, tuple(norm_chord(*x) for x in group)) for c, group in pencils]
        in_pencil = {frozenset((a, b)) for _, g in pencils for a in g for b in g if a != b}
        hyper: list[tuple[str, str | None, tuple[Chord, ...]]] = []
        for i, a in enumerate(chords):
            for b in chords[i + 1 :]:
                if not interleaved(a, b, n) or frozenset((a, b)) in in_pencil:
                    continue
                if col[a] != col[b] or transversal:
                    hyper.append((CROSS, None, (a, b)))
        for c, group in pencils:
            hyper.append((PENCIL, c, group))

        uf = _UnionFind(chords)
        for _, _, ss in hyper:
            roots = {uf.find(s) for s in ss}
            if len(roots) != len(ss) and not transversal:
                raise ForestError("strand incidences contain a cycle")
            first, *rest = roots
            for r in rest:
                uf.union(r, first)

        kind = {k: LEAF for k in range(n)}
        color: dict[int, str | None] = {k: label_color(k) for k in range(n)}
        on_strand: dict[Chord, list[tuple[int, int]]] = {c: [] for c in chords}
        for idx, (kd, c, ss) in enumerate(hyper):
            vid = n + idx
            kind[vid] = kd
            color[vid] = c
            for s in ss:
                other = next(t for t in ss if t != s)
                a, b = s
                near = other[0] if between(other[0], a, b, n) else other[1]
                on_strand[s].append(((near - a) % n, vid))

        spokes: dict[int, list[tuple[int, int]]] = {}
        edge_color: dict[frozenset, str] = {}
        for s in chords:
            a, b = s
            seq = [a] + [v for _, v in sorted(on_strand[s])] + [b]
            for u, v in zip(seq, seq[1:]):
                spokes.setdefault(u, []).append((b, v))
                spokes.setdefault(v, []).append((a, u))
                edge_color[frozenset((u, v))] = col[s]
        rot = {v: [w for _, w in sorted(lst)] for v, lst in spokes.items()}
        for k in range(n):
            rot.setdefault(k, [])
            if len(rot[k]) > 1:
                raise ForestError(f"boundary label {k} ends two strands")
        return cls(n, kind, color, rot, edge_color)

    # queries

    def interior(self) -> list[int]:
        return sorted(v for v, k in self.kind.items() if k != LEAF)

    def vertices_of_kind(self, kd: str) -> list[int]:
        return sorted(v for v, k in self.kind.items() if k == kd)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u, nb in self.rot.items():
            out.extend((u, v) for v in nb if u < v)
        return sorted(out)

    def _full_rot(self, v: int) -> list[int]:
        if v < self.n:
            return [(v + 1) % self.n, *self.rot[v], (v - 1) % self.n]
        return self.rot[v]

    def _next_dart(self, u: int, v: int) -> tuple[int, int]:
        r = self._full_rot(v)
        if v < self.n and len(r) == 2:
            return v, r[0] if u == r[1] else r[1]
        if v < self.n and u == (v - 1) % self.n:
            i = 2
        elif v < self.n and u == (v + 1) % self.n:
            i = 0
        else:
            i = r.index(u)
        return v, r[i - 1]

    def faces(self) -> list[Face]:
        """Bounded faces, in a deterministic order (by smallest boundary arc)."""
        seen: set[tuple[int, int]] = set()
        faces = []
        starts = [(k, (k + 1) % self.n) for k in range(self.n)]
        for dart in starts:
            if dart in seen:
                continue
            walk = []
            x = dart
            while x not in seen:
                seen.add(x)
                walk.append(x)
                x = self._next_dart(*x)
            if x != dart:
                raise ForestError("face walk did not close")
            faces.append(Face(tuple(walk), self.n))
        return faces

    def components(self) -> dict[int, int]:
        """Map every vertex to a component representative."""
        uf = _UnionFind(self.rot)
        for u, v in self.edges():
            uf.union(u, v)
        return {v: uf.find(v) for v in self.rot}

    def is_forest(self) -> bool:
        uf = _UnionFind(self.rot)
        return all(uf.union(u, v) for u, v in self.edges())

    def strands(self) -> Iterator[tuple[Chord, list[int]]]:
        """Opposite-spoke strands as (chord, interior vertices passed)."""
        done: set[int] = set()
        for a in range(self.n):
            if a in done or not self.rot[a]:
                continue
            path = []
            prev, cur = a, self.rot[a][0]
            while cur >= self.n:
                path.append(cur)
                r = self.rot[cur]
                i = r.index(prev)
                prev, cur = cur, r[(i + len(r) // 2) % len(r)]
            done.update((a, cur))
            yield norm_chord(a, cur), (path if a < cur else path[::-1])

    def incidences(self) -> list[tuple[str, str | None, frozenset]]:
        """Interior vertices as (kind, color, strands through it), sorted."""
        through: dict[int, set[Chord]] = {v: set() for v in self.interior()}
        for chord, path in self.strands():
            for v in path:
                through[v].add(chord)
        out = [(self.kind[v], self.color[v] or "", frozenset(s)) for v, s in through.items()]
        return sorted(out, key=lambda t: (t[0], t[1], sorted(t[2])))

    # surgery

    def copy(self) -> "EmbeddedForest":
        return EmbeddedForest(
            self.n,
            dict(self.kind),
            dict(self.color),
            {v: list(r) for v, r in self.rot.items()},
            dict(self.edge_color),
        )

    def _new_id(self) -> int:
        return max(self.rot) + 1

    def pinch(self, face: Face, sites: list) -> tuple["EmbeddedForest", int]:
        """Glue several edges and pencil vertices lying on ``face`` to one new point.

        A site is either ``frozenset({u, v})`` for an edge or an int for a
        vertex.  The new point sits inside the face, so the spokes arrive in
        the order in which the face walk meets the sites.  Returns the new
        forest and the id of the new point.
        """
        darts = list(face.darts)
        order = []
        for site in sites:
            if isinstance(site, frozenset):
                pos = [i for i, (u, v) in enumerate(darts) if frozenset((u, v)) == site]
            else:
                pos = [i for i, (u, v) in enumerate(darts) if v == site]
            if len(pos) != 1:
                raise ForestError(f"site {site!r} does not lie once on the face")
            order.append((pos[0], site))
        order.sort(key=lambda t: t[0])

        g = self.copy()
        p = g._new_id()
        new_rot: list[int] = []
        colors = set()
        for pos, site in order:
            u, v = darts[pos]
            if isinstance(site, frozenset):
                colors.add(g.edge_color.pop(site))
                g.rot[u][g.rot[u].index(v)] = p
                g.rot[v][g.rot[v].index(u)] = p
                for w in (u, v):
                    g.edge_color[frozenset((w, p))] = self.edge_color[site]
                new_rot.extend((u, v))
            else:
                w = v
                if g.kind[w] != PENCIL:
                    raise ForestError("only pencil vertices can be glued")
                colors.add(g.color[w])
                r = g.rot.pop(w)
                i = r.index(u)
                spokes = r[i:] + r[:i]
                for y in spokes:
                    g.rot[y][g.rot[y].index(w)] = p
                    g.edge_color[frozenset((y, p))] = g.edge_color.pop(frozenset((y, w)))
                del g.kind[w], g.color[w]
                new_rot.extend(spokes)
        if len(colors) != 1:
            raise ForestError("glued sites must share one color")
        g.rot[p] = new_rot
        g.kind[p] = PENCIL
        g.color[p] = colors.pop()
        return g, p

    def split(self, v: int, blocks: list[list[int]]) -> "EmbeddedForest":
        """Resolve pencil ``v`` along a non-crossing partition of its spokes.

        ``blocks`` holds spoke positions in ``rot[v]``.  A block of two spokes
        becomes a plain edge, a larger block becomes a smaller pencil.
        """
        g = self.copy()
        r = g.rot.pop(v)
        c = g.color.pop(v)
        del g.kind[v]
        for y in r:
            g.edge_color.pop(frozenset((y, v)), None)
        nxt = g._new_id() if g.rot else v
        for block in blocks:
            nbrs = [r[i] for i in sorted(block)]
            if len(nbrs) == 2:
                a, b = nbrs
                if frozenset((a, b)) in g.edge_color:
                    raise ForestError("smoothing creates a double edge")
                g.rot[a][g.rot[a].index(v)] = b
                g.rot[b][g.rot[b].index(v)] = a
                g.edge_color[frozenset((a, b))] = c
            else:
                q = nxt
                nxt += 1
                for y in nbrs:
                    g.rot[y][g.rot[y].index(v)] = q
                    g.edge_color[frozenset((y, q))] = c
                g.rot[q] = nbrs
                g.kind[q] = PENCIL
                g.color[q] = c
        return g


def forest_check(forest: EmbeddedForest) -> bool:
    """The underlying graph has no cycle."""
    return forest.is_forest()
