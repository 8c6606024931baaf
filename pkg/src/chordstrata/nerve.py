"""The inclusion diagram as a cell complex, and its global structure.

Cell ``k`` corresponds to a codimension-``k`` signature.  The boundary of a
cell lists the signatures one codimension lower lying below it.  On top of
the complex this module finds the NC structures (closures of a monochrome
pencil of ``d`` chords), the cycle of Q-diagrams with their pieces, and the
label symmetries acting on everything.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .atlas import Atlas, enumerate_all
from .core_map import BLUE, RED, Chord, norm_chord
from .moves import all_smoothings, bfs_distances, neighbors
from .signature import (
    Signature,
    m_signatures,
    parse_notation,
    short_matching,
    tree_symbol,
    tree_type,
)


@dataclass(frozen=True)
class Cell:
    id: int
    dim: int
    key: str
    boundary: tuple[int, ...]


class NerveComplex:
    """Cells indexed by the rank of their canonical key."""

    def __init__(self, atlas: Atlas) -> None:
        self.atlas = atlas
        self.degree = atlas.degree
        keys = sorted(atlas.signatures)
        self.index = {k: i for i, k in enumerate(keys)}
        cells = []
        for k in keys:
            sig = atlas.signatures[k]
            bd = tuple(sorted(self.index[f.key] for f in atlas.facets(sig)))
            cells.append(Cell(self.index[k], sig.codim, k, bd))
        self.cells = cells

    def signature(self, cid: int) -> Signature:
        return self.atlas.signatures[self.cells[cid].key]

    def cell_of(self, sig: Signature) -> Cell:
        return self.cells[self.index[sig.key]]

    def of_dim(self, k: int) -> list[Cell]:
        return [c for c in self.cells if c.dim == k]

    def closure(self, cid: int) -> set[int]:
        """Ids of all cells below ``cid``, excluding ``cid`` itself."""
        return {self.index[k] for k in self.atlas.below(self.signature(cid))}

    def f_vector(self) -> dict[int, int]:
        return self.atlas.census()

    @cached_property
    def edges(self) -> list[tuple[int, int, int]]:
        """1-cells as (wall id, generic id, generic id)."""
        return [(c.id, *c.boundary) for c in self.of_dim(1)]

    def records(self) -> list[dict]:
        return [
            {"id": c.id, "codim": c.dim, "key": c.key, "boundary": list(c.boundary)}
            for c in self.cells
        ]


def build_nerve(degree: int, atlas: Atlas | None = None, jobs: int = 1) -> NerveComplex:
    return NerveComplex(atlas or enumerate_all(degree, jobs=jobs))


def quadrangle_violations(cx: NerveComplex) -> list[str]:
    """Cells breaking the two-vertex or quadrangle law, with a reason."""
    bad = []
    for c in cx.of_dim(1):
        if len(c.boundary) != 2:
            bad.append(f"1-cell {c.id} has {len(c.boundary)} vertices")
    for c in cx.of_dim(2):
        below = cx.closure(c.id)
        verts = [i for i in below if cx.cells[i].dim == 0]
        edges = [i for i in below if cx.cells[i].dim == 1]
        if len(verts) != 4 or len(edges) != 4:
            bad.append(f"2-cell {c.id} has {len(verts)} vertices and {len(edges)} edges")
            continue
        # the edges must close up into one 4-cycle
        deg = {v: 0 for v in verts}
        for e in edges:
            for v in cx.cells[e].boundary:
                deg[v] += 1
        if any(x != 2 for x in deg.values()):
            bad.append(f"2-cell {c.id} boundary is not a 4-cycle")
    return bad


def quadrangle_cycle(cx: NerveComplex, cid: int) -> list[int]:
    """Vertices of a 2-cell in cyclic order around its boundary."""
    below = cx.closure(cid)
    edges = [cx.cells[i].boundary for i in below if cx.cells[i].dim == 1]
    adj: dict[int, list[int]] = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    start = min(adj)
    cycle, prev = [start], None
    cur = start
    while True:
        nxt = min(x for x in adj[cur] if x != prev) if prev is None else next(
            x for x in adj[cur] if x != prev
        )
        if nxt == start:
            return cycle
        cycle.append(nxt)
        prev, cur = cur, nxt


def shared_walls(cx: NerveComplex) -> dict[tuple[int, int], int]:
    """Number of 1-cells joining each pair of generic cells."""
    out: dict[tuple[int, int], int] = {}
    for c in cx.of_dim(1):
        pair = tuple(sorted(c.boundary))
        out[pair] = out.get(pair, 0) + 1
    return out


# NC structures


def diameter_pencil(degree: int, color: str) -> tuple[Chord, ...]:
    n = 4 * degree
    start = 0 if color == BLUE else 1
    return tuple(norm_chord(k, k + n // 2) for k in range(start, n // 2, 2))


@dataclass(frozen=True)
class NCStructure:
    top: Signature
    members: frozenset

    @property
    def color(self) -> str:
        return self.top.pencils[0][0]

    def generic(self) -> list[Signature]:
        return sorted(s for s in self.members if s.is_generic)

    def m_names(self) -> list[str]:
        names = {m: k for k, m in m_signatures(self.top.degree).items()}
        return sorted(names[s] for s in self.members if s in names)

    def class_counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for s in self.generic():
            n_long = sum(tree_type(b, r, s.n) != "M" for b, r in s.trees())
            label = "M" if n_long == 0 else s.kind() * n_long
            out[label] = out.get(label, 0) + 1
        return dict(sorted(out.items()))


def nc_structures(degree: int) -> list[NCStructure]:
    """The four closures of a monochrome pencil of ``d`` diameters.

    The other color is one of its two all-short matchings whose chords each
    cross exactly one diameter.
    """
    out = []
    for color in (BLUE, RED):
        pencil = diameter_pencil(degree, color)
        starts = (1, 3) if color == BLUE else (0, 2)
        for s in starts:
            short = short_matching(degree, s)
            blue, red = (pencil, short) if color == BLUE else (short, pencil)
            top = Signature(degree, blue, red, ((color, pencil),)).validate()
            out.append(NCStructure(top, frozenset(all_smoothings(top)) | {top}))
    return out


def open_book_tops(atlas: Atlas) -> list[Signature]:
    """Codimension ``2d-4`` signatures with pencils of both colors."""
    k = 2 * atlas.degree - 4
    return [s for s in atlas.by_codim(k) if len({c for c, _ in s.pencils}) == 2]


# Q-diagrams


def q_rows(degree: int) -> list[tuple[list[Chord], list[Chord]]]:
    """Rows of the Q-cycle as (top pairs, bottom pairs), from the top row down.

    Row ``r`` counted from the bottom has columns ``(8+2c+r, 2-2c+r)`` on
    top and the same minus one below, written in ``1 .. 4d``.  Each row is
    the previous one with every label lowered by one.
    """
    n = 4 * degree

    def norm(x: int) -> int:
        return (x - 1) % n + 1

    rows = []
    for r in range(2 * degree - 1, -1, -1):
        top = [(8 + 2 * c + r, 2 - 2 * c + r) for c in range(degree - 2)]
        rows.append(
            (
                [(norm(a), norm(b)) for a, b in top],
                [(norm(a - 1), norm(b - 1)) for a, b in top],
            )
        )
    return rows


def format_q(top: list[Chord], bottom: list[Chord]) -> str:
    def row(pairs):
        return " ".join(f"{a},{b}" for a, b in pairs)

    return f"[{row(top)}; {row(bottom)}]"


def parse_q(text: str) -> tuple[list[Chord], list[Chord]]:
    top, bottom = text.strip().strip("[]").split(";")

    def pairs(s):
        return [tuple(int(x) for x in p.split(",")) for p in s.split()]

    return pairs(top), pairs(bottom)


def q_table(d_min: int, d_max: int) -> dict[int, list[str]]:
    """Q-cycles for a range of degrees, one formatted matrix per row."""
    if not 3 <= d_min <= d_max <= 7:
        raise ValueError("q_table covers degrees 3..7")
    return {d: [format_q(t, b) for t, b in q_rows(d)] for d in range(d_min, d_max + 1)}


def embed_q(top: list[Chord], bottom: list[Chord], degree: int) -> tuple[list, list]:
    """Append the column ``(a+2, b-2)`` and rewrite labels modulo ``4(d+1)``.

    Entries are first lifted to integers.  The first top pair is read as
    ``(8+r, 2+r)`` with ``0 <= r < 2d`` and the bottom row sits one below;
    along a row the first entries go up by two per column and the second
    entries go down by two.
    """
    n, n_new = 4 * degree, 4 * (degree + 1)
    r = (top[0][0] - 8) % n
    if r >= 2 * degree or (top[0][1] - 2) % n != r:
        raise ValueError(f"{format_q(top, bottom)} is not a Q-matrix row of degree {degree}")
    out = []
    for pairs, drop in ((top, 0), (bottom, 1)):
        lifted = [(8 + r - drop, 2 + r - drop)]
        for _ in range(len(pairs)):
            a, b = lifted[-1]
            lifted.append((a + 2, b - 2))
        if [((a - 1) % n + 1, (b - 1) % n + 1) for a, b in lifted[:-1]] != [
            ((a - 1) % n + 1, (b - 1) % n + 1) for a, b in pairs
        ]:
            raise ValueError(f"{format_q(top, bottom)} is not a Q-matrix row of degree {degree}")
        out.append([((a - 1) % n_new + 1, (b - 1) % n_new + 1) for a, b in lifted])
    return out[0], out[1]


def q_signature(degree: int, top: list[Chord], bottom: list[Chord]) -> Signature:
    return parse_notation(degree, format_q(top, bottom))


def q_diagrams(degree: int) -> list[Signature]:
    """The cyclic sequence of Q-diagrams; entry ``k+1`` is entry ``k`` shifted by ``-1``."""
    if degree < 4:
        raise ValueError("Q-diagrams need degree at least 4")
    return [q_signature(degree, t, b) for t, b in q_rows(degree)]


def parallel_classes(sig: Signature) -> set[tuple[str, int]]:
    """Direction classes ``(color, (a+b) mod 4d)`` of the long chords."""
    return {
        (BLUE if c[0] % 2 == 0 else RED, (c[0] + c[1]) % sig.n) for c in sig.long_chords()
    }


def _single_f(sig: Signature) -> bool:
    types = [tree_type(b, r, sig.n) for b, r in sig.trees()]
    return types.count("F") == 1 and "S" not in types


def s_signatures(q: Signature) -> list[Signature]:
    """For every S-tree of ``q``, the signature in which only that tree is long."""
    return sorted(
        parse_notation(q.degree, tree_symbol(b, r, q.n))
        for b, r in q.trees()
        if tree_type(b, r, q.n) == "S"
    )


def f_neighbors(s: Signature, classes: set[tuple[str, int]], radius: int = 2) -> list[Signature]:
    """Single-F signatures within ``radius`` moves of ``s`` with long chord in ``classes``."""
    dist = {s: 0}
    queue = deque([s])
    while queue:
        x = queue.popleft()
        if dist[x] == radius:
            continue
        for y in neighbors(x):
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return sorted(t for t in dist if _single_f(t) and parallel_classes(t) <= classes)


def geodesic_set(a: Signature, b: Signature) -> set[Signature]:
    """Signatures lying on some shortest Whitehead path from ``a`` to ``b``."""
    da, db = bfs_distances(a), bfs_distances(b)
    total = da[b]
    return {x for x in da if x in db and da[x] + db[x] == total}


@dataclass
class QPiece:
    q: Signature
    index: int
    s_signatures: list[Signature]
    f_neighbors: dict[Signature, list[Signature]]
    m_signatures: set[Signature]
    members: set[Signature]


def q_piece(degree: int, index: int) -> QPiece:
    """Piece around the ``index``-th Q-diagram.

    It holds the Q-diagram, every shortest path to its single-S signatures,
    the single-F signatures within two moves of those whose long chord is
    parallel to a long chord of this or an adjacent Q-diagram, and the
    M-signatures closest to each of these F-signatures.
    """
    qs = q_diagrams(degree)
    k = len(qs)
    q = qs[index % k]
    classes: set[tuple[str, int]] = set()
    for j in (index - 1, index, index + 1):
        classes |= parallel_classes(qs[j % k])
    ms = set(m_signatures(degree).values())
    members = {q}
    fn = {}
    closest_m: set[Signature] = set()
    for s in s_signatures(q):
        members |= geodesic_set(q, s)
        fn[s] = f_neighbors(s, classes)
        for f in fn[s]:
            dist = bfs_distances(f)
            best = min(dist[m] for m in ms)
            closest_m |= {m for m in ms if dist[m] == best}
            members.add(f)
    members |= closest_m
    return QPiece(q, index % k, s_signatures(q), fn, closest_m, members)


def connection_piece(degree: int, index: int, pieces: list[set] | None = None) -> set[Signature]:
    """Generic signatures outside every Q-piece that are one move from both
    the ``index``-th piece and the next one."""
    pieces = pieces or [q_piece(degree, i).members for i in range(2 * degree)]
    k = len(pieces)
    inside = set().union(*pieces)
    da = bfs_distances(pieces[index % k])
    db = bfs_distances(pieces[(index + 1) % k])
    return {x for x in da if x not in inside and da[x] <= 1 and db.get(x, 2) <= 1}


def q_cover(degree: int) -> dict:
    """How much of the generic set the pieces and connection pieces cover."""
    from .atlas import enumerate_generic

    generic = set(enumerate_generic(degree))
    pieces = [q_piece(degree, i).members for i in range(2 * degree)]
    links = [connection_piece(degree, i, pieces) for i in range(2 * degree)]
    covered = set().union(*pieces, *links)
    return {
        "generic": len(generic),
        "covered": len(covered & generic),
        "missing": sorted(generic - covered),
        "piece_sizes": [len(p) for p in pieces],
        "connection_sizes": [len(c) for c in links],
    }


# symmetries


def dihedral(degree: int) -> list[tuple[str, int]]:
    """Label symmetries as ``("shift", k)`` and ``("reflect", a)`` for ``x -> a - x``."""
    n = 4 * degree
    return [("shift", k) for k in range(n)] + [("reflect", a) for a in range(n)]


def apply_symmetry(sig: Signature, g: tuple[str, int]) -> Signature:
    kind, k = g
    return sig.shift(k) if kind == "shift" else sig.reflect(k)


def is_automorphism(cx: NerveComplex, g: tuple[str, int]) -> bool:
    """``g`` permutes cells, keeps dimension and maps boundaries to boundaries."""
    image = {}
    for c in cx.cells:
        t = apply_symmetry(cx.signature(c.id), g)
        if t.key not in cx.index:
            return False
        image[c.id] = cx.index[t.key]
    if len(set(image.values())) != len(image):
        return False
    for c in cx.cells:
        d = cx.cells[image[c.id]]
        if d.dim != c.dim or sorted(image[b] for b in c.boundary) != list(d.boundary):
            return False
    return True


def symmetry_report(cx: NerveComplex) -> dict:
    """Check the generating symmetries and describe the chamber structure.

    Shift by one, shift by two and the mirror ``x -> -x`` must be
    automorphisms.  For ``d >= 4`` the Q-diagrams are used to count the
    mirrors between consecutive pieces and inside each piece.
    """
    d = cx.degree
    checks = {
        "shift1": is_automorphism(cx, ("shift", 1)),
        "shift2": is_automorphism(cx, ("shift", 2)),
        "reflect": is_automorphism(cx, ("reflect", 0)),
    }
    m_orbit = {m.shift(k).key for m in m_signatures(d).values() for k in range(4 * d)}
    report: dict = {"degree": d, "automorphisms": checks, "m_orbit": len(m_orbit)}
    gens = [cx.signature(c.id) for c in cx.of_dim(0)]
    orbits = set()
    for s in gens:
        orbits.add(min(apply_symmetry(s, g).key for g in dihedral(d)))
    report["generic_orbits"] = len(orbits)
    if d == 2:
        report["klein"] = _klein_action(cx)
    if d >= 4:
        qs = q_diagrams(d)
        q = qs[0]
        stab = [g for g in dihedral(d) if apply_symmetry(q, g) == q]
        walls = 0
        for i in range(len(qs)):
            a, b = qs[i], qs[(i + 1) % len(qs)]
            walls += any(
                g[0] == "reflect" and apply_symmetry(a, g) == b for g in dihedral(d)
            )
        # symmetries fixing every Q-diagram act trivially on the pieces
        kernel = [g for g in stab if all(apply_symmetry(x, g) == x for x in qs)]
        per_piece = len(stab) // len(kernel)
        report.update(
            q_cycle=len(qs),
            q_orbit=len({apply_symmetry(q, g) for g in dihedral(d)}),
            q_stabilizer=stab,
            trivial_on_cycle=kernel,
            walls_between_pieces=walls,
            chambers_per_piece=per_piece,
            chambers=len(qs) * per_piece,
        )
    return report


def _klein_action(cx: NerveComplex) -> dict:
    """At ``d = 2``: the group generated by shift 2 and one mirror on the four vertices."""
    verts = [c.id for c in cx.of_dim(0)]
    perms = set()
    for g in (("shift", 0), ("shift", 2), ("reflect", 0), ("reflect", 2)):
        img = tuple(cx.index[apply_symmetry(cx.signature(v), g).key] for v in verts)
        perms.add(img)
    pos = {v: i for i, v in enumerate(verts)}
    involutive = all(all(p[pos[p[i]]] == verts[i] for i in range(len(verts))) for p in perms)
    return {"order": len(perms), "involutions": involutive}
