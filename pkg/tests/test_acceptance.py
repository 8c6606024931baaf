"""Acceptance suite: one check per criterion, summarised at the end of the run."""

import math
import time
from pathlib import Path

import numpy as np
import pytest

from chordstrata.atlas import enumerate_all
from chordstrata.braid import (
    appended_root,
    braid_word,
    embed,
    embed_trajectories,
    endpoint_permutation,
    sample_root_path,
    track_roots,
)
from chordstrata.moves import bfs_distances, path_to_M, whitehead_neighbors
from chordstrata.nerve import (
    build_nerve,
    nc_structures,
    parse_q,
    q_diagrams,
    q_rows,
    q_table,
    quadrangle_violations,
    symmetry_report,
)
from chordstrata.signature import m_name, m_signatures
from chordstrata.tracer import Polynomial, degeneracy_margin, signature_of, trace
from conftest import atlas_for
from oracles import catalan

RESULTS: dict[int, tuple[bool, str]] = {}

TABLE = Path(__file__).parent / "data" / "table1.txt"
P1 = Polynomial.from_roots([-0.5 + 0.5j, -0.5 - 0.5j, 0.2 + 0.6j])
P2 = Polynomial.from_roots([-0.5 + 0.5j, -0.5 - 0.5j, -0.6 + 0.4j])


def record(n, ok, detail):
    prev = RESULTS.get(n)
    if prev:
        ok, detail = prev[0] and ok, f"{prev[1]}; {detail}"
    RESULTS[n] = (ok, detail)
    assert ok, detail


def test_criterion_1():
    t = time.perf_counter()
    atlas = enumerate_all(2)
    cx = build_nerve(2, atlas)
    elapsed = time.perf_counter() - t
    deg = {c.id: 0 for c in cx.of_dim(0)}
    for e in cx.of_dim(1):
        for v in e.boundary:
            deg[v] += 1
    ok = atlas.census() == {0: 4, 1: 4} and set(deg.values()) == {2} and elapsed < 1
    record(1, ok, f"census {atlas.census()}, 4-cycle nerve, {elapsed:.2f}s")


def test_criterion_2():
    t = time.perf_counter()
    atlas = enumerate_all(3)
    elapsed = time.perf_counter() - t
    fams = sorted(len(f) for f in atlas.families(1))
    ok = (
        atlas.census() == {0: 22, 1: 48, 2: 30, 3: 4}
        and atlas.class_census() == {"F": 12, "M": 4, "S": 6}
        and atlas.euler_sum() == 0
        and fams == [12, 12, 12, 12]
        and elapsed < 30
    )
    record(2, ok, f"census {atlas.census()}, classes {atlas.class_census()}, "
                  f"euler {atlas.euler_sum()}, families {fams}, {elapsed:.2f}s")


@pytest.mark.parametrize("d", [3, 4])
def test_criterion_3(d):
    cx = build_nerve(d, atlas_for(d))
    bad = quadrangle_violations(cx)
    record(3, not bad, f"d={d}: {len(cx.of_dim(2))} 2-cells, {len(bad)} violations")


@pytest.mark.parametrize("d", [3, 4, 5])
def test_criterion_4(d):
    counts = []
    for m in m_signatures(d).values():
        nbrs = whitehead_neighbors(m)
        # -1 flags a neighbour that is not an F-signature
        counts.append(len(nbrs) if all(t.kind() == "F" for t in nbrs) else -1)
    ok = counts == [d * (d - 1)] * 4
    record(4, ok, f"d={d}: F-neighbours {counts}")


@pytest.mark.parametrize("d", [3, 4])
def test_criterion_5(d):
    ncs = nc_structures(d)
    sizes = [len(nc.generic()) for nc in ncs]
    shared = max(len(set(a.m_names()) & set(b.m_names()))
                 for i, a in enumerate(ncs) for b in ncs[i + 1:])
    ok = len(ncs) == 4 and sizes == [catalan(d)] * 4 and shared <= 1
    record(5, ok, f"d={d}: {len(ncs)} NC, generic {sizes}, max shared M {shared}")


def test_criterion_6():
    qs = q_diagrams(4)
    orbit_ok = len(qs) == 8 and len(set(qs)) == 8
    rule_ok = all(qs[(k + 1) % 8] == q.shift(-1) for k, q in enumerate(qs))
    for d in range(3, 8):
        rows = q_rows(d)
        rule_ok &= all(b0 == t1 for (_, b0), (t1, _) in zip(rows, rows[1:]))
    table = {}
    for line in TABLE.read_text().splitlines():
        if line and not line.startswith("#"):
            d, r, cell = line.split("\t")
            table[(int(d), int(r))] = cell
    ours = q_table(3, 7)
    mismatched = []
    for (d, r), cell in table.items():
        if parse_q(ours[d][r - 1]) != parse_q(cell):
            top, bottom = parse_q(cell)
            labels = [x for p in top + bottom for x in p]
            malformed = len(labels) != len(set(labels))
            mismatched.append((d, r, malformed))
    table_ok = all(m for _, _, m in mismatched)
    ok = orbit_ok and rule_ok and table_ok
    record(6, ok, f"orbit {len(qs)}, subtract-1 {'ok' if rule_ok else 'broken'}, "
                  f"{len(table) - len(mismatched)}/{len(table)} cells verbatim, "
                  f"{len(mismatched)} differ (all malformed in the source: {table_ok})")


@pytest.mark.parametrize("d", [2, 3, 4])
def test_criterion_7(d):
    rep = symmetry_report(build_nerve(d, atlas_for(d)))
    ok = all(rep["automorphisms"].values())
    detail = f"d={d}: " + ", ".join(f"{k} {'ok' if v else 'FAIL'}" for k, v in rep["automorphisms"].items())
    if d == 4:
        ok &= rep["chambers"] == 16
        detail += f", chambers {rep['chambers']}"
    record(7, ok, detail)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_criterion_8(d):
    gen = atlas_for(d).generic()
    dist = bfs_distances(list(m_signatures(d).values()))
    diameter = max(dist.values())
    lengths = []
    ok = True
    for s in gen:
        path = path_to_M(s)
        ok &= m_name(path[-1]) is not None
        ok &= all(y in whitehead_neighbors(x) for x, y in zip(path, path[1:]))
        lengths.append(len(path) - 1)
    overhead = max(a - dist[s] for a, s in zip(lengths, gen))
    record(8, ok, f"d={d}: {len(gen)} generic reach M, longest path {max(lengths)}, "
                  f"BFS diameter {diameter}, max overhead {overhead}")


def test_criterion_9_tracer():
    t = time.perf_counter()
    p = Polynomial((1, 0, -1 - 1j))
    keys = {signature_of(p, step=s).key for s in (0.1, 0.05)}
    sig = signature_of(p)
    elapsed = time.perf_counter() - t
    margin0 = degeneracy_margin(Polynomial((1, 0, -1)))
    ok = len(keys) == 1 and sig.is_valid() and sig.is_generic and abs(margin0) <= 1e-9
    ok &= elapsed < 5
    record(9, ok, f"z^2-(1+i) -> {sig.key} stable {len(keys) == 1}, "
                  f"margin(z^2-1) {margin0:.1e}, {elapsed:.2f}s")


@pytest.mark.xfail(strict=True, reason="P1 and P2 are three Whitehead moves apart")
def test_criterion_9_adjacency():
    t = time.perf_counter()
    a, b = signature_of(P1), signature_of(P2)
    elapsed = time.perf_counter() - t
    dist = bfs_distances(a)[b]
    record(9, b in whitehead_neighbors(a) and elapsed < 10,
           f"P1 {a.key}, P2 {b.key}, Whitehead distance {dist} (adjacency needs 1)")


def _loop(rng, d, samples=600):
    base = rng.normal(size=d) + 1j * rng.normal(size=d)
    perm = rng.permutation(d)
    wob = rng.normal(size=(4, d)) + 1j * rng.normal(size=(4, d))
    ts = np.linspace(0, 1, samples)
    return np.array([(1 - t) * base + t * base[perm]
                     + 0.6 * sum(wob[k] * math.sin(math.pi * (k + 1) * t) for k in range(4))
                     for t in ts])


def test_criterion_10():
    rng = np.random.default_rng(2024)
    failures = 0
    for i in range(100):
        traj = _loop(rng, 2 + i % 4)
        failures += braid_word(traj).permutation() != endpoint_permutation(traj)
    half = braid_word(track_roots(sample_root_path(
        lambda t: [-np.exp(1j * math.pi * t), np.exp(1j * math.pi * t)], 200)))
    roots = np.array([-1.0, 1.0])
    formula = appended_root(roots) == 2 and np.allclose(
        sorted(embed(Polynomial.from_roots(roots)).roots().real), [-1, 1, 2])
    unstable = 0
    for i in range(20):
        d = 2 + i % 4
        traj = _loop(rng, d)
        unstable += braid_word(embed_trajectories(traj)) != braid_word(traj).embedded(d + 1)
    ok = failures == 0 and str(half) == "s1" and formula and unstable == 0
    record(10, ok, f"permutation failures {failures}/100, half-turn '{half}', "
                   f"root-append {'exact' if formula else 'wrong'}, embedding changes {unstable}/20")
