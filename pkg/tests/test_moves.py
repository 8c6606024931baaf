import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chordstrata.atlas import enumerate_generic
from chordstrata.moves import (
    MoveError,
    all_smoothings,
    bfs_distances,
    contract,
    contractions,
    even_noncrossing_partitions,
    face_sites,
    incidence,
    path_to_M,
    smoothings,
    whitehead,
    whitehead_neighbors,
)
from chordstrata.signature import Signature, chord_length, m_name, m_signatures, parse_notation
from oracles import catalan, whitehead_oracle

B2 = ((0, 2), (4, 6))
R2 = ((1, 3), (5, 7))
WALL2 = Signature(2, B2, ((1, 5), (3, 7)), (("red", ((1, 5), (3, 7))),))


def test_contract_red_pair_d2():
    m = Signature(2, B2, R2)
    walls = {c.result for c in contractions(m, fresh_only=True)}
    assert WALL2 in walls
    assert WALL2.codim == 1


def test_contract_rejects_sites_in_one_component():
    m = Signature(3, ((0, 10), (2, 4), (6, 8)), ((1, 11), (3, 7), (5, 9)),
                  (("red", ((3, 7), (5, 9))),)).validate()
    for fi in range(len(m.forest.faces())):
        for by_comp in face_sites(m, fi).values():
            for sites in by_comp.values():
                if len(sites) >= 2:
                    with pytest.raises(MoveError):
                        contract(m, fi, sites[:2])
                    return
    pytest.fail("no face with two sites of one component")


def test_contract_rejects_sites_off_the_face():
    m = Signature(3, ((0, 2), (4, 6), (8, 10)), ((1, 3), (5, 7), (9, 11)))
    forest = m.forest
    faces = forest.faces()
    on_face = {frozenset(d) for d in faces[0].darts}
    far = [frozenset(e) for e in forest.edges()
           if forest.edge_color[frozenset(e)] == "blue" and frozenset(e) not in on_face]
    with pytest.raises(MoveError):
        contract(m, 0, far[:2])


def test_codim_one_from_generic_d3(atlas3):
    f = parse_notation(3, "|2;8|")
    results = {c.result for c in contractions(f, fresh_only=True)}
    assert results and all(r.codim == 1 and r in atlas3 for r in results)


def test_smoothings_of_two_pencil():
    full = smoothings(WALL2, WALL2.pencils[0])
    reds = sorted(s.red for s in full)
    assert reds == [((1, 3), (5, 7)), ((1, 7), (3, 5))]


def test_even_noncrossing_partitions_catalan():
    for m in range(1, 6):
        pts = list(range(2 * m))
        pairings = [p for p in even_noncrossing_partitions(pts) if all(len(b) == 2 for b in p)]
        assert len(pairings) == catalan(m)


def test_three_pencil_smoothings(atlas3):
    top = max(atlas3, key=lambda s: s.codim)
    assert top.codim == 3
    generic = [s for s in all_smoothings(top) if s.is_generic]
    assert len(generic) == 5


def test_contract_smooth_round_trip(atlas3):
    for s in atlas3:
        for c in contractions(s):
            assert s in all_smoothings(c.result)


def test_codim_one_has_two_smoothings(atlas3):
    for w in atlas3.by_codim(1):
        assert len(smoothings(w, w.pencils[0])) == 2


def test_whitehead_example_d2():
    s = Signature(2, ((0, 6), (2, 4)), R2)
    nbrs = whitehead(s)
    assert len(nbrs) == 2
    assert {w.pencils[0][0] for w, _ in nbrs} == {"blue", "red"}


def test_whitehead_symmetric_and_generic(atlas3):
    for s in atlas3.generic():
        for t in whitehead_neighbors(s):
            assert t.is_generic
            assert s in whitehead_neighbors(t)


def _as_pair(s):
    return (s.blue, s.red)


def test_whitehead_matches_oracle_d3(atlas3):
    for s in atlas3.generic():
        assert {_as_pair(t) for t in whitehead_neighbors(s)} == whitehead_oracle(3, s.blue, s.red)


def test_whitehead_matches_oracle_d4():
    for s in enumerate_generic(4):
        assert {_as_pair(t) for t in whitehead_neighbors(s)} == whitehead_oracle(4, s.blue, s.red)


@pytest.mark.parametrize("d", [3, 4, 5])
def test_m_has_d_d_minus_1_f_neighbours(d):
    for m in m_signatures(d).values():
        nbrs = whitehead_neighbors(m)
        assert len(nbrs) == d * (d - 1)
        assert all(t.kind() == "F" for t in nbrs)


def test_s_fan_d4():
    assert len(whitehead_neighbors(parse_notation(4, "[1,11;10,0]"))) == 8


def _moves_on_blue(d):
    n = 4 * d
    out = []
    for s in enumerate_generic(d):
        if all(chord_length(c, n) == 2 for c in s.red):
            for t in whitehead_neighbors(s):
                old, new = set(s.blue) - set(t.blue), set(t.blue) - set(s.blue)
                if old:
                    out.append((n, sorted(old), sorted(new)))
    return out


BLUE_MOVES = {d: _moves_on_blue(d) for d in (4, 5)}


def _short(c, n):
    return chord_length(c, n) == 2


def _successive_ends(a, b, n):
    return sum(chord_length((x, y), n) == 2 for x in a for y in b)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(BLUE_MOVES[4] + BLUE_MOVES[5]))
def test_long_successive_pair_gains_short_chords(move):
    n, (a, b), new = move
    if _short(a, n) or _short(b, n) or not _successive_ends(a, b, n):
        return
    gained = sum(_short(c, n) for c in new)
    assert gained == (2 if _successive_ends(a, b, n) == 2 else 1)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(BLUE_MOVES[4] + BLUE_MOVES[5]))
def test_non_successive_pair_gains_long_chords(move):
    n, (a, b), new = move
    if _successive_ends(a, b, n):
        return
    short_old = _short(a, n) + _short(b, n)
    long_gain = sum(not _short(c, n) for c in new) - (2 - short_old)
    assert long_gain == {2: 2, 1: 1, 0: 0}[short_old]
    if short_old == 0:
        assert not any(_short(c, n) for c in new)


def test_path_to_M_examples():
    m = m_signatures(4)["M2"]
    assert path_to_M(m) == [m]
    path = path_to_M(parse_notation(4, "|0;10|"))
    assert len(path) >= 2 and m_name(path[-1]) == "M3"
    with pytest.raises(MoveError):
        path_to_M(WALL2)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_path_to_M_every_generic(d):
    gen = enumerate_generic(d)
    dist = bfs_distances(list(m_signatures(d).values()))
    assert set(dist) == set(gen)
    diameter = max(dist.values())
    for s in gen:
        path = path_to_M(s)
        assert m_name(path[-1]) is not None
        for x, y in zip(path, path[1:]):
            assert y in whitehead_neighbors(x)
        assert len(path) - 1 >= dist[s]
        assert len(path) - 1 <= 2 * diameter


def test_incidence_relations():
    m = Signature(2, B2, R2)
    assert incidence(m, WALL2) == "<"
    assert incidence(WALL2, m) == ">"
    assert incidence(m, m) == "="
    for g in smoothings(WALL2, WALL2.pencils[0]):
        assert incidence(g, WALL2) == "<"
    assert incidence(m, Signature(2, ((0, 6), (2, 4)), R2)) == "incomparable"
    with pytest.raises(MoveError):
        incidence(m, m_signatures(3)["M1"])


def test_incidence_strict_order(atlas3):
    sigs = sorted(atlas3, key=lambda s: (s.codim, s.key))
    sample = random.Random(3).sample(sigs, 25)
    for a in sample:
        for b in sample:
            r = incidence(a, b)
            if r == "<":
                assert a.codim < b.codim and incidence(b, a) == ">"
