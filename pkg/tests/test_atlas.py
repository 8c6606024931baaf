import pytest

from chordstrata.atlas import (
    enumerate_all,
    enumerate_generic,
    euler_sum,
    format_census,
    noncrossing_matchings,
)
from chordstrata.signature import m_signatures
from oracles import catalan, census, enumerate_brute, generic_brute


def _brute_keys(d):
    out = set()
    for b, r, bp, rp in enumerate_brute(d):
        out.add((b, r, tuple(sorted(bp)), tuple(sorted(rp))))
    return out


def _record(s):
    bp = tuple(sorted(c for col, c in s.pencils if col == "blue"))
    rp = tuple(sorted(c for col, c in s.pencils if col == "red"))
    return (s.blue, s.red, bp, rp)


def test_generic_counts():
    assert len(enumerate_generic(2)) == 4
    gen3 = enumerate_generic(3)
    assert len(gen3) == 22
    kinds = {}
    for s in gen3:
        kinds[s.kind()] = kinds.get(s.kind(), 0) + 1
    assert kinds == {"M": 4, "F": 12, "S": 6}


def test_generic_matches_brute_force():
    for d in (2, 3, 4):
        pkg = {(s.blue, s.red) for s in enumerate_generic(d)}
        assert pkg == set(generic_brute(d))


def test_candidate_space_d3():
    blue = list(noncrossing_matchings(list(range(0, 12, 2))))
    red = list(noncrossing_matchings(list(range(1, 12, 2))))
    assert len(blue) == len(red) == catalan(3)
    assert len(blue) * len(red) - len(enumerate_generic(3)) == 3


def test_census_published():
    assert enumerate_all(2).census() == {0: 4, 1: 4}
    assert enumerate_all(3).census() == {0: 22, 1: 48, 2: 30, 3: 4}


@pytest.mark.parametrize("d", [2, 3, 4])
def test_atlas_matches_brute_force(d):
    atlas = enumerate_all(d)
    assert {_record(s) for s in atlas} == _brute_keys(d)
    assert atlas.census() == census(d)


def test_top_cells_d3(atlas3):
    tops = atlas3.by_codim(3)
    assert len(tops) == 4
    for s in tops:
        (pencil,) = s.pencils
        assert len(pencil[1]) == 3


def test_euler_sums(atlas4):
    assert euler_sum(2) == 0
    assert euler_sum(3) == 0
    assert atlas4.euler_sum() == 0


def test_d4_census_golden(atlas4):
    # golden value, also reproduced by the brute-force oracle above
    assert atlas4.census() == {0: 140, 1: 480, 2: 608, 3: 344, 4: 80, 5: 4}


def test_families_d3(atlas3):
    fams = atlas3.families(1)
    assert sorted(len(f) for f in fams) == [12, 12, 12, 12]


def test_keys_unique_and_closed(atlas3):
    keys = [s.key for s in atlas3]
    assert len(keys) == len(set(keys))
    for s in atlas3:
        assert s.shift(1) in atlas3 and s.reflect(0) in atlas3


def test_facets_and_quadrangle_counts(atlas3):
    for w in atlas3.by_codim(1):
        assert len(atlas3.facets(w)) == 2
    for c in atlas3.by_codim(2):
        assert len([g for g in atlas3.generic() if g.key in atlas3.below(c)]) >= 4


def test_jobs_do_not_change_result():
    assert enumerate_all(3, jobs=2).table() == enumerate_all(3).table()


def test_max_codim_truncates():
    assert enumerate_all(3, max_codim=1).census() == {0: 22, 1: 48}


def test_degree_bounds():
    with pytest.raises(ValueError):
        enumerate_all(1)
    with pytest.raises(ValueError):
        enumerate_generic(99)


def test_format_census(atlas3):
    text = format_census(atlas3)
    assert "22" in text and "48" in text and "euler" in text.lower()


def test_m_in_atlas(atlas4):
    for m in m_signatures(4).values():
        assert m in atlas4
