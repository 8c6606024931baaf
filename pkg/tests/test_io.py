import json
import math
import re

import pytest

from chordstrata.io import (
    SchemaError,
    read_nerve,
    read_signature,
    render_drawing,
    render_signature,
    signature_from_dict,
    signature_to_dict,
    write_nerve,
    write_signature,
)
from chordstrata.nerve import build_nerve
from chordstrata.signature import Signature, m_signatures
from chordstrata.tracer import NearDegenerate, Polynomial, trace

DEG6_BLUE = ((0, 2), (4, 6), (8, 18), (10, 20), (12, 14), (16, 22))
DEG6_RED = ((1, 7), (3, 21), (5, 23), (9, 15), (11, 13), (17, 19))


@pytest.mark.parametrize("fixture", ["atlas2", "atlas3", "atlas4"])
def test_round_trip(fixture, request):
    for s in request.getfixturevalue(fixture):
        assert read_signature(write_signature(s)) == s


def test_schema_example():
    doc = {"degree": 2, "blue": [[0, 2], [4, 6]], "red": [[1, 3], [5, 7]]}
    assert signature_from_dict(doc).codim == 0
    wall = {"degree": 2, "blue": [[0, 2], [4, 6]], "red": [[1, 5], [3, 7]],
            "pencils": [{"color": "red", "spokes": [1, 3, 5, 7]}]}
    sig = signature_from_dict(wall)
    assert sig.codim == 1
    assert signature_to_dict(sig) == wall


@pytest.mark.parametrize("doc, field", [
    ({"degree": 2, "blue": [[0, 3], [4, 6]], "red": [[1, 2], [5, 7]]}, "blue[0]"),
    ({"degree": 0, "blue": [], "red": []}, "degree"),
    ({"degree": 2, "blue": [[0, 2]], "red": "x"}, "red"),
    ({"degree": 2, "blue": [[0, 2], [4, 9]], "red": [[1, 3], [5, 7]]}, "blue[1]"),
    ({"degree": 2, "blue": [[0, 4], [2, 6]], "red": [[1, 3], [5, 7]]}, "document"),
])
def test_schema_errors(doc, field):
    with pytest.raises(SchemaError) as info:
        signature_from_dict(doc)
    assert info.value.field == field


def test_bad_json():
    with pytest.raises(SchemaError):
        read_signature("{not json")


def test_nerve_export(nerve3):
    doc = read_nerve(write_nerve(nerve3))
    assert doc["degree"] == 3
    assert len(doc["cells"]) == 104
    assert [c["id"] for c in doc["cells"]] == list(range(104))
    with pytest.raises(SchemaError):
        read_nerve(json.dumps({"cells": [{"id": 0}]}))


def test_render_deterministic():
    m = m_signatures(3)["M1"]
    assert render_signature(m) == render_signature(m)


def test_render_m2_has_eight_short_arcs():
    svg = render_signature(m_signatures(4)["M2"])
    assert svg.count('class="chord"') == 8
    assert svg.count('class="crossing"') == 4
    assert svg.startswith("<?xml") and 'version="1.1"' in svg


def test_render_degree6_chord_set():
    sig = Signature(6, DEG6_BLUE, DEG6_RED)
    # this chord set fails the face condition; rendering does not validate
    assert not sig.is_valid()
    svg = render_signature(sig)
    assert svg.count('class="chord"') == 12
    title = svg.split("<title>")[1].split("</title>")[0]
    assert title == sig.key


def test_labels_at_their_angles():
    svg = render_signature(m_signatures(2)["M1"])
    labels = re.findall(r'<text x="([-\d.]+)" y="([-\d.]+)"[^>]*>(\d+)<', svg)
    assert [int(k) for _, _, k in labels] == list(range(8))
    for x, y, k in labels:
        angle = math.atan2(-float(y), float(x)) % (2 * math.pi)
        assert angle == pytest.approx(2 * math.pi * int(k) / 8, abs=1e-3)


def test_render_pencil_dot():
    wall = Signature(2, ((0, 2), (4, 6)), ((1, 5), (3, 7)), (("red", ((1, 5), (3, 7))),))
    svg = render_signature(wall)
    assert svg.count('class="pencil"') == 1


def test_render_drawing():
    svg = render_drawing(trace(Polynomial((1, 0, -1 - 1j))))
    assert svg.count('class="curve"') == 4
    assert svg.count('class="root"') == 2
    assert svg.count('class="guide"') == 8
    p1 = Polynomial.from_roots([-0.5 + 0.5j, -0.5 - 0.5j, 0.2 + 0.6j])
    svg = render_drawing(trace(p1))
    assert svg.count('class="curve"') == 6 and svg.count('class="root"') == 3


def test_render_drawing_refuses_degenerate():
    with pytest.raises(NearDegenerate):
        render_drawing(trace(Polynomial((1, 0, -1))))
