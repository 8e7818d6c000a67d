import json

import pytest

from knotcolor.alexander import alexander_polynomial
from knotcolor.diagram import KnotDiagram
from knotcolor.errors import MalformedToken, UnknownKnot
from knotcolor.knotdb import ALIASES, KNOTS, load_file, lookup, names
from knotcolor.laurent import parse_coeffs


def test_table_contents():
    assert names() == ["3_1", "4_1", "6_1", "6_2", "6_3", "7_2", "8_7", "9_12"]
    assert lookup("trefoil") is lookup("3_1")
    assert set(ALIASES.values()) <= set(KNOTS)


def test_goldens_recomputed(table_knot):
    assert alexander_polynomial(table_knot.diagram).reduced == table_knot.expected_reduced_alexander
    assert len(table_knot.diagram.components) == 1


def test_named_goldens():
    assert lookup("4_1").expected_reduced_alexander == parse_coeffs([1, -3, 1])
    assert lookup("9_12").expected_reduced_alexander == parse_coeffs([2, -9, 13, -9, 2])


def test_unknown():
    with pytest.raises(UnknownKnot) as info:
        lookup("10_99")
    assert "10_99" in str(info.value)


def test_crossing_counts_match_names():
    for rec in KNOTS.values():
        assert rec.diagram.crossing_count == int(rec.name.split("_")[0])


def test_load_single_pd(tmp_path):
    f = tmp_path / "tref.pd"
    f.write_text("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]\n")
    (rec,) = load_file(f)
    assert rec.name == "tref" and isinstance(rec.diagram, KnotDiagram)
    assert rec.expected_reduced_alexander is None


def test_load_named_lines(tmp_path):
    f = tmp_path / "two.txt"
    f.write_text("# comment\nA: X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]\nB: PD[X[1,1,2,2]]\n")
    recs = load_file(f)
    assert [r.name for r in recs] == ["A", "B"]
    assert recs[1].diagram.crossing_count == 1


def test_load_json(tmp_path):
    f = tmp_path / "k.json"
    f.write_text(json.dumps([{"name": "fig8", "pd": lookup("4_1").pd, "alexander": [1, -3, 1]}]))
    (rec,) = load_file(f)
    assert rec.name == "fig8"
    assert alexander_polynomial(rec.diagram).reduced == rec.expected_reduced_alexander
    g = tmp_path / "single.json"
    g.write_text(json.dumps([[1, 1, 2, 2]]))
    assert load_file(g)[0].diagram.crossing_count == 1


def test_load_errors(tmp_path):
    f = tmp_path / "bad.pd"
    f.write_text("X[1,2,3]")
    with pytest.raises(MalformedToken):
        load_file(f)
