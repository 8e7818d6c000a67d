import json

import jsonschema
import pytest

from knotcolor.cli import cli_main, parse_m_values

INT = {"type": "integer"}
POLY = {
    "type": "object",
    "required": ["coeffs", "min_degree"],
    "properties": {"coeffs": {"type": "array", "items": INT}, "min_degree": INT},
}
SCHEMAS = {
    "alex": {
        "type": "object",
        "required": ["knot", "alexander", "reduced", "vanishes", "by_minor_consistent"],
        "properties": {"alexander": POLY, "reduced": POLY, "vanishes": {"type": "boolean"}},
    },
    "mdet": {
        "type": "object",
        "required": ["knot", "reduced", "vanishes", "m_dets"],
        "properties": {"m_dets": {"type": "object", "additionalProperties": INT}},
    },
    "color": {
        "type": "object",
        "required": ["p", "m", "total", "trivial", "nontrivial", "dimension", "colorings"],
        "properties": {"total": INT, "nontrivial": INT, "colorings": {"type": "array"}},
    },
    "bounds": {
        "type": "object",
        "required": ["p", "m", "min3", "needs_four", "log_bound", "best_lower", "M_used"],
        "properties": {"best_lower": INT, "M_used": INT, "needs_four": {"type": "boolean"}},
    },
    "orbits": {
        "type": "object",
        "required": ["class_count", "class_sizes", "free", "group_order"],
        "properties": {"class_sizes": {"type": "array", "items": INT}, "free": {"type": "boolean"}},
    },
    "kh": {
        "type": "object",
        "required": ["admits_injective", "witnesses", "arcs", "alternating"],
    },
    "palette": {
        "type": "object",
        "required": ["coloring", "graph", "forest", "determinants", "lemma_ok"],
        "properties": {"determinants": {"type": "array", "items": INT}},
    },
    "mincol": {"type": "object", "required": ["knot", "p", "m"]},
}


def run(capsys, *argv):
    code = cli_main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_alex_text(capsys):
    code, out, _ = run(capsys, "alex", "--knot", "4_1")
    assert code == 0
    assert out.strip() == "Δ⁰(T) = T^2 - 3T + 1"


def test_mdet_table(capsys):
    code, out, _ = run(capsys, "mdet", "--knot", "4_1", "--m", "2..13", "--json")
    assert code == 0
    data = json.loads(out)
    values = [data["m_dets"][str(m)] for m in range(2, 14)]
    assert values == [m * m - 3 * m + 1 for m in range(2, 14)]


def test_bounds_text(capsys):
    code, out, _ = run(capsys, "bounds", "--knot", "8_7", "--p", "23", "--m", "2")
    assert code == 0 and "best_lower = 6" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["alex", "--knot", "6_3"],
        ["mdet", "--knot", "6_1", "--m", "2,3"],
        ["color", "--knot", "6_1", "--p", "5", "--m", "3", "--show", "3"],
        ["bounds", "--knot", "6_2", "--p", "19", "--m", "3"],
        ["orbits", "--knot", "7_2", "--p", "5", "--m", "2"],
        ["kh", "--knot", "8_7", "--p", "23", "--m", "2"],
        ["palette", "--knot", "6_1", "--p", "5", "--m", "3"],
        ["mincol", "--knot", "3_1", "--p", "3", "--m", "2"],
    ],
)
def test_json_schemas(capsys, argv):
    code, out, _ = run(capsys, *argv, "--json")
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, SCHEMAS[argv[0]])
    # output is deterministic
    assert run(capsys, *argv, "--json")[1] == out


def test_color_json_values(capsys):
    _, out, _ = run(capsys, "color", "--knot", "8_7", "--p", "23", "--m", "2", "--json")
    data = json.loads(out)
    assert (data["total"], data["nontrivial"]) == (529, 506)


def test_integral_coloring(capsys):
    code, out, _ = run(capsys, "color", "--knot", "6_1", "--p", "0", "--m", "2", "--json")
    assert code == 0
    assert json.loads(out)["kernel_rank"] == 2


def test_pd_file(capsys, tmp_path):
    f = tmp_path / "tref.pd"
    f.write_text("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]")
    code, out, _ = run(capsys, "alex", "--pd", str(f))
    assert code == 0 and "T^2 - T + 1" in out


def test_dot_output(capsys, tmp_path):
    f = tmp_path / "g.dot"
    code, _, _ = run(capsys, "palette", "--knot", "3_1", "--p", "3", "--m", "2", "--dot", str(f))
    assert code == 0
    assert f.read_text().startswith("digraph")


@pytest.mark.parametrize(
    "argv",
    [
        ["color", "--knot", "3_1", "--p", "9", "--m", "2"],
        ["alex", "--knot", "10_99"],
        ["bounds", "--knot", "4_1", "--p", "23", "--m", "2"],
        ["mincol", "--knot", "6_1", "--p", "5", "--m", "3", "--budget", "speed=1"],
    ],
)
def test_domain_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


@pytest.mark.parametrize(
    "argv",
    [[], ["frobnicate"], ["alex"], ["alex", "--knot", "3_1", "--pd", "x"], ["mdet", "--knot", "4_1", "--m", "a..b"]],
)
def test_usage_errors_exit_1(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 1


def test_parse_m_values():
    assert parse_m_values("2..5") == [2, 3, 4, 5]
    assert parse_m_values("-1,3") == [-1, 3]
    assert parse_m_values("7") == [7]
