from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from knotcolor.alexander import m_determinant
from knotcolor.coloring import (
    Coloring,
    ColoringParams,
    brute_force_colorings,
    coloring_from_values,
    count_colorings,
    enumerate_colorings,
    integral_colorings,
    kh_check,
    modular_wrap_check,
    nontrivial_colorings,
    polychromatic_crossings,
    validate_coloring,
)
from knotcolor.diagram import parse_pd
from knotcolor.errors import InvalidParameters, NotPrime, TooManySolutions
from knotcolor.knotdb import KNOTS, lookup

from .conftest import STUDIED_CASES, SPLIT_UNLINK, TREFOIL_ATLAS

PRIMES = [3, 5, 7, 11, 13]


def fox_colorings(diagram, p):
    """Dihedral colorings read straight off the PD code: 2 * over = under_in + under_out."""
    edges = sorted({e for x in diagram.crossings for e in x})
    arc_of = {e: diagram.arc_at(e) for e in edges}
    out = []
    for vals in product(range(p), repeat=diagram.arc_count):
        ok = all(
            (2 * vals[arc_of[b]] - vals[arc_of[a]] - vals[arc_of[c]]) % p == 0
            for a, b, c, _ in diagram.crossings
        )
        if ok:
            out.append(vals)
    return out


@pytest.mark.parametrize(
    "n,m,exc",
    [(-3, 2, InvalidParameters), (0, 0, InvalidParameters), (0, 1, InvalidParameters),
     (5, 5, InvalidParameters), (5, 1, InvalidParameters), (9, 2, NotPrime), (15, 2, NotPrime)],
)
def test_params_rejected(n, m, exc):
    with pytest.raises(exc):
        ColoringParams(n, m)


def test_params_accepted():
    assert ColoringParams(0, 2).op(1, 3) == -1
    assert ColoringParams(7, 3).op(2, 5) == (3 * 2 - 2 * 5) % 7
    assert ColoringParams(0, -1).op(1, 4) == 7


@given(st.sampled_from(PRIMES), st.integers(-20, 20), st.integers(0, 100), st.integers(0, 100), st.integers(0, 100))
def test_quandle_axioms(p, m, a, b, c):
    if m % p in (0, 1):
        return
    q = ColoringParams(p, m)
    a, b, c = a % p, b % p, c % p
    assert q.op(a, a) == a
    # right translation by b is a bijection
    assert len({q.op(x, b) for x in range(p)}) == p
    assert q.op(q.op(a, b), c) == q.op(q.op(a, c), q.op(b, c))


@pytest.mark.parametrize("p", [3, 5, 7])
def test_dihedral_matches_fox(table_knot, p):
    d = table_knot.diagram
    if p ** d.arc_count > 200_000:
        pytest.skip("too many assignments")
    ours = sorted(c.values for c in enumerate_colorings(d, ColoringParams(p, -1)))
    assert ours == fox_colorings(d, p)


def test_trefoil_three_colorings():
    d = parse_pd(TREFOIL_ATLAS)
    cols = list(enumerate_colorings(d, ColoringParams(3, 2)))
    assert len(cols) == 9
    assert sum(c.color_count == 3 for c in cols) == 6


@pytest.mark.parametrize("p,m", [(3, 2), (5, 2), (5, 3), (7, 3), (7, 2), (11, 3)])
def test_census_tracks_m_determinant(table_knot, p, m):
    d = table_knot.diagram
    census = count_colorings(d, ColoringParams(p, m))
    divides = m_determinant(d, m) % p == 0
    assert (census.nontrivial > 0) == divides
    assert census.total == p**census.dimension
    assert census.trivial == p
    assert sum(census.color_usage_histogram.values()) == census.total


@pytest.mark.parametrize("name,p,m", STUDIED_CASES)
def test_enumeration_is_valid_and_ordered(name, p, m):
    d = lookup(name).diagram
    params = ColoringParams(p, m)
    cols = list(enumerate_colorings(d, params))
    assert len(cols) == len(set(cols)) == p * p
    assert all(validate_coloring(d, c) for c in cols)


def test_enumeration_deterministic():
    d = lookup("6_1").diagram
    a = [c.values for c in enumerate_colorings(d, ColoringParams(5, 3))]
    b = [c.values for c in enumerate_colorings(d, ColoringParams(5, 3))]
    assert a == b


def test_budget():
    d = parse_pd(SPLIT_UNLINK)
    with pytest.raises(TooManySolutions):
        list(enumerate_colorings(d, ColoringParams(5, 2), budget=10))
    census = count_colorings(lookup("6_2").diagram, ColoringParams(101, 4), budget=100)
    assert census.total == 101**2 and census.color_usage_histogram is None


def test_brute_force_oracle_small():
    for name in ("3_1", "4_1"):
        d = lookup(name).diagram
        for p in (3, 5, 7):
            for m in range(2, p):
                params = ColoringParams(p, m)
                ours = sorted(c.values for c in enumerate_colorings(d, params))
                assert ours == brute_force_colorings(d, params)


def test_validate_reports_crossing():
    d = parse_pd(TREFOIL_ATLAS)
    params = ColoringParams(3, 2)
    assert validate_coloring(d, Coloring(params, (0, 1, 2)))
    bad = validate_coloring(d, Coloring(params, (0, 0, 1)))
    assert not bad and bad.crossing is not None
    assert not validate_coloring(d, Coloring(params, (0, 1)))
    with pytest.raises(InvalidParameters):
        coloring_from_values(d, params, (0, 0, 1))


def test_integral_colorings_6_1():
    res = integral_colorings(lookup("6_1").diagram, 2)
    assert res.has_nontrivial and res.rank == 2
    assert validate_coloring(lookup("6_1").diagram, res.example)
    assert min(res.example.values) == 0
    assert not integral_colorings(lookup("4_1").diagram, 2).has_nontrivial


def test_integral_coloring_reduces_mod_p():
    d = lookup("6_1").diagram
    ex = integral_colorings(d, 2).example
    for p in (3, 5, 7, 11, 13):
        c = Coloring(ColoringParams(p, 2), ex.values)
        assert validate_coloring(d, c)


def test_modular_wrap_and_polychromatic():
    d = lookup("3_1").diagram
    c = next(nontrivial_colorings(d, ColoringParams(3, 2)))
    assert modular_wrap_check(d, c)
    assert polychromatic_crossings(d, c) == [0, 1, 2]
    ex = integral_colorings(lookup("6_1").diagram, 2).example
    assert not modular_wrap_check(lookup("6_1").diagram, ex)


def test_kh_reports():
    assert kh_check(lookup("8_7").diagram, ColoringParams(23, 2)).injective == 506
    for name, p, m in [("7_2", 5, 2), ("9_12", 11, 3), ("6_1", 5, 3)]:
        assert not kh_check(lookup(name).diagram, ColoringParams(p, m)).admits_injective


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(sorted(KNOTS)), st.sampled_from([3, 5, 7]), st.integers(2, 6), st.data())
def test_linear_combinations_stay_colorings(name, p, m, data):
    if m % p in (0, 1):
        return
    d = lookup(name).diagram
    params = ColoringParams(p, m)
    cols = list(enumerate_colorings(d, params, budget=10**5))
    a = data.draw(st.sampled_from(cols))
    b = data.draw(st.sampled_from(cols))
    s, t = data.draw(st.integers(0, p - 1)), data.draw(st.integers(0, p - 1))
    combo = Coloring(params, tuple(s * x + t * y for x, y in zip(a.values, b.values)))
    assert validate_coloring(d, combo)


def test_json_shapes():
    c = Coloring(ColoringParams(5, 3), (7, 1, 2))
    assert c.values == (2, 1, 2)
    assert c.to_json() == {"n": 5, "m": 3, "arcs": {"0": 2, "1": 1, "2": 2}}
    census = count_colorings(lookup("3_1").diagram, ColoringParams(3, 2))
    assert census.to_json()["color_usage_histogram"] == {"1": 3, "3": 6}
    assert census.min_nontrivial_colors == 3
