import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knotcolor.errors import IndexOutOfRange, NonSquare, NotPrime
from knotcolor.laurent import ONE, T, LaurentPoly, parse_coeffs
from knotcolor.linalg import (
    det_cofactor,
    det_int,
    det_poly,
    evaluate,
    identity,
    invariant_factors_by_minors,
    kernel_basis_int,
    mat_mul,
    minor,
    nullspace_mod_p,
    rank_mod_p,
    smith_normal_form,
    zeros,
)

# a first minor of the figure-eight Alexander matrix, as printed with the worked example
M1 = [[T, LaurentPoly(), -ONE], [T, -ONE, ONE - T], [LaurentPoly(), ONE - T, -ONE]]


def square(n, lo=-3, hi=3):
    return st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n)


matrices = st.integers(1, 5).flatmap(square)


def test_det_int_examples():
    assert det_int([[2, -1], [-1, 2]]) == 3
    for n in range(0, 6):
        assert det_int(identity(n)) == 1
    assert abs(det_int(evaluate(M1, -1))) == 5


def test_det_int_rejects_non_square():
    with pytest.raises(NonSquare):
        det_int([[1, 2, 3], [4, 5, 6]])


def test_det_int_with_zero_pivots():
    assert det_int([[0, 1], [1, 0]]) == -1
    assert det_int([[0, 0], [1, 1]]) == 0
    assert det_int([[0, 2, 1], [3, 0, 0], [1, 1, 0]]) == det_cofactor([[0, 2, 1], [3, 0, 0], [1, 1, 0]])


@settings(max_examples=1000)
@given(matrices)
def test_det_int_matches_cofactor_oracle(M):
    assert det_int(M) == det_cofactor(M)


def test_det_poly_examples():
    assert det_poly(M1) == -T * parse_coeffs([1, -3, 1])
    assert det_poly([[T]]) == T
    assert det_poly([[T, ONE - T], [ONE - T, T]]) == parse_coeffs([-1, 2])
    assert det_poly([]) == ONE


@given(
    st.integers(1, 4).flatmap(
        lambda n: st.lists(
            st.lists(st.lists(st.integers(-2, 2), max_size=3), min_size=n, max_size=n),
            min_size=n,
            max_size=n,
        )
    ),
    st.integers(-4, 4),
)
def test_det_poly_commutes_with_evaluation(raw, t):
    M = [[LaurentPoly(cs) for cs in row] for row in raw]
    assert det_poly(M)(t) == det_int(evaluate(M, t))


def test_minor_shapes():
    I3 = identity(3)
    assert minor(I3, 0, 0) == [[1, 0], [0, 1]]
    assert minor([[1, 2, 3], [4, 5, 6], [7, 8, 9]], 2, 2) == [[1, 2], [4, 5]]
    assert minor([[1, 2, 3], [4, 5, 6], [7, 8, 9]], 1, 1) == [[1, 3], [7, 9]]
    with pytest.raises(IndexOutOfRange):
        minor(I3, 3, 0)


def test_smith_examples():
    assert smith_normal_form([[2, 0], [0, 3]]) == [1, 6]
    assert smith_normal_form(zeros(3, 2)) == [0, 0]
    # trefoil Fox matrix: each row 2 at the over-arc, -1 at the under-arcs
    fox = [[-1, 2, -1], [-1, -1, 2], [2, -1, -1]]
    assert smith_normal_form(fox) == [1, 3, 0]


@settings(max_examples=300)
@given(st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r))))
def test_smith_matches_minor_gcds(M):
    diag = smith_normal_form(M)
    assert diag == invariant_factors_by_minors(M)
    nz = [d for d in diag if d]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert all(d >= 0 for d in diag)


def _random_unimodular(n, rng):
    U = identity(n)
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            U = [[-x for x in U[0]]]
            continue
        k = rng.randint(-2, 2)
        U[i] = [a + k * b for a, b in zip(U[i], U[j])]
    return U


def test_smith_invariant_under_unimodular_changes():
    rng = random.Random(7)
    for _ in range(200):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        M = [[rng.randint(-5, 5) for _ in range(c)] for _ in range(r)]
        N = mat_mul(mat_mul(_random_unimodular(r, rng), M), _random_unimodular(c, rng))
        assert smith_normal_form(N) == smith_normal_form(M)


def test_smith_transforms():
    rng = random.Random(3)
    for _ in range(100):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        M = [[rng.randint(-5, 5) for _ in range(c)] for _ in range(r)]
        diag, U, V = smith_normal_form(M, transforms=True)
        D = mat_mul(mat_mul(U, M), V)
        for i in range(r):
            for j in range(c):
                assert D[i][j] == (diag[i] if i == j else 0)
        assert abs(det_int(U)) == 1 and abs(det_int(V)) == 1


def test_integer_kernel():
    fox = [[-1, 2, -1], [-1, -1, 2], [2, -1, -1]]
    basis = kernel_basis_int(fox)
    assert len(basis) == 1
    assert len(set(basis[0])) == 1


def test_nullspace_examples():
    fox = [[-1, 2, -1], [-1, -1, 2], [2, -1, -1]]
    assert len(nullspace_mod_p(fox, 3)) == 2
    assert rank_mod_p(fox, 3) == 1
    assert nullspace_mod_p(identity(4), 7) == []
    assert rank_mod_p(identity(5), 11) == 5
    assert rank_mod_p(zeros(3, 3), 5) == 0
    with pytest.raises(NotPrime):
        nullspace_mod_p(fox, 9)


@settings(max_examples=300)
@given(
    st.integers(1, 5).flatmap(lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r))),
    st.sampled_from([2, 3, 5, 7, 11]),
)
def test_nullspace_vectors_and_dimension(M, p):
    basis = nullspace_mod_p(M, p)
    cols = len(M[0])
    for v in basis:
        assert all(sum(a * x for a, x in zip(row, v)) % p == 0 for row in M)
    assert len(basis) + rank_mod_p(M, p) == cols


def _mat_nm(N, m, rng):
    rows = []
    for _ in range(N):
        row = [0] * N
        cols = rng.sample(range(N), min(N, 3))
        for value, j in zip((-m, m - 1, 1), cols):
            if rng.random() < 0.8:
                row[j] = value
        rows.append(row)
    return rows


def test_mat_nm_determinant_bound():
    rng = random.Random(11)
    checked = 0
    for _ in range(2000):
        N = rng.randint(1, 6)
        m = rng.randint(-5, 6)
        X = _mat_nm(N, m, rng)
        M = max(abs(m), abs(m - 1))
        assert abs(det_int(X)) <= M**N
        checked += 1
    assert checked >= 1000
