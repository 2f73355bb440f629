import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as hs

from stautilt.errors import InvalidField
from stautilt.exactla import GF, Mat, factor_poly, row_reduce, solve
from stautilt.exactla import linalg as la
from stautilt.exactla import poly as pl

# ---------------------------------------------------------------- row_reduce


def test_identity_full_rank_empty_kernel():
    F = GF(3)
    r = row_reduce(Mat.identity(F, 3))
    assert r.rank == 3
    assert r.kernel_basis.rows == 0


def test_rank_one_with_kernel_vector():
    F = GF(5)
    r = row_reduce(Mat(F, np.array([[1, 2], [2, 4]])))
    assert r.rank == 1
    # hand elimination: x + 2y = 0 gives y = 1, x = 3
    assert r.kernel_basis.entries == (3, 1)


def test_zero_matrix_full_kernel():
    r = row_reduce(Mat.zeros(GF(7), 2, 4))
    assert r.rank == 0
    assert r.kernel_basis.rows == 4


# ---------------------------------------------------------------- solve


def test_solve_identity():
    F = GF(7)
    b = Mat(F, np.array([[3], [5], [6]]))
    assert solve(Mat.identity(F, 3), b) == b


def test_solve_inconsistent():
    F = GF(5)
    assert solve(Mat(F, np.array([[1, 1], [2, 2]])), Mat(F, np.array([[1], [3]]))) is None


def test_solve_zero_system_picks_zero():
    F = GF(3)
    x = solve(Mat.zeros(F, 2, 3), Mat.zeros(F, 2, 1))
    assert x == Mat.zeros(F, 3, 1)


def test_mixed_fields_rejected():
    with pytest.raises(InvalidField):
        Mat.identity(GF(3), 2) @ Mat.identity(GF(5), 2)


# ---------------------------------------------------------------- factoring


def test_difference_of_squares():
    # x^2 - 1 = (x + 1)(x + 2) over F_3; coefficients low to high
    assert factor_poly(GF(3), [2, 0, 1]) == [((1, 1), 1), ((2, 1), 1)]


def test_x2_plus_1_irreducible_over_f3():
    F = GF(3)
    assert all(pl.evaluate(F, [1, 0, 1], x) != 0 for x in range(3))  # oracle: no root
    assert pl.is_irreducible(F, [1, 0, 1])


def test_x3_minus_x_splits():
    fs = factor_poly(GF(3), [0, 2, 0, 1])
    assert [tuple(f) for f, _ in fs] == [(0, 1), (1, 1), (2, 1)]
    assert all(k == 1 for _, k in fs)


def _monic_irreducibles(F, d):
    """Brute force: monic polynomials of degree d that are not products of lower-degree monics."""
    monics = {k: [tuple(c) + (1,) for c in itertools.product(range(F.q), repeat=k)] for k in range(1, d + 1)}
    reducible = set()
    for a in range(1, d):
        for f in monics[a]:
            for g in monics[d - a]:
                reducible.add(tuple(pl.mul(F, list(f), list(g))))
    return [f for f in monics[d] if f not in reducible]


@pytest.mark.parametrize("q,d", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2), (5, 2)])
def test_irreducibility_matches_brute_force(q, d):
    F = GF.of_order(q)
    irr = set(_monic_irreducibles(F, d))
    for c in itertools.product(range(q), repeat=d):
        f = list(c) + [1]
        assert pl.is_irreducible(F, f) == (tuple(f) in irr)


polys = hs.tuples(hs.sampled_from([2, 3, 4, 5, 7, 9]), hs.lists(hs.integers(0, 10**6), min_size=2, max_size=9))


@settings(max_examples=1000)
@given(polys)
def test_factors_multiply_back(data):
    q, coeffs = data
    F = GF.of_order(q)
    f = pl.trim([c % q for c in coeffs])
    if not f or pl.deg(f) < 1:
        return
    prod = [int(f[-1])]
    for g, k in factor_poly(F, f):
        assert g[-1] == 1
        for _ in range(k):
            prod = pl.mul(F, prod, list(g))
    assert pl.trim(prod) == f


# ---------------------------------------------------------------- linear algebra properties


def _span_size(F, a):
    vecs = set()
    for c in itertools.product(range(F.q), repeat=a.shape[0]):
        vecs.add(tuple(F.matmul(np.array(c), a).tolist()) if a.shape[0] else ())
    return len(vecs)


mats = hs.tuples(
    hs.sampled_from([2, 3, 4, 5]),
    hs.integers(1, 4),
    hs.integers(1, 5),
    hs.lists(hs.integers(0, 100), min_size=20, max_size=20),
)


@given(mats)
def test_rank_equals_log_of_span_size(data):
    q, r, c, raw = data
    F = GF.of_order(q)
    a = np.array(raw[: r * c], dtype=np.int64).reshape(r, c) % q
    assert q ** la.rank(F, a) == _span_size(F, a)


@given(mats)
def test_rank_of_transpose(data):
    q, r, c, raw = data
    F = GF.of_order(q)
    a = np.array(raw[: r * c], dtype=np.int64).reshape(r, c) % q
    assert la.rank(F, a) == la.rank(F, a.T)


@given(mats)
def test_kernel_is_annihilated(data):
    q, r, c, raw = data
    F = GF.of_order(q)
    a = np.array(raw[: r * c], dtype=np.int64).reshape(r, c) % q
    rr = row_reduce(Mat(F, a))
    K = rr.kernel_basis.data
    assert K.shape[0] == c - rr.rank
    if K.size:
        assert not np.any(F.matmul(a, K.T))


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_field_axioms_exhaustive(q):
    F = GF.of_order(q)
    x = np.arange(q)
    a, b, c = np.meshgrid(x, x, x, indexing="ij")
    assert np.array_equal(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c)))
    assert np.array_equal(F.add(F.add(a, b), c), F.add(a, F.add(b, c)))
    assert np.array_equal(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)))
    assert np.array_equal(F.mul(a, b), F.mul(b, a))
    nz = x[1:]
    assert np.all(F.mul(nz, F.inv(nz)) == 1)


def test_reducible_modulus_rejected():
    with pytest.raises(InvalidField):
        GF(2, 2, modulus=[1, 0, 1])  # x^2 + 1 = (x + 1)^2 over F_2
