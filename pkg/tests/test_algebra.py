import numpy as np
import pytest
from conftest import a2, basic_dihedral, field, group_alg, line, trunc

from stautilt.algebra import (
    QuiverPresentation,
    block_algebra,
    brauer_line,
    brauer_tree_algebra,
    cartan_matrix,
    central_blocks,
    condense_basic,
    from_quiver,
    gabriel_quiver,
    is_split,
    is_symmetric,
    primitive_idempotents,
    radical,
    truncated_polynomial,
)
from stautilt.algebra.core import from_structure_constants
from stautilt.errors import NotAdmissible
from stautilt.grouprep import cyclic, inner_automorphism, kG, semidirect, symmetric


def _loop(rel_len, cap, p=2):
    q = QuiverPresentation(("1",), (("x", "1", "1"),), (((1, ("x",) * rel_len),),))
    return from_quiver(q, field(p), cap)


# ---------------------------------------------------------------- from_quiver


def test_loop_with_square_relation():
    A = _loop(2, 8)
    assert A.dim == 2
    J = radical(A)
    assert J.shape[0] == 1
    x = J[0]
    assert not np.any(A.mul(x, x))


def test_a2_quiver_paths():
    A = a2(3)
    assert A.dim == 3  # e1, e2, a
    assert len(primitive_idempotents(A)) == 2


def test_cap_too_small_not_admissible():
    with pytest.raises(NotAdmissible):
        _loop(3, 2)


# ---------------------------------------------------------------- Brauer trees


@pytest.mark.parametrize("p", [2, 3, 5])
def test_single_edge_matches_cyclic_group(p):
    F = field(p)
    A = brauer_tree_algebra(brauer_line(1, p - 1), F)
    B = kG(cyclic(p), F)
    assert A.dim == B.dim == p
    assert cartan_matrix(A).tolist() == cartan_matrix(B).tolist() == [[p]]


@pytest.mark.parametrize("m", [1, 2, 3])
def test_single_edge_is_truncated_polynomial(m):
    A = brauer_tree_algebra(brauer_line(1, m), field(3))
    assert A.dim == m + 1
    assert cartan_matrix(A).tolist() == cartan_matrix(truncated_polynomial(field(3), m + 1)).tolist()


def test_line_two_edges_cartan():
    A = line(2, 1, 3)
    assert A.dim == 6
    assert cartan_matrix(A).tolist() == [[2, 1], [1, 2]]


@pytest.mark.parametrize("p,n", [(3, 3), (5, 5), (3, 9)])
def test_dihedral_basic_algebra_matches_brauer_line(p, n):
    B = basic_dihedral(n, p)
    L = line(2, (n - 1) // 2, p)
    assert B.dim == L.dim
    assert cartan_matrix(B).tolist() == cartan_matrix(L).tolist()


# ---------------------------------------------------------------- group algebras and structure


def test_c2_over_f2_local():
    A = kG(cyclic(2), field(2))
    assert A.dim == 2
    assert len(primitive_idempotents(A)) == 1
    # radical spanned by 1 + g
    assert radical(A).tolist() == [[1, 1]]


def test_s3_over_f3_one_block():
    A = group_alg("S", 3, 3)
    assert A.dim == 6
    assert len(central_blocks(A)) == 1
    assert radical(A).shape[0] == 4


def test_s3_over_f5_semisimple():
    assert radical(group_alg("S", 3, 5)).shape[0] == 0


def test_truncated_radical():
    A = trunc(2, 2)
    J = radical(A)
    assert J.shape[0] == 1
    assert not np.any(A.mul(J[0], J[0]))


def test_local_group_algebra_single_idempotent():
    A = kG(cyclic(3), field(3))
    es = primitive_idempotents(A)
    assert len(es) == 1
    assert np.array_equal(es[0], A.unit)


def test_two_characters_of_c2_over_f5():
    A = kG(cyclic(2), field(5))
    es = {tuple(int(c) for c in e) for e in primitive_idempotents(A)}
    # (1 + g)/2 and (1 - g)/2 with 1/2 = 3 in F_5
    assert es == {(3, 3), (3, 2)}
    assert len(central_blocks(A)) == 2


def test_a2_idempotents_are_vertices():
    A = a2(3)
    for e in primitive_idempotents(A):
        assert np.array_equal(A.mul(e, e), e)
        assert int(np.count_nonzero(e)) == 1


def test_local_algebra_one_block():
    assert len(central_blocks(trunc(3, 4))) == 1


def test_block_algebra_of_single_block():
    A = group_alg("S", 3, 3)
    assert block_algebra(A, central_blocks(A)[0]).dim == A.dim


def test_block_dims_c2_and_s3_over_f5():
    A = kG(cyclic(2), field(5))
    assert sorted(block_algebra(A, b).dim for b in central_blocks(A)) == [1, 1]
    S = group_alg("S", 3, 5)
    assert sorted(block_algebra(S, b).dim for b in central_blocks(S)) == [1, 1, 4]


def test_condense_basic_fixed_point():
    A = group_alg("S", 3, 3)
    c = condense_basic(A)
    assert c.basic is A and set(c.mults) == {1}


def test_condense_semisimple_s3():
    c = condense_basic(group_alg("S", 3, 5))
    assert c.basic.dim == 3
    assert sorted(c.mults) == [1, 1, 2]


def _check_symmetrizing(A, lam):
    prods = A.mult  # b_i b_j coordinates
    vals = np.einsum("ijk,k->ij", prods, lam) % A.field.p if A.field.m == 1 else None
    if vals is not None:
        assert np.array_equal(vals, vals.T)


def test_group_algebra_symmetric():
    A = group_alg("S", 3, 3)
    lam = is_symmetric(A)
    assert lam is not None
    _check_symmetrizing(A, lam)


def test_a2_not_symmetric():
    assert is_symmetric(a2(3)) is None


def test_field_symmetric():
    F = field(5)
    A = from_structure_constants(F, [[[1]]], [1])
    assert is_symmetric(A) is not None


def test_nonsplit_detected():
    ok, witness = is_split(kG(cyclic(3), field(2)))
    assert not ok
    assert witness is not None


# ---------------------------------------------------------------- Gabriel quivers


def test_gabriel_dihedral():
    Q = gabriel_quiver(basic_dihedral(3, 3))
    assert len(Q.vertices) == 2
    a, b = Q.vertices
    assert Q.arrow_count(a, b) == Q.arrow_count(b, a) == 1
    assert Q.arrow_count(a, a) == Q.arrow_count(b, b) == 0


def test_gabriel_semidirect_cyclic_q_has_loops():
    S3 = symmetric(3)
    r = next(x for x in range(6) if S3.element_order(x) == 3)
    Gt = semidirect(S3, cyclic(3), [inner_automorphism(S3, r)])
    Q = gabriel_quiver(condense_basic(kG(Gt, field(3))).basic)
    a, b = Q.vertices
    assert Q.arrow_count(a, b) == Q.arrow_count(b, a) == 1
    assert Q.arrow_count(a, a) == Q.arrow_count(b, b) == 1


def test_gabriel_semisimple_no_arrows():
    Q = gabriel_quiver(condense_basic(group_alg("S", 3, 5)).basic)
    assert Q.arrows == ()
