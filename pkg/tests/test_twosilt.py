import numpy as np
import pytest
from conftest import a2, group_alg, line, trunc

from stautilt.errors import BadSummand
from stautilt.modrep import simple
from stautilt.tautilt import enumerate_pairs, regular_pair, same_pair, zero_pair
from stautilt.tautilt.pair import SupportPair
from stautilt.twosilt import (
    direct_sum,
    from_pair,
    gkey,
    hom_k,
    is_silting,
    regular_silting,
    shifted_regular_silting,
    silt_geq,
    silt_mutate,
    silting_closure,
    stalk,
    summands,
    to_pair,
    verify_square,
)

# ---------------------------------------------------------------- hom_k


def test_hom_k_stalk_shift_one_vanishes():
    A = line(2, 1, 3)
    x = stalk(A, (0, 1), 0)
    assert hom_k(x, x, 1).dim == 0


@pytest.mark.parametrize("alg", ["line", "trunc", "a2"])
def test_hom_k_minus_one_to_zero(alg):
    A = {"line": lambda: line(2, 1, 3), "trunc": lambda: trunc(3, 2), "a2": lambda: a2(3)}[alg]()
    n = len(regular_silting(A).deg_0)
    x = stalk(A, tuple(range(n)), -1)
    y = stalk(A, tuple(range(n)), 0)
    assert hom_k(x, y, 1).dim == A.dim


def test_hom_k_identity_nonzero():
    A = line(2, 1, 3)
    for x in (stalk(A, (0,), 0), stalk(A, (1,), -1), from_pair(SupportPair(A, (simple(A, 0),), (1,)))):
        assert hom_k(x, x, 0).dim >= 1


def test_hom_k_higher_shift_zero():
    A = line(2, 1, 3)
    x = stalk(A, (0, 1), -1)
    assert hom_k(x, x, 2).dim == 0


# ---------------------------------------------------------------- silting


def test_regular_stalks_silting():
    A = line(2, 1, 3)
    assert is_silting(regular_silting(A)).silting
    assert is_silting(shifted_regular_silting(A)).silting


def test_sum_of_both_stalks_not_presilting():
    A = line(2, 1, 3)
    x = direct_sum([stalk(A, (0, 1), -1), stalk(A, (0, 1), 0)])
    v = is_silting(x)
    assert not v.presilting and not v.silting


# ---------------------------------------------------------------- correspondence


def test_from_pair_extremes():
    A = line(2, 1, 3)
    x = from_pair(regular_pair(A))
    assert sorted(x.deg_0) == [0, 1] and x.deg_m1 == ()
    y = from_pair(zero_pair(A))
    assert sorted(y.deg_m1) == [0, 1] and y.deg_0 == ()


def test_from_pair_simple_with_projective():
    A = line(2, 1, 3)
    x = from_pair(SupportPair(A, (simple(A, 0),), (1,)))
    # Omega(S0) has top S1, so P1 = P(1); the extra projective adds a second P(1)
    assert sorted(x.deg_m1) == [1, 1]
    assert x.deg_0 == (0,)
    d = x.module_matrix()
    assert np.any(d)
    back = to_pair(x)
    assert same_pair(back, SupportPair(A, (simple(A, 0),), (1,)))
    assert back.p_labels == (1,)


def test_round_trip_all_nodes():
    A = line(2, 1, 3)
    for p in enumerate_pairs(A).nodes:
        assert same_pair(to_pair(from_pair(p)), p)


# ---------------------------------------------------------------- order and mutation


def test_silt_geq_extremes():
    A = line(2, 1, 3)
    top, bot = regular_silting(A), shifted_regular_silting(A)
    closure = list(silting_closure(A).values())
    assert all(silt_geq(top, y) for y in closure)
    assert [gkey(y) == gkey(bot) for y in closure] == [silt_geq(bot, y) for y in closure]


def test_silt_geq_matches_geq_on_dihedral():
    from stautilt.tautilt import geq

    A = line(2, 1, 3)
    nodes = enumerate_pairs(A).nodes
    xs = [from_pair(p) for p in nodes]
    for i, p in enumerate(nodes):
        for j, q in enumerate(nodes):
            assert silt_geq(xs[i], xs[j]) == geq(p, q)


def test_silt_mutate_double_is_identity():
    A = line(2, 1, 3)
    x = regular_silting(A)
    for k in range(len(summands(x))):
        y = silt_mutate(x, k)
        assert gkey(y) != gkey(x)
        back = {gkey(silt_mutate(y, j)) for j in range(len(summands(y)))}
        assert gkey(x) in back


def test_silt_mutate_matches_pair_mutation():
    from stautilt.tautilt import mutate

    A = line(2, 1, 3)
    top = regular_pair(A)
    x = from_pair(top)
    got = {gkey(silt_mutate(x, k)) for k in range(2)}
    want = {gkey(from_pair(mutate(top, k))) for k in range(2)}
    assert got == want


def test_silt_mutate_bad_summand():
    with pytest.raises(BadSummand):
        silt_mutate(regular_silting(line(2, 1, 3)), 7)


def test_closure_dihedral_six():
    assert len(silting_closure(line(2, 1, 3))) == 6


# ---------------------------------------------------------------- square


@pytest.mark.parametrize(
    "make,n",
    [(lambda: trunc(3, 2), 2), (lambda: line(2, 1, 3), 6), (lambda: a2(3), 5), (lambda: group_alg("S", 3, 3), 6)],
)
def test_square_commutes(make, n):
    rep = verify_square(make())
    assert rep.ok, rep.witnesses
    assert rep.nodes == rep.silting_nodes == n

