import numpy as np
import pytest
from conftest import a2, field, group_alg, line, trunc

from stautilt.algebra import condense_basic
from stautilt.errors import AlgebraMismatch
from stautilt.exactla import linalg as la
from stautilt.grouprep import cyclic, kG, trivial_module
from stautilt.modrep import (
    change_basis,
    condense_module,
    decompose,
    direct_sum,
    hom_dim,
    hom_space,
    is_indecomposable,
    is_isomorphic,
    is_projective,
    min_presentation,
    projective,
    projective_cover,
    projective_indecomposables,
    radical_and_top,
    regular_module,
    simple,
    simples,
    syzygy,
    tau,
    trace_in,
    zero_module,
)


def _c2_f2():
    G = cyclic(2)
    return kG(G, field(2)), trivial_module(G, field(2))


def _a2_labels():
    """(source, sink) labels of A_2: the source has the 2-dimensional projective."""
    A = a2(3)
    dims = [projective(A, i).dim for i in range(2)]
    src = dims.index(2)
    return A, src, 1 - src


def _iso(M, N):
    return is_isomorphic(M, N) is not None


# ---------------------------------------------------------------- Hom


def test_hom_regular_regular():
    A = line(2, 1, 3)
    R = regular_module(A)
    assert hom_dim(R, R) == A.dim


def test_hom_between_simples():
    A = line(2, 1, 3)
    S0, S1 = simples(A)
    assert hom_dim(S0, S1) == 0
    assert hom_dim(S0, S0) == 1
    assert hom_dim(S1, S1) == 1


def test_hom_basis_intertwines():
    A = line(2, 1, 3)
    P, S = projective(A, 0), simple(A, 0)
    H = hom_space(P, S)
    F = A.field
    for f in H.basis:
        for g in A.gens:
            assert np.array_equal(F.matmul(f, P.act(g)), F.matmul(S.act(g), f))


def test_hom_algebra_mismatch():
    with pytest.raises(AlgebraMismatch):
        hom_space(simple(line(2, 1, 3), 0), simple(a2(3), 0))


# ---------------------------------------------------------------- radical and top


def test_semisimple_radical_zero():
    S = condense_basic(group_alg("S", 3, 5)).basic
    R = regular_module(S)
    rt = radical_and_top(R)
    assert rt.rad.dim == 0 and rt.top.dim == R.dim


def test_truncated_regular_radical():
    A = trunc(2, 2)
    rt = radical_and_top(regular_module(A))
    assert rt.rad.dim == 1 and rt.top.dim == 1
    assert rt.top_multiplicities == (1,)


def test_line_projective_uniserial():
    A = line(2, 1, 3)
    P = projective(A, 0)
    rt = radical_and_top(P)
    assert rt.top_multiplicities == (1, 0)
    assert radical_and_top(rt.rad).top_multiplicities == (0, 1)
    assert P.dim == 3


# ---------------------------------------------------------------- projectives


def test_semisimple_projectives_are_simples():
    S = condense_basic(group_alg("S", 3, 5)).basic
    for P, T in zip(projective_indecomposables(S), simples(S)):
        assert _iso(P, T)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_cyclic_p_group_single_projective(p):
    A = kG(cyclic(p), field(p))
    Ps = projective_indecomposables(A)
    assert len(Ps) == 1 and Ps[0].dim == p
    assert _iso(Ps[0], regular_module(A))


def test_s3_projectives_dim_three():
    A = group_alg("S", 3, 3)
    assert [P.dim for P in projective_indecomposables(A)] == [3, 3]


def test_cover_of_projective():
    A = line(2, 1, 3)
    P = projective(A, 1)
    pc = projective_cover(P)
    assert pc.labels == (1,) and _iso(pc.module, P)


def test_cover_of_simple_and_sum():
    A = line(2, 1, 3)
    S = simple(A, 0)
    assert projective_cover(S).labels == (0,)
    assert projective_cover(direct_sum([S, S])).labels == (0, 0)


# ---------------------------------------------------------------- presentations


def test_projective_has_no_p1():
    A = line(2, 1, 3)
    assert min_presentation(projective(A, 0)).p1 == ()


def test_c2_trivial_presentation():
    _, k = _c2_f2()
    pres = min_presentation(k)
    assert len(pres.p0) == 1 and len(pres.p1) == 1
    om, _ = syzygy(k)
    assert _iso(om, k)


def test_line_syzygy_of_simple():
    A = line(2, 1, 3)
    om, _ = syzygy(simple(A, 0))
    assert om.dim == 2
    rt = radical_and_top(om)
    assert rt.top_multiplicities == (0, 1)
    assert rt.rad.dim == 1 and _iso(rt.rad, simple(A, 0))


# ---------------------------------------------------------------- tau


def test_tau_projective_zero():
    assert tau(projective(line(2, 1, 3), 0)).dim == 0


def test_tau_a2():
    A, src, snk = _a2_labels()
    assert _iso(tau(simple(A, src)), simple(A, snk))


def test_tau_c2_trivial():
    _, k = _c2_f2()
    assert _iso(tau(k), k)


# ---------------------------------------------------------------- decompose and iso


def test_decompose_indecomposable_fixpoint():
    A = line(2, 1, 3)
    P = projective(A, 0)
    parts = decompose(P)
    assert len(parts) == 1 and parts[0][1] == 1 and _iso(parts[0][0], P)


def test_decompose_regular_line():
    A = line(2, 1, 3)
    parts = decompose(regular_module(A))
    assert sorted(m for _, m in parts) == [1, 1]
    got = [U for U, _ in parts]
    for i in range(2):
        assert sum(_iso(U, projective(A, i)) for U in got) == 1


def test_decompose_with_multiplicities():
    A = line(2, 1, 3)
    k, P = simple(A, 0), projective(A, 0)
    parts = decompose(direct_sum([k, P, k]))
    mults = sorted((U.dim, m) for U, m in parts)
    assert mults == [(1, 2), (3, 1)]


def test_iso_self_identity():
    P = projective(line(2, 1, 3), 0)
    T = is_isomorphic(P, P)
    assert T is not None and la.rank(P.field, T) == P.dim


def test_iso_distinct_simples():
    A = line(2, 1, 3)
    assert is_isomorphic(simple(A, 0), simple(A, 1)) is None


def test_iso_after_base_change(rng):
    A = line(2, 1, 3)
    M, _ = syzygy(simple(A, 0))  # uniserial of length 2
    F = A.field
    while True:
        T = rng.integers(0, 3, size=(M.dim, M.dim))
        if la.rank(F, T) == M.dim:
            break
    N = change_basis(M, T)
    X = is_isomorphic(M, N)
    assert X is not None
    for g in A.gens:
        assert np.array_equal(F.matmul(X, M.act(g)), F.matmul(N.act(g), X))


# ---------------------------------------------------------------- trace


def test_trace_of_regular_is_everything():
    A = line(2, 1, 3)
    N = direct_sum([simple(A, 0), projective(A, 1)])
    T, _ = trace_in(regular_module(A), N)
    assert T.dim == N.dim


def test_trace_of_simple_in_c2():
    A, k = _c2_f2()
    T, rows = trace_in(k, regular_module(A))
    assert T.dim == 1
    assert rows.tolist() == [[1, 1]]


def test_trace_of_zero():
    A = line(2, 1, 3)
    T, _ = trace_in(zero_module(A), projective(A, 0))
    assert T.dim == 0


# ---------------------------------------------------------------- Morita transport


def test_condense_regular_and_simple():
    A = group_alg("S", 3, 5)
    cond = condense_basic(A)
    R = condense_module(regular_module(A), cond)
    parts = decompose(R)
    B = cond.basic
    mults = {}
    for U, m in parts:
        i = next(j for j in range(3) if _iso(U, projective(B, j)))
        mults[i] = m
    assert [mults[i] for i in range(3)] == list(cond.mults)
    for i, S in enumerate(simples(A)):
        assert _iso(condense_module(S, cond), simple(B, i))


def test_projectivity_and_indecomposability():
    A = line(2, 1, 3)
    assert is_projective(projective(A, 0))
    assert not is_projective(simple(A, 0))
    assert is_indecomposable(projective(A, 0))
    assert not is_indecomposable(regular_module(A))


def test_zero_module_top_and_quotient():
    A = line(2, 1, 3)
    rt = radical_and_top(zero_module(A))
    assert rt.rad.dim == 0 and rt.top.dim == 0
    assert projective_cover(zero_module(A)).labels == ()
