import numpy as np
import pytest
from conftest import field

from stautilt.algebra import central_blocks, simple_dimensions
from stautilt.errors import BadAction, BadSubgroup, NotNormal, PreconditionFailed
from stautilt.grouprep import (
    Instance,
    aut_group_small,
    block_inertia_group,
    conjugate_module,
    covering_blocks,
    cyclic,
    dihedral,
    direct_product,
    group_from_permutations,
    induce,
    inertia_group,
    inner_automorphism,
    kG,
    principal_block,
    regular_group_module,
    restrict,
    semidirect,
    symmetric,
    trivial_module,
    verify,
)
from stautilt.modrep import (
    decompose,
    direct_sum,
    is_indecomposable,
    is_isomorphic,
    simples,
)


def _iso(M, N):
    return is_isomorphic(M, N) is not None


def _order3_subgroup(G):
    x = next(g for g in range(G.order) if G.element_order(g) == 3)
    return G.subgroup([x])


def _s3_sd_c3():
    S3 = symmetric(3)
    r = next(x for x in range(6) if S3.element_order(x) == 3)
    return semidirect(S3, cyclic(3), [inner_automorphism(S3, r)])


# ---------------------------------------------------------------- groups


def test_s3_from_cycles():
    G = group_from_permutations(["(1 2 3)", "(1 2)"])
    assert G.order == 6
    assert not G.is_abelian()


def test_direct_product_order():
    G = direct_product(symmetric(3), cyclic(3))
    assert G.order == 18


def test_semidirect_inner_action():
    D = direct_product(symmetric(3), cyclic(3))
    Gt = _s3_sd_c3()
    assert Gt.order == 18 and not Gt.is_abelian()
    assert not np.array_equal(Gt.table, D.table)


def test_semidirect_rejects_non_automorphism():
    S3 = symmetric(3)
    with pytest.raises(BadAction):
        semidirect(S3, cyclic(3), [[0, 2, 1, 3, 4, 5]])


@pytest.mark.parametrize("G,n", [(cyclic(3), 2), (symmetric(3), 6), (dihedral(3), 6), (dihedral(5), 20)])
def test_automorphism_counts(G, n):
    assert len(aut_group_small(G)) == n


def test_bad_subgroup():
    G = symmetric(3)
    r = next(x for x in range(6) if G.element_order(x) == 3)
    with pytest.raises(BadSubgroup):
        G.subgroup_from_elements([G.identity, r])  # missing r^2


# ---------------------------------------------------------------- restriction and induction


def test_restrict_regular_to_c3():
    G = symmetric(3)
    F = field(3)
    H = _order3_subgroup(G)
    R = restrict(regular_group_module(G, F), H)
    C, _ = H.as_group()
    assert R.dim == 6
    assert _iso(R, direct_sum([regular_group_module(C, F)] * 2))


def test_restrict_trivial_stays_trivial():
    G = symmetric(3)
    H = _order3_subgroup(G)
    C, _ = H.as_group()
    assert _iso(restrict(trivial_module(G, field(3)), H), trivial_module(C, field(3)))


def test_induce_c3_to_s3_over_f2():
    G = symmetric(3)
    F = field(2)
    H = _order3_subgroup(G)
    C, _ = H.as_group()
    M = induce(trivial_module(C, F), H)
    assert M.dim == 2
    # the augmentation module of S3/C3 in characteristic 2 is uniserial k|k
    assert is_indecomposable(M)


def test_induce_c3_to_c9_green():
    G = cyclic(9)
    F = field(3)
    H = _order3_subgroup(G)
    C, _ = H.as_group()
    M = induce(trivial_module(C, F), H)
    assert M.dim == 3 and is_indecomposable(M)


def test_induce_restrict_index_scaling():
    G = symmetric(3)
    F = field(5)
    H = _order3_subgroup(G)
    C, _ = H.as_group()
    M = induce(regular_group_module(C, F), H)
    assert _iso(M, regular_group_module(G, F))


# ---------------------------------------------------------------- conjugation and inertia


def test_conjugate_by_inner_element():
    G = symmetric(3)
    F = field(2, 2)
    N = _order3_subgroup(G)
    C, _ = N.as_group()
    for S in simples(kG(C, F)):
        for g in N.elements:
            assert _iso(conjugate_module(g, S, N), S)


def test_conjugate_needs_normal():
    G = symmetric(3)
    t = next(x for x in range(6) if G.element_order(x) == 2)
    H = G.subgroup([t])
    C, _ = H.as_group()
    with pytest.raises(NotNormal):
        conjugate_module(next(x for x in range(6) if G.element_order(x) == 3), trivial_module(C, field(3)), H)


def test_principal_block_full_inertia():
    G = symmetric(3)
    N = _order3_subgroup(G)
    C, _ = N.as_group()
    b = principal_block(kG(C, field(2, 2)))
    assert block_inertia_group(b, N).order == 6
    assert inertia_group(trivial_module(C, field(2, 2)), N).order == 6


def test_block_inertia_c3_in_s3():
    G = symmetric(3)
    F = field(2, 2)
    N = _order3_subgroup(G)
    C, _ = N.as_group()
    orders = sorted(block_inertia_group(b, N).order for b in central_blocks(kG(C, F)))
    # the two nontrivial characters are swapped by a transposition
    assert orders == [3, 3, 6]


def test_block_inertia_c2_in_klein():
    V = direct_product(cyclic(2), cyclic(2))
    N = V.parts["factor0"]
    C, _ = N.as_group()
    blocks = central_blocks(kG(C, field(5)))
    assert len(blocks) == 2
    # conjugation is trivial in an abelian group
    assert [block_inertia_group(b, N).order for b in blocks] == [4, 4]


def test_unique_cover_for_p_quotient():
    G = cyclic(9)
    N = _order3_subgroup(G)
    cov = covering_blocks(G, N, field(3))
    assert all(sum(col) == 1 for col in zip(*cov["covers"]))
    D = direct_product(symmetric(3), cyclic(3))
    cov = covering_blocks(D, D.parts["factor0"], field(3))
    assert all(sum(col) == 1 for col in zip(*cov["covers"]))


# ---------------------------------------------------------------- verify harness


def test_verify_green():
    G = cyclic(9)
    F = field(3)
    H = _order3_subgroup(G)
    C, _ = H.as_group()
    rep = verify("green", Instance(G, F, H, modules=[trivial_module(C, F)]))
    assert rep.passed


def test_verify_mackey():
    G = symmetric(3)
    F = field(3)
    H = _order3_subgroup(G)
    C, _ = H.as_group()
    rep = verify("mackey", Instance(G, F, H, H, modules=[trivial_module(C, F)]))
    assert rep.passed


def test_verify_main_theorem_direct_product():
    D = direct_product(symmetric(3), cyclic(3))
    N = D.parts["factor0"]
    rep = verify("main-theorem", Instance(D, field(3), N))
    assert rep.passed
    assert sorted(rep.details["mapping"]) == list(range(6))


def test_verify_unknown_check():
    with pytest.raises(PreconditionFailed):
        verify("no-such-check", Instance(cyclic(3), field(3)))


def test_simple_dims_s3_char5():
    assert sorted(simple_dimensions(kG(symmetric(3), field(5)))) == [1, 1, 2]


def test_regular_decomposes_by_projectives():
    parts = decompose(regular_group_module(symmetric(3), field(3)))
    assert sorted((U.dim, m) for U, m in parts) == [(3, 1), (3, 1)]
