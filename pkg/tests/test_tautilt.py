import pytest
from conftest import a2, group_alg, line, trunc

from stautilt.errors import BadSummand, NotProjective
from stautilt.modrep import (
    is_isomorphic,
    projective,
    quotient,
    radical_rows,
    regular_module,
    simple,
    socle_rows,
)
from stautilt.modrep.hom import radical_and_top
from stautilt.tautilt import (
    SupportPair,
    TauPoset,
    brute_force_stautilt,
    enumerate_pairs,
    geq,
    is_support_tau_tilting,
    mutate,
    pairs_match,
    poset_isomorphic,
    regular_pair,
    same_pair,
    support_pair,
    verify_order_embedding,
    zero_pair,
)


def _iso(M, N):
    return is_isomorphic(M, N) is not None


def _nakayama_indecomposables(A, labels):
    """P, P/soc P and P/rad P for each label: all indecomposables of a Loewy length 3 Nakayama algebra."""
    out = []
    for i in labels:
        P = projective(A, i)
        out += [P, quotient(P, socle_rows(P))[0], simple(A, i)]
    return out


def _pair_for(A, M, p_labels):
    return SupportPair(A, (M,) if M.dim else (), tuple(p_labels))


# ---------------------------------------------------------------- validity


def test_regular_and_zero_pairs_valid():
    A = line(2, 1, 3)
    assert is_support_tau_tilting(regular_module(A)).valid
    assert is_support_tau_tilting(regular_pair(A).M, None).valid
    z = zero_pair(A)
    assert is_support_tau_tilting(z.M, z.P).valid


def test_simple_with_other_projective_valid():
    A = line(2, 1, 3)
    v = is_support_tau_tilting(simple(A, 0), projective(A, 1))
    assert v.valid


def test_simple_with_own_projective_invalid():
    A = line(2, 1, 3)
    v = is_support_tau_tilting(simple(A, 0), projective(A, 0))
    assert not v.valid and not v.hom_p_m_zero


def test_non_projective_second_component():
    A = line(2, 1, 3)
    with pytest.raises(NotProjective):
        is_support_tau_tilting(simple(A, 0), simple(A, 1))


# ---------------------------------------------------------------- mutation


def test_mutate_regular_dihedral():
    A = line(2, 1, 3)
    top = regular_pair(A)
    results = [mutate(top, x) for x in range(len(top.summands))]
    for r in results:
        assert is_support_tau_tilting(r.M, r.P).valid
        assert r.p_labels == ()
        assert len(r.m_summands) == 2
    # each result is P(i) + S(i): the other projective is replaced by a simple
    for r in results:
        Ps = [U for U in r.m_summands if U.dim == 3]
        Ss = [U for U in r.m_summands if U.dim == 1]
        assert len(Ps) == 1 and len(Ss) == 1
        assert radical_and_top(Ps[0]).top_multiplicities == Ss[0].dimension_vector()
    assert not same_pair(results[0], results[1])


def test_mutate_involution():
    A = line(2, 1, 3)
    top = regular_pair(A)
    for x in range(2):
        once = mutate(top, x)
        back = [mutate(once, y) for y in range(2)]
        assert sum(same_pair(b, top) for b in back) == 1


def test_mutate_truncated_square():
    A = trunc(3, 2)
    assert same_pair(mutate(regular_pair(A), 0), zero_pair(A))


def test_mutate_bad_summand():
    A = line(2, 1, 3)
    with pytest.raises(BadSummand):
        mutate(regular_pair(A), 5)


# ---------------------------------------------------------------- order


def test_geq_extremes():
    A = line(2, 1, 3)
    top, bot = regular_pair(A), zero_pair(A)
    k_node = _pair_for(A, simple(A, 0), (1,))
    assert geq(top, k_node) and geq(top, bot)
    assert geq(bot, bot)
    assert not geq(bot, k_node)


def test_geq_figure_arrows():
    A = line(2, 1, 3)
    top = regular_pair(A)
    (pk_k,) = [r for r in (mutate(top, x) for x in range(2)) if any(_iso(U, simple(A, 0)) for U in r.m_summands)]
    k_node = _pair_for(A, simple(A, 0), (1,))
    s_node = _pair_for(A, simple(A, 1), (0,))
    assert geq(pk_k, k_node)
    assert not geq(k_node, s_node)


# ---------------------------------------------------------------- enumeration


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_enumerate_truncated(m):
    P = enumerate_pairs(trunc(3, m))
    assert P.size == 2 and P.hasse_edges == [(P.max_index, P.min_index)]


def _hexagon(P: TauPoset):
    succ = P.successors()
    top, bot = P.max_index, P.min_index
    chains = []
    for a in succ[top]:
        (b,) = succ[a]
        assert succ[b] == [bot]
        chains.append((a, b))
    return chains


def test_enumerate_dihedral_shape():
    P = enumerate_pairs(line(2, 1, 3))
    assert P.size == 6 and len(P.hasse_edges) == 6
    chains = _hexagon(P)
    assert len(chains) == 2
    reach = P.order_matrix()
    (a1, b1), (a2, b2) = chains
    for x in (a1, b1):
        for y in (a2, b2):
            assert not reach[x, y] and not reach[y, x]


def test_enumerate_basic_kd3():
    from conftest import basic_dihedral

    P = enumerate_pairs(basic_dihedral(3, 3))
    assert P.size == 6 and len(_hexagon(P)) == 2


def test_enumerate_line_three_edges():
    P = enumerate_pairs(line(3, 1, 3))
    assert P.size == 20


def test_top_and_bottom_labels():
    A = line(2, 1, 3)
    P = enumerate_pairs(A)
    assert same_pair(P.nodes[P.max_index], regular_pair(A))
    assert same_pair(P.nodes[P.min_index], zero_pair(A))


# ---------------------------------------------------------------- poset comparison


def test_poset_iso_self_and_size_mismatch():
    P = enumerate_pairs(line(2, 1, 3))
    assert poset_isomorphic(P, P) == list(range(6))
    assert poset_isomorphic(P, enumerate_pairs(trunc(3, 2))) is None


def test_poset_iso_group_algebra_vs_line():
    P1 = enumerate_pairs(group_alg("S", 3, 3))
    P2 = enumerate_pairs(line(2, 1, 3))
    iso = poset_isomorphic(P1, P2)
    assert iso is not None
    assert verify_order_embedding(iso, P1, P2).surjective


def test_order_embedding_identity_and_collapse():
    P = enumerate_pairs(line(2, 1, 3))
    r = verify_order_embedding(list(range(6)), P, P)
    assert r.ok and r.surjective
    bad = list(range(6))
    bad[1] = bad[0]
    r = verify_order_embedding(bad, P, P)
    assert not r.injective and not r.ok
    assert any("collapsed" in w for w in r.witnesses)


def test_poset_json_round_trip():
    P = enumerate_pairs(line(2, 1, 3))
    Q = TauPoset.from_json(P.to_json())
    assert Q.same_as(P)


# ---------------------------------------------------------------- brute force


def test_brute_force_truncated_cube():
    A = trunc(3, 3)
    R = regular_module(A)
    mods = [R, quotient(R, socle_rows(R))[0], quotient(R, radical_rows(R))[0]]
    found = brute_force_stautilt(A, mods)
    assert len(found) == 2
    assert pairs_match(found, [regular_pair(A), zero_pair(A)])


def test_brute_force_a2():
    A = a2(3)
    src = [projective(A, i).dim for i in range(2)].index(2)
    mods = [simple(A, 0), simple(A, 1), projective(A, src)]
    found = brute_force_stautilt(A, mods)
    assert len(found) == 5
    assert pairs_match(found, enumerate_pairs(A).nodes)


def test_brute_force_dihedral_matches_enumeration():
    A = line(2, 1, 3)
    mods = _nakayama_indecomposables(A, range(2))
    assert len(mods) == 6
    found = brute_force_stautilt(A, mods)
    assert len(found) == 6
    assert pairs_match(found, enumerate_pairs(A).nodes)


def test_support_pair_collapses_repeats():
    A = line(2, 1, 3)
    from stautilt.modrep import direct_sum

    p = support_pair(direct_sum([simple(A, 0), simple(A, 0)]), projective(A, 1))
    assert len(p.m_summands) == 1 and p.p_labels == (1,)
