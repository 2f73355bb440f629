"""Property tests for the algebraic invariants, driven by seeded random modules."""

import numpy as np
import pytest
from conftest import a2, a3, basic_dihedral, field, group_alg, line, star, trunc
from hypothesis import given, settings
from hypothesis import strategies as hs

from stautilt.algebra import (
    block_algebra,
    cartan_matrix,
    central_blocks,
    condense_basic,
    is_symmetric,
    num_simples,
)
from stautilt.exactla import linalg as la
from stautilt.grouprep import (
    cyclic,
    direct_product,
    induce,
    kG,
    restrict,
    symmetric,
)
from stautilt.modrep import (
    change_basis,
    decompose,
    direct_sum,
    hom_dim,
    is_isomorphic,
    is_projective,
    min_presentation,
    proj_map_matrix,
    proj_sum_module,
    projective_cover,
    quotient,
    radical_and_top,
    radical_rows,
    simples,
    socle_rows,
    spin,
    syzygy,
    tau,
)
from stautilt.tautilt import (
    SupportPair,
    brute_force_stautilt,
    enumerate_pairs,
    geq,
    mutate,
    pairs_match,
    regular_pair,
    same_pair,
    zero_pair,
)
from stautilt.twosilt import from_pair, gkey, hom_k, silt_geq, to_pair

ALGEBRAS = {
    "x2": lambda: trunc(3, 2),
    "x3/F2": lambda: trunc(2, 3),
    "A2": lambda: a2(3),
    "A3": lambda: a3(3),
    "line2": lambda: line(2, 1, 3),
    "line2m2": lambda: line(2, 2, 5),
    "line3": lambda: line(3, 1, 3),
    "star3": lambda: star(3, 1, 3),
    "kS3/F3": lambda: group_alg("S", 3, 3),
    "kS3/F2": lambda: group_alg("S", 3, 2, 2),
    "kS3/F5": lambda: group_alg("S", 3, 5),
    "kD5/F5": lambda: basic_dihedral(5, 5),
}
SYMMETRIC = ["x2", "x3/F2", "line2", "line2m2", "line3", "star3", "kS3/F3", "kS3/F2", "kD5/F5"]
POSET_ALGEBRAS = ["x2", "A2", "A3", "line2", "line3", "star3", "kS3/F3", "kD5/F5"]


def iso(M, N):
    return is_isomorphic(M, N) is not None


def random_module(A, seed, max_tops=3):
    """A quotient of a random sum of projectives by a random spun submodule."""
    rng = np.random.default_rng(seed)
    F, n = A.field, num_simples(A)
    labels = sorted(rng.integers(0, n, size=int(rng.integers(1, max_tops + 1))).tolist())
    P = proj_sum_module(A, labels)
    k = int(rng.integers(0, 3))
    rows = spin(P, F.random(rng, (k, P.dim))) if k else np.zeros((0, P.dim), dtype=np.int64)
    return quotient(P, rows)[0]


def random_invertible(F, d, rng):
    while True:
        T = F.random(rng, (d, d))
        if la.rank(F, T) == d:
            return T


alg_names = hs.sampled_from(sorted(ALGEBRAS))
sym_names = hs.sampled_from(SYMMETRIC)
seeds = hs.integers(0, 2**32 - 1)


# ---------------------------------------------------------------- algebras


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_associativity_and_unit(name):
    A = ALGEBRAS[name]()
    if A.dim > 60:
        pytest.skip("exhaustive check limited to dim 60")
    F, I = A.field, np.eye(A.dim, dtype=np.int64)
    ab = A.mul_many(I, I)  # (i, j, coords)
    for i in range(A.dim):
        left = A.mul_many(ab[i], I)  # (b_i b_j) b_k
        right = np.stack([A.mul_many(I[i][None, :], ab[j])[0] for j in range(A.dim)])  # b_i (b_j b_k)
        assert np.array_equal(left, right)
    for i in range(A.dim):
        assert np.array_equal(A.mul(A.unit, I[i]), I[i])
        assert np.array_equal(A.mul(I[i], A.unit), I[i])
    assert F is A.field


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_blocks_partition_unity(name):
    A = ALGEBRAS[name]()
    F = A.field
    es = [b.vector for b in central_blocks(A)]
    total = np.zeros(A.dim, dtype=np.int64)
    for i, e in enumerate(es):
        assert np.array_equal(A.mul(e, e), e)
        for f in es[i + 1 :]:
            assert not np.any(A.mul(e, f))
        total = F.add(total, e)
    assert np.array_equal(total, A.unit)
    assert sum(block_algebra(A, b).dim for b in central_blocks(A)) == A.dim


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_condensation_keeps_cartan(name):
    A = ALGEBRAS[name]()
    assert cartan_matrix(condense_basic(A).basic).tolist() == cartan_matrix(A).tolist()


@pytest.mark.parametrize(
    "G,p,m", [(cyclic(2), 2, 1), (cyclic(3), 3, 1), (symmetric(3), 2, 2), (symmetric(3), 3, 1), (direct_product(symmetric(3), cyclic(3)), 3, 1)]
)
def test_group_algebras_symmetric(G, p, m):
    A = kG(G, field(p, m))
    lam = is_symmetric(A)
    assert lam is not None
    F, I = A.field, np.eye(A.dim, dtype=np.int64)
    prods = A.mul_many(I, I)
    vals = F.tensordot(prods, lam, axes=(2, 0))
    assert np.array_equal(vals, vals.T)


# ---------------------------------------------------------------- modules


@given(alg_names, seeds, seeds)
def test_tau_additive(name, s1, s2):
    A = ALGEBRAS[name]()
    M, N = random_module(A, s1, 2), random_module(A, s2, 2)
    assert iso(tau(direct_sum([M, N])), direct_sum([tau(M), tau(N)]))


@given(sym_names, seeds)
def test_tau_is_double_syzygy_on_symmetric(name, seed):
    A = ALGEBRAS[name]()
    M = random_module(A, seed)
    for U, _ in decompose(M) if M.dim else []:
        if is_projective(U):
            continue
        assert iso(tau(U), syzygy(syzygy(U)[0])[0])


@given(alg_names, seeds, seeds)
def test_hom_dim_invariant_under_base_change(name, s1, s2):
    A = ALGEBRAS[name]()
    M, N = random_module(A, s1), random_module(A, s2)
    rng = np.random.default_rng(s1 ^ s2)
    M2 = change_basis(M, random_invertible(A.field, M.dim, rng)) if M.dim else M
    N2 = change_basis(N, random_invertible(A.field, N.dim, rng)) if N.dim else N
    assert hom_dim(M, N) == hom_dim(M2, N2) == hom_dim(M2, N) == hom_dim(M, N2)


@settings(max_examples=500)
@given(alg_names, seeds)
def test_decompose_reassembles(name, seed):
    A = ALGEBRAS[name]()
    M = random_module(A, seed)
    parts = decompose(M)
    assert sum(U.dim * k for U, k in parts) == M.dim
    if M.dim:
        assert iso(direct_sum([U for U, k in parts for _ in range(k)]), M)


def _in_span(F, rows, vecs):
    if vecs.shape[0] == 0:
        return True
    return la.rank(F, np.vstack([rows, vecs])) == la.rank(F, rows)


@given(alg_names, seeds)
def test_presentation_is_minimal(name, seed):
    A = ALGEBRAS[name]()
    M = random_module(A, seed)
    pres = min_presentation(M)
    P0 = proj_sum_module(A, pres.p0)
    F = A.field
    rad = radical_rows(P0)
    if pres.p1:
        img = proj_map_matrix(A, pres.p1, pres.p0, pres.f1)  # d_P0 x d_P1
        assert _in_span(F, rad, la.row_basis(F, img.T))
    ker = la.nullspace(F, pres.f0)
    assert _in_span(F, rad, ker)


@given(alg_names, seeds)
def test_cover_of_top(name, seed):
    A = ALGEBRAS[name]()
    M = random_module(A, seed)
    assert projective_cover(radical_and_top(M).top).labels == projective_cover(M).labels


# ---------------------------------------------------------------- induction and restriction

GROUP_CASES = {
    "C3<S3/F3": (symmetric(3), 3, 3),
    "C2<S3/F3": (symmetric(3), 2, 3),
    "C3<C9/F3": (cyclic(9), 3, 3),
    "C3<S3/F2": (symmetric(3), 3, 2),
}


def _case(name):
    G, order, p = GROUP_CASES[name]
    x = next(g for g in range(G.order) if G.element_order(g) == order)
    H = G.subgroup([x])
    F = field(p, 2 if p == 2 else 1)
    return G, H, H.as_group()[0], F


@given(hs.sampled_from(sorted(GROUP_CASES)), seeds, seeds)
def test_frobenius_reciprocity(name, s1, s2):
    G, H, C, F = _case(name)
    U = random_module(kG(C, F), s1)
    V = random_module(kG(G, F), s2)
    IU, RV = induce(U, H), restrict(V, H)
    assert IU.dim == H.index() * U.dim
    assert hom_dim(IU, V) == hom_dim(U, RV)
    assert hom_dim(V, IU) == hom_dim(RV, U)


@given(hs.sampled_from(sorted(GROUP_CASES)), seeds)
def test_induce_restrict_keep_projectives(name, seed):
    G, H, C, F = _case(name)
    rng = np.random.default_rng(seed)
    labels = sorted(rng.integers(0, num_simples(kG(C, F)), size=2).tolist())
    P = proj_sum_module(kG(C, F), labels)
    assert all(is_projective(U) for U, _ in decompose(induce(P, H)))
    Q = proj_sum_module(kG(G, F), [int(rng.integers(0, num_simples(kG(G, F))))])
    assert all(is_projective(U) for U, _ in decompose(restrict(Q, H)))


def test_p_quotient_single_composition_factor():
    for G, N in ((cyclic(9), None), (direct_product(symmetric(3), cyclic(3)), "factor0")):
        H = G.parts[N] if N else G.subgroup([next(g for g in range(9) if G.element_order(g) == 3)])
        C, _ = H.as_group()
        for T in simples(kG(C, field(3))):
            dv = induce(T, H).dimension_vector()
            assert sum(1 for x in dv if x) == 1


# ---------------------------------------------------------------- support pairs and posets


@pytest.fixture(scope="module", params=POSET_ALGEBRAS)
def poset(request):
    A = ALGEBRAS[request.param]()
    return A, enumerate_pairs(A)


def test_hasse_regular(poset):
    A, P = poset
    n = num_simples(A)
    for i in range(P.size):
        assert P.in_degree(i) + P.out_degree(i) == n


def test_unique_extremes_and_paths(poset):
    A, P = poset
    top, bot = P.max_index, P.min_index
    assert top is not None and bot is not None
    assert same_pair(P.nodes[top], regular_pair(A)) and same_pair(P.nodes[bot], zero_pair(A))
    reach = P.order_matrix()
    assert all(reach[top, i] and reach[i, bot] for i in range(P.size))


def test_order_consistency(poset):
    _, P = poset
    for a, b in P.hasse_edges:
        assert geq(P.nodes[a], P.nodes[b]) and not geq(P.nodes[b], P.nodes[a])


def test_gkeys_distinct(poset):
    _, P = poset
    assert len(set(P.gkeys)) == P.size
    assert P.gkeys == sorted(P.gkeys)


def test_mutation_involution_everywhere(poset):
    _, P = poset
    for p in P.nodes:
        for x in range(len(p.summands)):
            q = mutate(p, x)
            assert geq(p, q) != geq(q, p)
            assert any(same_pair(mutate(q, y), p) for y in range(len(q.summands)))


def test_audit_enumeration_agrees(poset):
    A, P = poset
    Q = enumerate_pairs(A, audit=True)
    assert Q.gkeys == P.gkeys and Q.hasse_edges == P.hasse_edges


def test_correspondence_round_trip(poset):
    _, P = poset
    for p in P.nodes:
        x = from_pair(p)
        assert gkey(x) == p.gkey
        assert same_pair(to_pair(x), p)
        for s in (2, -2, 3):
            assert hom_k(x, x, s).dim == 0


def test_silting_complexes_tilting_on_symmetric(poset):
    A, P = poset
    if is_symmetric(A) is None:
        pytest.skip("not symmetric")
    for p in P.nodes:
        x = from_pair(p)
        assert hom_k(x, x, -1).dim == 0


def test_silt_geq_partial_order(poset):
    _, P = poset
    xs = [from_pair(p) for p in P.nodes]
    n = len(xs)
    R = np.array([[silt_geq(xs[i], xs[j]) for j in range(n)] for i in range(n)])
    assert R.diagonal().all()
    assert not np.any(R & R.T & ~np.eye(n, dtype=bool))
    assert np.array_equal(R, R | ((R.astype(int) @ R.astype(int)) > 0))
    assert np.array_equal(R, P.order_matrix())


# ---------------------------------------------------------------- brute-force oracle


def _nakayama(A):
    from stautilt.modrep import projective, simple

    out = []
    for i in range(num_simples(A)):
        P = projective(A, i)
        out.append(P)
        M = P
        while True:
            S = socle_rows(M)
            if S.shape[0] == M.dim:
                break
            M = quotient(M, S)[0]
            out.append(M)
        if not iso(out[-1], simple(A, i)):
            raise AssertionError("expected the simple at the end of the chain")
    uniq = []
    for M in out:
        if not any(iso(M, U) for U in uniq):
            uniq.append(M)
    return uniq


ORACLE = ["x2", "x3/F2", "A2", "A3", "line2", "line2m2"]


def _pair_summands(p):
    return [("M", U) for U in p.m_summands] + [("P", i) for i in p.p_labels]


def _contains(q, part):
    qs = _pair_summands(q)
    for kind, obj in part:
        if kind == "P":
            if obj not in q.p_labels:
                return False
        elif not any(k == "M" and iso(obj, U) for k, U in qs):
            return False
    return True


@pytest.mark.parametrize("name", ORACLE)
def test_enumeration_matches_brute_force(name):
    A = ALGEBRAS[name]()
    found = brute_force_stautilt(A, _nakayama(A))
    assert pairs_match(found, enumerate_pairs(A).nodes)


@pytest.mark.parametrize("name", ORACLE)
def test_exactly_two_completions(name):
    A = ALGEBRAS[name]()
    found = brute_force_stautilt(A, _nakayama(A))
    for p in found:
        parts = _pair_summands(p)
        for x in range(len(parts)):
            rest = parts[:x] + parts[x + 1 :]
            assert sum(_contains(q, rest) for q in found) == 2


def test_pair_constructor_canonical_order():
    p = regular_pair(line(2, 1, 3))
    assert SupportPair(p.algebra, p.m_summands[::-1], p.p_labels).gkey == p.gkey
