"""Group modules: restriction, induction, conjugation, inertia groups and block covering."""

from __future__ import annotations

from collections import deque

import numpy as np

from ..algebra import structure as st
from ..algebra.core import FinDimAlgebra, group_algebra
from ..errors import BadAction, BadEmbedding, BadSubgroup, NotNormal
from ..exactla.field import GF
from ..modrep.decompose import is_isomorphic
from ..modrep.module import ModuleRep
from .groups import FiniteGroup, Subgroup

MODULE_DIM_CAP = 512


def kG(G: FiniteGroup, F: GF) -> FinDimAlgebra:
    """The group algebra, shared per (group, field) so modules can be compared."""
    store = G.__dict__.setdefault("_algebras", {})
    key = (F.p, F.m, tuple(getattr(F, "modulus", ()) or ()))
    if key not in store:
        store[key] = group_algebra(G, F)
    return store[key]


def group_of(M: ModuleRep) -> FiniteGroup:
    G = getattr(M.algebra, "group", None)
    if G is None:
        raise BadSubgroup("module does not live over a group algebra")
    return G


def group_module(G: FiniteGroup, F: GF, gen_mats) -> ModuleRep:
    """Module from one invertible matrix per group generator, checked against the table."""
    mats = np.asarray(gen_mats, dtype=np.int64)
    if mats.ndim != 3 or mats.shape[0] != len(G.generators):
        raise BadAction("one square matrix per group generator is required")
    d = mats.shape[1]
    if d > MODULE_DIM_CAP:
        raise BadAction(f"module dimension exceeds {MODULE_DIM_CAP}")
    rho = [None] * G.order
    rho[G.identity] = np.eye(d, dtype=np.int64)
    queue = deque([G.identity])
    while queue:
        x = queue.popleft()
        for s, m in zip(G.generators, mats):
            y = int(G.table[s, x])
            val = F.matmul(m, rho[x])
            if rho[y] is None:
                rho[y] = val
                queue.append(y)
            elif not np.array_equal(rho[y], val):
                raise BadAction("matrices do not satisfy the group relations")
    if any(r is None for r in rho):
        raise BadAction("generators do not generate the group")
    return ModuleRep(kG(G, F), np.array(rho), check=False)


def trivial_module(G: FiniteGroup, F: GF) -> ModuleRep:
    A = kG(G, F)
    return ModuleRep(A, np.ones((G.order, 1, 1), dtype=np.int64), check=False, name="trivial")


def regular_group_module(G: FiniteGroup, F: GF) -> ModuleRep:
    from ..modrep.module import regular_module

    return regular_module(kG(G, F))


def element_matrix(M: ModuleRep, g: int) -> np.ndarray:
    return M.action[int(g)]


# ----------------------------------------------------------------------
# functors


def _frame(G: FiniteGroup, S: Subgroup | None) -> tuple[FiniteGroup, np.ndarray]:
    """Standalone group and embedding for S, or G itself when S is None."""
    if S is None:
        return G, np.arange(G.order)
    if S.parent is not G:
        raise BadSubgroup("subgroup belongs to a different group")
    return S.as_group()


def _expect_over(U: ModuleRep, grp: FiniteGroup) -> None:
    if group_of(U) is not grp:
        raise BadSubgroup("module does not live over the expected group")


def restrict(M: ModuleRep, H: Subgroup, within: Subgroup | None = None) -> ModuleRep:
    """Restriction to H of a module over ``within`` (default: the whole parent group)."""
    G = H.parent
    src, semb = _frame(G, within)
    _expect_over(M, src)
    pos = {int(x): i for i, x in enumerate(semb)}
    sub, emb = H.as_group()
    if any(int(h) not in pos for h in emb):
        raise BadSubgroup("not a subgroup of the module's group")
    return ModuleRep(kG(sub, M.field), M.action[[pos[int(h)] for h in emb]], check=False)


def induce(U: ModuleRep, H: Subgroup, to: Subgroup | None = None) -> ModuleRep:
    """kG (x)_{kH} U on the basis t_a (x) u_b, a major; t_a the least element of its coset."""
    G = H.parent
    sub, emb = H.as_group()
    _expect_over(U, sub)
    big, bemb = _frame(G, to)
    F = U.field
    pos_in_sub = {int(x): i for i, x in enumerate(emb)}
    members = [int(x) for x in bemb]
    if not set(pos_in_sub) <= set(members):
        raise BadSubgroup("not a subgroup of the target group")
    reps, coset_of = [], {}
    for x in sorted(members):
        if x in coset_of:
            continue
        for h in H.elements:
            coset_of[int(G.table[x, h])] = len(reps)
        reps.append(x)
    r, d = len(reps), U.dim
    if r * d > MODULE_DIM_CAP:
        raise BadAction(f"induced module dimension exceeds {MODULE_DIM_CAP}")
    act = np.zeros((big.order, r * d, r * d), dtype=np.int64)
    for gi, g in enumerate(members):
        for a, t in enumerate(reps):
            gt = int(G.table[g, t])
            c = coset_of[gt]
            h = int(G.table[G.inverse[reps[c]], gt])  # t_c^-1 g t_a lies in H
            act[gi, c * d : (c + 1) * d, a * d : (a + 1) * d] = U.action[pos_in_sub[h]]
    return ModuleRep(kG(big, F), act, check=False)


def conjugate_subgroup(H: Subgroup, g: int) -> Subgroup:
    G = H.parent
    return G.subgroup_from_elements([G.conj(g, h) for h in H.elements])


def conjugate_module(g: int, U: ModuleRep, N: Subgroup) -> ModuleRep:
    """gU over N (normal): n acts as U(g^-1 n g)."""
    G = N.parent
    sub, emb = N.as_group()
    if group_of(U) is not sub:
        raise BadSubgroup("module does not live over this subgroup")
    if int(g) not in N and not N.is_normal():
        raise NotNormal("conjugation needs a normal subgroup")
    pos = {int(x): i for i, x in enumerate(emb)}
    gi = G.inverse[int(g)]
    idx = [pos[G.conj(gi, int(n))] for n in emb]
    return ModuleRep(U.algebra, U.action[idx], check=False)


def conjugate_to(U: ModuleRep, H: Subgroup, x: int) -> tuple[ModuleRep, Subgroup]:
    """xU as a module over xHx^-1 (y acts as U(x^-1 y x))."""
    G = H.parent
    sub, emb = H.as_group()
    if group_of(U) is not sub:
        raise BadSubgroup("module does not live over this subgroup")
    K = conjugate_subgroup(H, x)
    ksub, kemb = K.as_group()
    pos = {int(y): i for i, y in enumerate(emb)}
    xi = G.inverse[int(x)]
    idx = [pos[G.conj(xi, int(y))] for y in kemb]
    return ModuleRep(kG(ksub, U.field), U.action[idx], check=False), K


def double_coset_reps(G: FiniteGroup, K: Subgroup, H: Subgroup) -> list[int]:
    """Minimal representative of each double coset K x H."""
    seen: set[int] = set()
    reps = []
    for x in range(G.order):
        if x in seen:
            continue
        reps.append(x)
        for k in K.elements:
            kx = int(G.table[k, x])
            for h in H.elements:
                seen.add(int(G.table[kx, h]))
    return reps


def intersect_subgroups(H: Subgroup, K: Subgroup) -> Subgroup:
    return H.parent.subgroup_from_elements(sorted(set(H.elements) & set(K.elements)))


# ----------------------------------------------------------------------
# inertia and blocks


def module_inertia_group(U: ModuleRep, N: Subgroup) -> Subgroup:
    """{g : gU is isomorphic to U}."""
    G = N.parent
    if not N.is_normal():
        raise NotNormal("inertia groups need a normal subgroup")
    elems = [g for g in range(G.order) if g in N or is_isomorphic(conjugate_module(g, U, N), U) is not None]
    return G.subgroup_from_elements(elems)


def block_vector_in_parent(b, N: Subgroup) -> np.ndarray:
    """Coefficients of an element of kN as an element of kG."""
    _, emb = N.as_group()
    vec = b.vector if isinstance(b, st.BlockIdempotent) else np.asarray(b, dtype=np.int64)
    out = np.zeros(N.parent.order, dtype=np.int64)
    out[emb] = vec
    return out


def conjugate_vector(G: FiniteGroup, g: int, v) -> np.ndarray:
    """g v g^-1 for an element of kG."""
    out = np.zeros(G.order, dtype=np.int64)
    idx = [G.conj(int(g), x) for x in range(G.order)]
    out[idx] = np.asarray(v, dtype=np.int64)
    return out


def block_inertia_group(b, N: Subgroup) -> Subgroup:
    """Stabiliser of the block idempotent under conjugation."""
    G = N.parent
    if not N.is_normal():
        raise NotNormal("inertia groups need a normal subgroup")
    v = block_vector_in_parent(b, N)
    elems = [g for g in range(G.order) if np.array_equal(conjugate_vector(G, g, v), v)]
    return G.subgroup_from_elements(elems)


def inertia_group(x, N: Subgroup) -> Subgroup:
    if isinstance(x, ModuleRep):
        return module_inertia_group(x, N)
    return block_inertia_group(x, N)


def principal_block(A: FinDimAlgebra) -> st.BlockIdempotent:
    """The block acting nontrivially on the trivial module."""
    F = A.field
    for b in st.central_blocks(A):
        if int(F.sum(b.vector)) != 0:
            return b
    raise BadEmbedding("no block acts on the trivial module")


def covering_blocks(Gt: FiniteGroup, N: Subgroup, F: GF) -> dict:
    """Covering table: covers[i][j] is True iff block i of kGt times block j of kN is nonzero."""
    if N.parent is not Gt:
        raise BadEmbedding("subgroup is not embedded in the larger group")
    if not N.is_normal():
        raise NotNormal("covering is defined for normal subgroups")
    big = kG(Gt, F)
    sub, _ = N.as_group()
    small = kG(sub, F)
    Bs = st.central_blocks(big)
    bs = st.central_blocks(small)
    emb = [block_vector_in_parent(b, N) for b in bs]
    table = [[bool(np.any(big.mul(B.vector, e))) for e in emb] for B in Bs]
    return {"big_blocks": Bs, "small_blocks": bs, "covers": table}


def block_orbit(b, N: Subgroup) -> list[int]:
    """Indices of the blocks of kN conjugate to b in the parent group."""
    G = N.parent
    sub, _ = N.as_group()
    bs = st.central_blocks(kG(sub, b.algebra.field))
    v = block_vector_in_parent(b, N)
    vs = [block_vector_in_parent(c, N) for c in bs]
    out = set()
    for g in range(G.order):
        w = conjugate_vector(G, g, v)
        for i, u in enumerate(vs):
            if np.array_equal(u, w):
                out.add(i)
    return sorted(out)


def to_block_module(M: ModuleRep, B: FinDimAlgebra) -> ModuleRep:
    """View a module of the ambient algebra lying in block B as a B-module."""
    if getattr(B, "parent", None) is not M.algebra:
        raise BadEmbedding("block does not belong to the module's algebra")
    act = M.field.tensordot(B.embedding, M.action, axes=(1, 0))
    return ModuleRep(B, act, check=False)


def from_block_module(N: ModuleRep, A: FinDimAlgebra) -> ModuleRep:
    """Inflate a block module to the ambient algebra (acting through the block idempotent)."""
    B = N.algebra
    if getattr(B, "parent", None) is not A:
        raise BadEmbedding("block does not belong to this algebra")
    F = A.field
    rows = B.embedding
    piv = [int(np.flatnonzero(r)[0]) for r in rows]
    e = B.block_idempotent
    prods = A.mul_many(np.eye(A.dim, dtype=np.int64), e[None, :])[:, 0, :]  # b_i * e
    coords = prods[:, piv]
    return ModuleRep(A, F.tensordot(coords, N.action, axes=(1, 0)), check=False)


def lies_in_block(M: ModuleRep, e) -> bool:
    vec = e.vector if isinstance(e, st.BlockIdempotent) else np.asarray(e, dtype=np.int64)
    return np.array_equal(M.act(vec), np.eye(M.dim, dtype=np.int64))


def block_of(A: FinDimAlgebra, b) -> FinDimAlgebra:
    """Block algebra for a central idempotent, built once per algebra."""
    vec = b.vector if isinstance(b, st.BlockIdempotent) else np.asarray(b, dtype=np.int64)
    return A.cached(("block", tuple(int(x) for x in vec)), lambda: st.block_algebra(A, vec))
