"""Checks of induction/restriction statements on concrete group instances.

Each check takes an :class:`Instance` and returns a :class:`VerifyReport`.
Side conditions (normality, p-group quotients, indecomposability of inputs)
are validated first and raise :class:`PreconditionFailed`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..algebra import structure as st
from ..algebra.core import tensor_algebra
from ..errors import PreconditionFailed
from ..exactla.field import GF
from ..modrep.decompose import decompose, expand_module, condense_module, is_isomorphic
from ..modrep.hom import hom_dim, is_indecomposable
from ..modrep.module import ModuleRep, direct_sum
from ..modrep.presentation import projective, projective_cover, simples, syzygy, tau
from ..tautilt.pair import SupportPair, is_tau_rigid, projective_labels, same_pair
from ..tautilt.poset import enumerate_pairs, poset_isomorphic, verify_order_embedding
from .groups import FiniteGroup, Subgroup
from .modules import (
    block_inertia_group,
    block_of,
    conjugate_module,
    conjugate_to,
    covering_blocks,
    double_coset_reps,
    from_block_module,
    induce,
    intersect_subgroups,
    kG,
    lies_in_block,
    module_inertia_group,
    principal_block,
    restrict,
    to_block_module,
    trivial_module,
)


@dataclass
class Instance:
    """Inputs for a check. Modules live over ``subgroup`` unless a check says otherwise."""

    group: FiniteGroup
    field: GF
    subgroup: Subgroup | None = None
    other: Subgroup | None = None
    modules: list = field(default_factory=list)
    block: int | None = None
    p_group: FiniteGroup | None = None
    budget: int = 10**6
    threads: int = 1


@dataclass
class VerifyReport:
    check: str
    passed: bool
    details: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    hypothesis_spot_checked: bool | None = None

    def as_dict(self) -> dict:
        out = {"check": self.check, "passed": self.passed, "details": self.details, "witnesses": self.witnesses}
        if self.hypothesis_spot_checked is not None:
            out["hypothesis_spot_checked"] = self.hypothesis_spot_checked
        return out


# ----------------------------------------------------------------------
# side conditions


def _need_subgroup(inst: Instance, what: str = "subgroup") -> Subgroup:
    H = inst.subgroup if what == "subgroup" else inst.other
    if H is None:
        raise PreconditionFailed(f"the check needs a {what}")
    if H.parent is not inst.group:
        raise PreconditionFailed(f"{what} does not belong to the group")
    return H


def _need_normal(inst: Instance) -> Subgroup:
    N = _need_subgroup(inst)
    if not N.is_normal():
        raise PreconditionFailed("subgroup is not normal")
    return N


def _need_p_quotient(inst: Instance, N: Subgroup) -> None:
    if not N.is_p_quotient(inst.field.p):
        raise PreconditionFailed(f"quotient is not a {inst.field.p}-group")


def _modules(inst: Instance, grp: FiniteGroup, default_trivial: bool = True) -> list[ModuleRep]:
    mods = list(inst.modules)
    if not mods and default_trivial:
        mods = [trivial_module(grp, inst.field)]
    for U in mods:
        if getattr(U.algebra, "group", None) is not grp:
            raise PreconditionFailed("module does not live over the subgroup")
    return mods


def _shape(M: ModuleRep) -> list:
    return [[U.dim, k] for U, k in decompose(M)] if M.dim else []


def _simples_of(grp: FiniteGroup, F: GF) -> list[ModuleRep]:
    return simples(kG(grp, F))


# ----------------------------------------------------------------------
# checks


def check_mackey(inst: Instance) -> VerifyReport:
    """Res_K Ind_H U against the sum over K\\G/H of Ind_{K cap xHx^-1} Res (xU)."""
    G = inst.group
    H = _need_subgroup(inst)
    K = inst.other if inst.other is not None else H
    if K.parent is not G:
        raise PreconditionFailed("second subgroup does not belong to the group")
    sub, _ = H.as_group()
    witnesses, details = [], []
    ok = True
    for U in _modules(inst, sub):
        lhs = restrict(induce(U, H), K)
        parts = []
        for x in double_coset_reps(G, K, H):
            xU, Hx = conjugate_to(U, H, x)
            L = intersect_subgroups(K, Hx)
            parts.append(induce(restrict(xU, L, within=Hx), L, to=K))
        rhs = direct_sum(parts)
        same = lhs.dim == rhs.dim and is_isomorphic(lhs, rhs) is not None
        details.append({"dim": lhs.dim, "double_cosets": len(parts), "lhs": _shape(lhs), "rhs": _shape(rhs)})
        if not same:
            ok = False
            witnesses.append({"module_dim": U.dim, "lhs": _shape(lhs), "rhs": _shape(rhs)})
    return VerifyReport("mackey", ok, {"instances": details}, witnesses)


def check_green(inst: Instance) -> VerifyReport:
    N = _need_normal(inst)
    _need_p_quotient(inst, N)
    sub, _ = N.as_group()
    ok, witnesses, shapes = True, [], []
    for U in _modules(inst, sub):
        if not is_indecomposable(U):
            raise PreconditionFailed("input module is decomposable")
        parts = _shape(induce(U, N))
        shapes.append(parts)
        if len(parts) != 1 or parts[0][1] != 1:
            ok = False
            witnesses.append({"module_dim": U.dim, "induced": parts})
    return VerifyReport("green", ok, {"induced": shapes}, witnesses)


def _orbit_reps(U: ModuleRep, N: Subgroup) -> list[int]:
    """Elements g giving pairwise non-isomorphic conjugates gU."""
    return module_inertia_group(U, N).left_coset_reps()


def check_clifford_simple(inst: Instance) -> VerifyReport:
    """Res_N S is (sum over G/I of gT)^r for every simple S of kG supplied (default: all)."""
    G = inst.group
    N = _need_normal(inst)
    mods = list(inst.modules) or _simples_of(G, inst.field)
    ok, witnesses, rows = True, [], []
    for S in mods:
        R = restrict(S, N)
        parts = decompose(R)
        T = parts[0][0]
        mults = {k for _, k in parts}
        reps = _orbit_reps(T, N)
        orbit = [conjugate_module(g, T, N) for g in reps]
        matched = len(orbit) == len(parts) and all(
            any(is_isomorphic(V, W) is not None for W in orbit) for V, _ in parts
        )
        good = len(mults) == 1 and matched
        rows.append({"dim": S.dim, "orbit": len(orbit), "ramification": min(mults)})
        if not good:
            ok = False
            witnesses.append({"dim": S.dim, "restriction": [[V.dim, k] for V, k in parts], "orbit": len(orbit)})
    return VerifyReport("clifford-simple", ok, {"simples": rows}, witnesses)


def _extensions(G: FiniteGroup, N: Subgroup, T: ModuleRep, F: GF) -> list[int]:
    return [i for i, S in enumerate(_simples_of(G, F)) if S.dim == T.dim and is_isomorphic(restrict(S, N), T) is not None]


def check_unique_extension(inst: Instance) -> VerifyReport:
    G = inst.group
    N = _need_normal(inst)
    _need_p_quotient(inst, N)
    sub, _ = N.as_group()
    mods = list(inst.modules) or _simples_of(sub, inst.field)
    ok, witnesses, rows = True, [], []
    for T in mods:
        if module_inertia_group(T, N).order != G.order:
            raise PreconditionFailed("simple module is not invariant in the group")
        ext = _extensions(G, N, T, inst.field)
        rows.append({"dim": T.dim, "extensions": ext})
        if len(ext) != 1:
            ok = False
            witnesses.append({"dim": T.dim, "extensions": ext})
    return VerifyReport("unique-extension", ok, {"simples": rows}, witnesses)


def check_ind_res_one_simple(inst: Instance) -> VerifyReport:
    N = _need_normal(inst)
    _need_p_quotient(inst, N)
    sub, _ = N.as_group()
    mods = list(inst.modules) or _simples_of(sub, inst.field)
    ok, witnesses, rows = True, [], []
    for T in mods:
        dv = induce(T, N).dimension_vector()
        kinds = sum(1 for c in dv if c)
        rows.append({"dim": T.dim, "composition": list(dv)})
        if kinds != 1:
            ok = False
            witnesses.append({"dim": T.dim, "composition": list(dv)})
    return VerifyReport("ind-res-one-simple", ok, {"simples": rows}, witnesses)


def check_ind_proj(inst: Instance) -> VerifyReport:
    G = inst.group
    N = _need_normal(inst)
    _need_p_quotient(inst, N)
    sub, _ = N.as_group()
    mods = list(inst.modules) or _simples_of(sub, inst.field)
    simples_G = _simples_of(G, inst.field)
    ok, witnesses, rows = True, [], []
    for T in mods:
        if module_inertia_group(T, N).order != G.order:
            raise PreconditionFailed("simple module is not invariant in the group")
        ext = _extensions(G, N, T, inst.field)
        if len(ext) != 1:
            ok = False
            witnesses.append({"dim": T.dim, "extensions": ext})
            continue
        PT = projective_cover(T).module
        PS = projective_cover(simples_G[ext[0]]).module
        up = is_isomorphic(induce(PT, N), PS) is not None
        down = is_isomorphic(restrict(PS, N), direct_sum([PT] * N.index())) is not None
        rows.append({"dim": T.dim, "induce": up, "restrict": down})
        if not (up and down):
            ok = False
            witnesses.append({"dim": T.dim, "induce": up, "restrict": down})
    return VerifyReport("ind-proj", ok, {"simples": rows}, witnesses)


def check_ind_tau(inst: Instance) -> VerifyReport:
    N = _need_subgroup(inst)
    sub, _ = N.as_group()
    mods = _modules(inst, sub)
    ok, witnesses, rows = True, [], []
    for V in mods:
        IV = induce(V, N)
        res = {
            "tau": is_isomorphic(tau(IV), induce(tau(V), N)) is not None,
            "projective_cover": is_isomorphic(projective_cover(IV).module, induce(projective_cover(V).module, N)) is not None,
            "syzygy": is_isomorphic(syzygy(IV)[0], induce(syzygy(V)[0], N)) is not None,
        }
        rows.append({"dim": V.dim, **res})
        if not all(res.values()):
            ok = False
            witnesses.append({"dim": V.dim, **res})
    return VerifyReport("ind-tau", ok, {"modules": rows}, witnesses)


def check_tau_rigid_conj(inst: Instance) -> VerifyReport:
    """Ind U is tau-rigid exactly when Hom(gU, tau U) = 0 for all g."""
    G = inst.group
    N = _need_normal(inst)
    sub, _ = N.as_group()
    ok, witnesses, rows = True, [], []
    for U in _modules(inst, sub):
        tU = tau(U)
        local = all(hom_dim(conjugate_module(g, U, N), tU) == 0 for g in range(G.order))
        induced = is_tau_rigid(induce(U, N))
        rows.append({"dim": U.dim, "conjugates_clear": local, "induced_rigid": induced})
        if local != induced:
            ok = False
            witnesses.append(rows[-1])
    return VerifyReport("tau-rigid-conj", ok, {"modules": rows}, witnesses)


def check_ind_pair_hom_zero(inst: Instance) -> VerifyReport:
    """modules = [P, U, ...]: pairs (P, U) with Hom(P, U) = 0 and U invariant."""
    N = _need_normal(inst)
    sub, _ = N.as_group()
    mods = _modules(inst, sub, default_trivial=False)
    if len(mods) < 2 or len(mods) % 2:
        raise PreconditionFailed("supply modules as consecutive (projective, module) pairs")
    ok, witnesses, rows = True, [], []
    for P, U in zip(mods[::2], mods[1::2]):
        if P.dim and projective_cover(P).module.dim != P.dim:
            raise PreconditionFailed("first module of a pair is not projective")
        if hom_dim(P, U):
            raise PreconditionFailed("Hom(P, U) is nonzero")
        if module_inertia_group(U, N).order != inst.group.order:
            raise PreconditionFailed("module is not invariant in the group")
        h = hom_dim(induce(P, N), induce(U, N))
        rows.append({"dims": [P.dim, U.dim], "hom_induced": h})
        if h:
            ok = False
            witnesses.append(rows[-1])
    return VerifyReport("ind-pair-hom-zero", ok, {"pairs": rows}, witnesses)


def check_ind_iso_reflect(inst: Instance) -> VerifyReport:
    """For indecomposables U, U': Ind U = Ind U' iff U = gU' for some g."""
    G = inst.group
    N = _need_normal(inst)
    sub, _ = N.as_group()
    mods = _modules(inst, sub, default_trivial=False)
    for U in mods:
        if not is_indecomposable(U):
            raise PreconditionFailed("input module is decomposable")
    inds = [induce(U, N) for U in mods]
    ok, witnesses, rows = True, [], []
    for i in range(len(mods)):
        for j in range(i + 1, len(mods)):
            iso_ind = inds[i].dim == inds[j].dim and is_isomorphic(inds[i], inds[j]) is not None
            conj = mods[i].dim == mods[j].dim and any(
                is_isomorphic(mods[i], conjugate_module(g, mods[j], N)) is not None for g in range(G.order)
            )
            rows.append({"pair": [i, j], "induced_iso": iso_ind, "conjugate": conj})
            if iso_ind != conj:
                ok = False
                witnesses.append(rows[-1])
    return VerifyReport("ind-iso-reflect", ok, {"pairs": rows}, witnesses)


def _chosen_block(inst: Instance, A):
    blocks = st.central_blocks(A)
    if inst.block is None:
        return principal_block(A)
    if not 0 <= inst.block < len(blocks):
        raise PreconditionFailed(f"block index {inst.block} out of range 0..{len(blocks) - 1}")
    return blocks[inst.block]


def check_morita_inertia(inst: Instance) -> VerifyReport:
    """Ind from the inertia group H of b matches simples over b and keeps Hom dimensions."""
    G, F = inst.group, inst.field
    N = _need_normal(inst)
    sub, nemb = N.as_group()
    b = _chosen_block(inst, kG(sub, F))
    H = block_inertia_group(b, N)
    hgrp, _ = H.as_group()
    eb_in_H = restrict_vector(b, N, H)
    eb_in_G = restrict_vector(b, N, None)

    def over_b(S, vec):
        return bool(np.any(S.act(vec)))

    small = [S for S in _simples_of(hgrp, F) if over_b(S, eb_in_H)]
    big = [S for S in _simples_of(G, F) if over_b(S, eb_in_G)]
    images = [induce(S, H) for S in small]
    targets = []
    for X in images:
        hits = [j for j, S in enumerate(big) if S.dim == X.dim and is_isomorphic(S, X) is not None]
        targets.append(hits[0] if len(hits) == 1 else None)
    bijective = None not in targets and sorted(targets) == list(range(len(big)))
    samples = small + [projective_cover(S).module for S in small]
    hom_ok, mismatches = True, []
    for i, X in enumerate(samples):
        for j, Y in enumerate(samples):
            a, c = hom_dim(X, Y), hom_dim(induce(X, H), induce(Y, H))
            if a != c:
                hom_ok = False
                mismatches.append({"pair": [i, j], "small": a, "induced": c})
    details = {"inertia_order": H.order, "simples_small": len(small), "simples_big": len(big), "targets": targets}
    ok = bijective and hom_ok
    return VerifyReport("morita-inertia", ok, details, mismatches[:5] if not hom_ok else ([] if ok else [details]))


def restrict_vector(b, N: Subgroup, H: Subgroup | None) -> np.ndarray:
    """Block idempotent of kN written in the basis of kH (N <= H), or of kG when H is None."""
    from .modules import block_vector_in_parent

    v = block_vector_in_parent(b, N)
    if H is None:
        return v
    _, hemb = H.as_group()
    return v[hemb]


def _covering_block(inst: Instance, N: Subgroup, b) -> tuple[int, object]:
    cov = covering_blocks(inst.group, N, inst.field)
    j = next(i for i, c in enumerate(cov["small_blocks"]) if np.array_equal(c.vector, b.vector))
    covers = [i for i, row in enumerate(cov["covers"]) if row[j]]
    if len(covers) != 1:
        raise PreconditionFailed(f"block is covered by {len(covers)} blocks, expected one")
    return covers[0], cov["big_blocks"][covers[0]]


class _BlockFrame:
    """A block of a group algebra with its basic condensation."""

    def __init__(self, A, b):
        self.A = A
        self.B = block_of(A, b)
        self.cond = st.condense_basic(self.B)
        self.C = self.cond.basic

    def to_group(self, U: ModuleRep) -> ModuleRep:
        return from_block_module(expand_module(U, self.cond), self.A)

    def from_group(self, M: ModuleRep) -> ModuleRep:
        return condense_module(to_block_module(M, self.B), self.cond)


def check_main_theorem(inst: Instance) -> VerifyReport:
    """Induction maps the pair poset of b onto that of its covering block, preserving and reflecting order."""
    G, F = inst.group, inst.field
    N = _need_normal(inst)
    _need_p_quotient(inst, N)
    sub, _ = N.as_group()
    kN = kG(sub, F)
    b = _chosen_block(inst, kN)
    if block_inertia_group(b, N).order != G.order:
        raise PreconditionFailed("block is not invariant in the group")
    _, bt = _covering_block(inst, N, b)
    small = _BlockFrame(kN, b)
    big = _BlockFrame(kG(G, F), bt)
    p1 = enumerate_pairs(small.C, budget=inst.budget, threads=inst.threads)
    p2 = enumerate_pairs(big.C, budget=inst.budget, threads=inst.threads)

    touched: list[ModuleRep] = []

    def image(pair: SupportPair) -> SupportPair:
        ms = []
        for U in pair.m_summands:
            UN = small.to_group(U)
            touched.append(UN)
            for V, _ in decompose(big.from_group(induce(UN, N))):
                ms.append(V)
        ps = []
        for i in pair.p_labels:
            PN = small.to_group(projective(small.C, i))
            ps.extend(projective_labels(big.from_group(induce(PN, N))))
        return SupportPair(big.C, tuple(ms), tuple(sorted(set(ps))))

    by_key: dict = {}
    for j, q in enumerate(p2.nodes):
        by_key.setdefault(q.gkey, []).append(j)
    mapping, witnesses = [], []
    for i, pair in enumerate(p1.nodes):
        img = image(pair)
        hit = next((j for j in by_key.get(img.gkey, []) if same_pair(img, p2.nodes[j])), None)
        if hit is None:
            witnesses.append({"unmatched_node": i, "image_gkey": [list(g) for g in img.gkey]})
            hit = -1
        mapping.append(hit)
    if -1 in mapping:
        return VerifyReport("main-theorem", False, {"sizes": [p1.size, p2.size]}, witnesses)
    emb = verify_order_embedding(mapping, p1, p2)

    # condition (I) on the modules the run touched
    invariant = True
    for U in _unique(touched):
        if module_inertia_group(U, N).order != G.order:
            invariant = False
            witnesses.append({"not_invariant_dim": U.dim})
    details = {"sizes": [p1.size, p2.size], "mapping": mapping, "embedding": emb.as_dict(), "touched_modules": len(_unique(touched))}
    ok = emb.ok and emb.surjective and invariant
    return VerifyReport("main-theorem", ok, details, witnesses + emb.witnesses, hypothesis_spot_checked=invariant)


def _unique(mods: list[ModuleRep]) -> list[ModuleRep]:
    out: list[ModuleRep] = []
    for M in mods:
        if not any(M.dim == X.dim and is_isomorphic(M, X) is not None for X in out):
            out.append(M)
    return out


def check_eisele(inst: Instance) -> VerifyReport:
    """Pair posets of a block B of kG and of B (x) kP are isomorphic for a p-group P."""
    F = inst.field
    P = inst.p_group
    if P is None:
        raise PreconditionFailed("the check needs a p-group")
    n = P.order
    while n % F.p == 0:
        n //= F.p
    if n != 1:
        raise PreconditionFailed(f"second group is not a {F.p}-group")
    A = kG(inst.group, F)
    B = block_of(A, _chosen_block(inst, A))
    T = tensor_algebra(B, kG(P, F))
    p1 = enumerate_pairs(st.condense_basic(B).basic, budget=inst.budget, threads=inst.threads)
    p2 = enumerate_pairs(st.condense_basic(T).basic, budget=inst.budget, threads=inst.threads)
    iso = poset_isomorphic(p1, p2)
    details = {"sizes": [p1.size, p2.size], "isomorphism": iso}
    return VerifyReport("eisele", iso is not None, details, [] if iso is not None else [details])


def check_hypothesis_cyclic(inst: Instance) -> VerifyReport:
    """Inertia of each supplied indecomposable of b equals the inertia of b."""
    N = _need_normal(inst)
    sub, _ = N.as_group()
    kN = kG(sub, inst.field)
    b = _chosen_block(inst, kN)
    Ib = block_inertia_group(b, N)
    ok, witnesses, rows = True, [], []
    for U in _modules(inst, sub, default_trivial=False):
        if not lies_in_block(U, b.vector):
            raise PreconditionFailed("module does not lie in the block")
        IU = module_inertia_group(U, N)
        rows.append({"dim": U.dim, "module_inertia": IU.order, "block_inertia": Ib.order})
        if set(IU.elements) != set(Ib.elements):
            ok = False
            witnesses.append(rows[-1])
    return VerifyReport("hypothesis-cyclic", ok, {"modules": rows}, witnesses, hypothesis_spot_checked=True)


CHECKS = {
    "mackey": check_mackey,
    "green": check_green,
    "clifford-simple": check_clifford_simple,
    "unique-extension": check_unique_extension,
    "ind-res-one-simple": check_ind_res_one_simple,
    "ind-proj": check_ind_proj,
    "ind-tau": check_ind_tau,
    "tau-rigid-conj": check_tau_rigid_conj,
    "ind-pair-hom-zero": check_ind_pair_hom_zero,
    "ind-iso-reflect": check_ind_iso_reflect,
    "morita-inertia": check_morita_inertia,
    "main-theorem": check_main_theorem,
    "eisele": check_eisele,
    "hypothesis-cyclic": check_hypothesis_cyclic,
}


def verify(check_name: str, instance: Instance) -> VerifyReport:
    try:
        fn = CHECKS[check_name]
    except KeyError:
        raise PreconditionFailed(f"unknown check {check_name!r}; known: {sorted(CHECKS)}") from None
    return fn(instance)
