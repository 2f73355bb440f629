"""Support pairs (M, P), the validity test and the correspondence with two-term complexes."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..algebra import structure as st
from ..algebra.core import FinDimAlgebra, quotient_algebra, two_sided_ideal
from ..errors import BadSummand, NotProjective, NotSilting
from ..modrep.decompose import decompose, is_isomorphic
from ..modrep.hom import generates, hom_dim, top_multiplicities
from ..modrep.module import ModuleRep, direct_sum, zero_module
from ..modrep.presentation import is_projective, min_presentation, proj_sum_module, tau


def _gvector_of_module(M: ModuleRep) -> tuple[int, ...]:
    pres = min_presentation(M)
    g = [0] * st.num_simples(M.algebra)
    for i in pres.p0:
        g[i] += 1
    for i in pres.p1:
        g[i] -= 1
    return tuple(g)


def _p_gvector(A, i: int) -> tuple[int, ...]:
    g = [0] * st.num_simples(A)
    g[i] = -1
    return tuple(g)


def module_label(M: ModuleRep) -> str:
    dv = ",".join(str(x) for x in M.dimension_vector())
    gv = ",".join(str(x) for x in _gvector_of_module(M))
    return f"M[{dv}]g[{gv}]"


def projective_label(i: int) -> str:
    return f"P({i + 1})"


@dataclass(frozen=True, eq=False)
class SupportPair:
    """A basic module M (as its indecomposable summands) and a basic projective P (as labels).

    Summands are kept in the order of their g-vectors, M-summands and
    P-summands interleaved; ``summand_kinds`` records which is which.
    """

    algebra: FinDimAlgebra
    m_summands: tuple
    p_labels: tuple
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        A = self.algebra
        entries = [(_gvector_of_module(U), "M", U) for U in self.m_summands]
        entries += [(_p_gvector(A, i), "P", i) for i in self.p_labels]
        entries.sort(key=lambda t: (t[0], t[1]))
        object.__setattr__(self, "m_summands", tuple(U for _, kind, U in entries if kind == "M"))
        object.__setattr__(self, "p_labels", tuple(i for _, kind, i in entries if kind == "P"))
        object.__setattr__(self, "_entries", tuple(entries))

    @property
    def summands(self):
        """(kind, object) per summand in canonical order."""
        return tuple((kind, obj) for _, kind, obj in self._entries)

    @property
    def gkey(self) -> tuple:
        return tuple(g for g, _, _ in self._entries)

    @property
    def M(self) -> ModuleRep:
        if "M" not in self._cache:
            self._cache["M"] = direct_sum(self.m_summands) if self.m_summands else zero_module(self.algebra)
        return self._cache["M"]

    @property
    def P(self) -> ModuleRep:
        if "P" not in self._cache:
            self._cache["P"] = proj_sum_module(self.algebra, self.p_labels)
        return self._cache["P"]

    def m_labels(self) -> list[str]:
        return [module_label(U) for U in self.m_summands]

    def p_label_strings(self) -> list[str]:
        return [projective_label(i) for i in self.p_labels]

    def labels(self) -> list[str]:
        return [module_label(o) if k == "M" else projective_label(o) for k, o in self.summands]

    def __repr__(self):
        return f"<SupportPair M={self.m_labels()} P={self.p_label_strings()}>"


def projective_labels(P: ModuleRep) -> tuple[int, ...]:
    """Labels of the indecomposable summands of a projective module, with repetition."""
    if P.dim == 0:
        return ()
    if not is_projective(P):
        raise NotProjective("the second component must be projective")
    out = []
    for U, k in decompose(P):
        top = top_multiplicities(U)
        out.extend([int(np.flatnonzero(top)[0])] * k)
    return tuple(sorted(out))


def support_pair(M: ModuleRep, P: ModuleRep | None = None) -> SupportPair:
    """Build a pair from modules; repeated summands are collapsed to one copy."""
    A = M.algebra
    P = zero_module(A) if P is None else P
    M.same_algebra(P)
    ms = tuple(U for U, _ in decompose(M)) if M.dim else ()
    ps = tuple(sorted(set(projective_labels(P))))
    return SupportPair(A, ms, ps)


def regular_pair(A: FinDimAlgebra) -> SupportPair:
    from ..modrep.presentation import projective

    return SupportPair(A, tuple(projective(A, i) for i in range(st.num_simples(A))), ())


def zero_pair(A: FinDimAlgebra) -> SupportPair:
    return SupportPair(A, (), tuple(range(st.num_simples(A))))


# ----------------------------------------------------------------------
# validity


@dataclass(frozen=True)
class PairVerdict:
    tau_rigid: bool
    hom_p_m_zero: bool
    count: int
    count_ok: bool
    m_basic: bool
    p_basic: bool
    idempotent: tuple
    quotient_simples: int
    tau_tilting_over_quotient: bool

    @property
    def valid(self) -> bool:
        return self.tau_rigid and self.hom_p_m_zero and self.count_ok and self.m_basic and self.p_basic

    def as_dict(self) -> dict:
        return {
            "valid": self.valid,
            "tau_rigid": self.tau_rigid,
            "hom_p_m_zero": self.hom_p_m_zero,
            "count": self.count,
            "count_ok": self.count_ok,
            "m_basic": self.m_basic,
            "p_basic": self.p_basic,
            "idempotent": list(self.idempotent),
            "quotient_simples": self.quotient_simples,
            "tau_tilting_over_quotient": self.tau_tilting_over_quotient,
        }


def is_tau_rigid(M: ModuleRep) -> bool:
    return M.dim == 0 or hom_dim(M, tau(M)) == 0


def is_support_tau_tilting(M: ModuleRep, P: ModuleRep | None = None) -> PairVerdict:
    """Check each condition separately, including tau-tilting over A / AeA where add P = add Ae."""
    A = M.algebra
    F = A.field
    P = zero_module(A) if P is None else P
    M.same_algebra(P)
    plabels = projective_labels(P)
    mparts = decompose(M) if M.dim else []
    m_basic = all(k == 1 for _, k in mparts)
    p_basic = len(set(plabels)) == len(plabels)
    rigid = is_tau_rigid(M)
    hom_zero = M.dim == 0 or P.dim == 0 or hom_dim(P, M) == 0
    n = st.num_simples(A)
    count = len(mparts) + len(set(plabels))
    es = st.basic_idempotents(A)
    e = np.zeros(A.dim, dtype=np.int64)
    for i in sorted(set(plabels)):
        e = F.add(e, es[i])
    # M as a module over A / AeA
    quotient_simples = n - len(set(plabels))
    over_quotient = False
    if hom_zero and rigid:
        I = two_sided_ideal(A, e[None, :])
        if I.shape[0] == A.dim:
            over_quotient = M.dim == 0
            quotient_simples = 0
        else:
            Q = quotient_algebra(A, I)
            quotient_simples = st.num_simples(Q)
            if M.dim:
                act = M.action[Q.lift]
                MQ = ModuleRep(Q, act)
                over_quotient = is_tau_rigid(MQ) and len(decompose(MQ)) == quotient_simples
            else:
                over_quotient = quotient_simples == 0
    return PairVerdict(
        tau_rigid=rigid,
        hom_p_m_zero=hom_zero,
        count=count,
        count_ok=count == n,
        m_basic=m_basic,
        p_basic=p_basic,
        idempotent=tuple(int(x) for x in e),
        quotient_simples=quotient_simples,
        tau_tilting_over_quotient=over_quotient,
    )


def pair_is_valid(pair: SupportPair) -> bool:
    return is_support_tau_tilting(pair.M, pair.P).valid


# ----------------------------------------------------------------------
# order and mutation


def geq(p1: SupportPair, p2: SupportPair) -> bool:
    """p1 >= p2 iff M2 is a quotient of a direct sum of copies of M1."""
    if p1.algebra is not p2.algebra:
        from ..errors import AlgebraMismatch

        raise AlgebraMismatch("pairs live over different algebras")
    if p2.M.dim == 0:
        return True
    if p1.M.dim == 0:
        return False
    return generates(p1.M, p2.M)


def same_pair(p1: SupportPair, p2: SupportPair) -> bool:
    """Equality up to isomorphism of the M summands."""
    if p1.gkey != p2.gkey or p1.p_labels != p2.p_labels:
        return False
    return is_isomorphic(p1.M, p2.M) is not None


def from_pair(pair: SupportPair):
    """The two-term complex (P_1 + P -> P_0) attached to a pair."""
    from ..twosilt.silting import from_summands, presentation_complex
    from ..twosilt.complex import stalk

    parts = []
    for kind, obj in pair.summands:
        parts.append(presentation_complex(obj) if kind == "M" else stalk(pair.algebra, (obj,), -1))
    if not parts:
        raise NotSilting("the zero algebra has no pairs")
    return from_summands(parts)


def to_pair(x) -> SupportPair:
    """(H^0(x), Q) where (Q -> 0) is the largest such summand of x."""
    from ..twosilt.silting import is_silting, summands

    if not is_silting(x).silting:
        raise NotSilting("complex is not two-term silting")
    return pair_of_summands(x.algebra, summands(x))


def pair_of_summands(A, parts) -> SupportPair:
    from ..twosilt.silting import homology

    ms = tuple(homology(p) for p in parts if p.deg_0)
    ps = tuple(p.deg_m1[0] for p in parts if not p.deg_0)
    return SupportPair(A, ms, ps)


def mutate(pair: SupportPair, x: int) -> SupportPair:
    """Exchange the summand with index x (in ``pair.summands`` order)."""
    from ..twosilt.silting import silt_mutate_ex, summands

    n = len(pair.summands)
    if not 0 <= x < n:
        raise BadSummand(f"summand index {x} out of range 0..{n - 1}")
    c = from_pair(pair)
    new, _, _ = silt_mutate_ex(c, x)
    return pair_of_summands(pair.algebra, summands(new))
