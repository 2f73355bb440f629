"""Decomposition, silting tests, mutation and the order on two-term silting complexes."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from ..algebra import structure as st
from ..errors import BadSummand, InternalError, NotSilting
from ..exactla import linalg as la
from ..modrep.decompose import decompose
from ..modrep.module import ModuleRep
from ..modrep.presentation import cokernel, min_presentation
from .complex import (
    TwoTermComplex,
    _empty_map,
    chain_maps,
    compose_chain,
    direct_sum,
    hom_k,
    is_presilting,
    reduce_chain,
    reduced,
    regular_labels,
    stalk,
)


def intern(x: TwoTermComplex) -> TwoTermComplex:
    """Share one object per g-vector among indecomposable presilting complexes.

    Indecomposable presilting complexes are determined by their g-vectors,
    so sharing keeps Hom caches warm across a mutation search.
    """
    table = x.algebra.cached("twosilt_intern", dict)
    return table.setdefault(x.gvector, x)


def zero_complex(A) -> TwoTermComplex:
    return TwoTermComplex(A, (), (), _empty_map(A, 0, 0))


def homology(x: TwoTermComplex) -> ModuleRep:
    """H^0 of the complex, the cokernel of the differential."""
    hit = x._cache.get("h0")
    if hit is None:
        hit = cokernel(x.algebra, x.deg_m1, x.deg_0, x.d)[0]
        x._cache["h0"] = hit
    return hit


def presentation_complex(M: ModuleRep) -> TwoTermComplex:
    """The minimal projective presentation of M as a two-term complex."""
    pres = min_presentation(M)
    return TwoTermComplex(M.algebra, pres.p1, pres.p0, pres.f1)


def from_summands(parts) -> TwoTermComplex:
    """Direct sum of indecomposable complexes, remembered in canonical order."""
    parts = sorted(parts, key=lambda p: (p.gvector, p.deg_m1, p.deg_0))
    if not parts:
        raise InternalError("a silting complex needs summands")
    x = direct_sum(parts)
    x._cache["summands"] = tuple(parts)
    return x


def summands(x: TwoTermComplex) -> tuple[TwoTermComplex, ...]:
    """Indecomposable summands (with repetition) of the reduced form of x.

    A reduced complex is the minimal presentation of its H^0 plus a
    summand (Q -> 0), so the module decomposition of H^0 splits it.
    """
    hit = x._cache.get("summands")
    if hit is not None:
        return hit
    A = x.algebra
    r = reduced(x)
    parts: list[TwoTermComplex] = []
    used: Counter = Counter()
    if r.deg_0:
        for U, k in decompose(homology(r)):
            c = presentation_complex(U)
            parts.extend([c] * k)
            used.update(c.deg_m1 * k)
    left = Counter(r.deg_m1)
    left.subtract(used)
    if any(v < 0 for v in left.values()):
        raise InternalError("degree -1 term is smaller than the presentation it contains")
    for i in sorted(left):
        parts.extend([stalk(A, (i,), -1)] * left[i])
    parts.sort(key=lambda p: (p.gvector, p.deg_m1, p.deg_0))
    out = tuple(parts)
    x._cache["summands"] = out
    return out


def num_distinct_summands(x: TwoTermComplex) -> int:
    r = reduced(x)
    n = len({i for p in summands(r) if not p.deg_0 for i in p.deg_m1})
    if r.deg_0:
        n += len(decompose(homology(r)))
    return n


@dataclass(frozen=True)
class SiltingVerdict:
    reduced: bool
    presilting: bool
    summands: int
    silting: bool


def is_silting(x: TwoTermComplex) -> SiltingVerdict:
    from .complex import is_reduced

    r = reduced(x)
    pre = is_presilting(r)
    count = num_distinct_summands(r)
    return SiltingVerdict(is_reduced(x), pre, count, pre and count == st.num_simples(x.algebra))


def silt_geq(x: TwoTermComplex, y: TwoTermComplex) -> bool:
    """x >= y iff Hom_K(x, y[1]) = 0; higher shifts vanish for two-term complexes."""
    return hom_k(x, y, 1).dim == 0


def regular_silting(A) -> TwoTermComplex:
    return from_summands([intern(stalk(A, (i,), 0)) for i in regular_labels(A)])


def shifted_regular_silting(A) -> TwoTermComplex:
    return from_summands([intern(stalk(A, (i,), -1)) for i in regular_labels(A)])


# ----------------------------------------------------------------------
# mutation


def _approximation(X: TwoTermComplex, others, left: bool):
    """Minimal left (X -> U') or right (U' -> X) approximation by sums of `others`."""
    A = X.algebra
    F = A.field
    chosen = []  # (j, f) with f = (f1, f0)
    for j, Uj in enumerate(others):
        cs = chain_maps(X, Uj) if left else chain_maps(Uj, X)
        n = cs.cycles.shape[1]
        span = la.EchelonSpan(F, n)
        for b in cs.boundaries:
            span.add(b)
        for k, Uk in enumerate(others):
            if left:
                through = chain_maps(X, Uk)
                rad_cs = chain_maps(Uk, Uj)
            else:
                through = chain_maps(Uk, X)
                rad_cs = chain_maps(Uj, Uk)
            rad = rad_cs.radical_cycles() if k == j else rad_cs.cycles
            if through.dim == 0 or rad.shape[0] == 0:
                continue
            fs = list(zip(*through.split(through.reps)))
            gs = list(zip(*rad_cs.split(rad)))
            for f in fs:
                for g in gs:
                    comp = compose_chain(A, f, g) if left else compose_chain(A, g, f)
                    span.add(cs.join(*comp))
        for z in cs.cycles:
            if span.add(z):
                f1, f0 = cs.split(z)
                chosen.append((j, (f1, f0)))
    return chosen


def _concat(arrs, axis, shape):
    arrs = [a for a in arrs]
    if not arrs:
        return np.zeros(shape, dtype=np.int64)
    return np.concatenate(arrs, axis=axis)


def mutate_summand(X: TwoTermComplex, others) -> tuple[TwoTermComplex, str]:
    """Exchange X against the complement `others`; returns (new summand, 'left' | 'right').

    Left mutation (new object smaller) is tried first; if its cone leaves the
    two-term window the right mutation is used.
    """
    A = X.algebra
    F = A.field
    zero = zero_complex(A)
    # left: X -> U'
    approx = _approximation(X, others, left=True)
    Up = direct_sum([others[j] for j, _ in approx]) if approx else zero
    f1 = _concat([f[0] for _, f in approx], 1, (len(X.deg_m1), 0, A.dim))
    f0 = _concat([f[1] for _, f in approx], 1, (len(X.deg_0), 0, A.dim))
    labels = [X.deg_m1, X.deg_0 + Up.deg_m1, Up.deg_0]
    d2 = np.concatenate([F.neg(X.d), f1], axis=1)
    d1 = np.concatenate([f0, Up.d], axis=0)
    lab, diffs = reduce_chain(A, labels, [d2, d1])
    if not lab[0]:
        Y = TwoTermComplex(A, lab[1], lab[2], diffs[1])
        return Y, "left"
    # right: U'' -> X
    approx = _approximation(X, others, left=False)
    Upp = direct_sum([others[j] for j, _ in approx]) if approx else zero
    g1 = _concat([g[0] for _, g in approx], 0, (0, len(X.deg_m1), A.dim))
    g0 = _concat([g[1] for _, g in approx], 0, (0, len(X.deg_0), A.dim))
    labels = [Upp.deg_m1, Upp.deg_0 + X.deg_m1, X.deg_0]
    d2 = np.concatenate([F.neg(Upp.d), g1], axis=1)
    d1 = np.concatenate([g0, X.d], axis=0)
    lab, diffs = reduce_chain(A, labels, [d2, d1])
    if lab[2]:
        raise InternalError("neither mutation stays in the two-term window")
    Y = TwoTermComplex(A, lab[0], lab[1], diffs[0])
    return Y, "right"


def silt_mutate_ex(x: TwoTermComplex, k: int) -> tuple[TwoTermComplex, str, TwoTermComplex]:
    """Mutate at summand k; returns (new complex, direction, new summand)."""
    parts = summands(x)
    if not 0 <= k < len(parts):
        raise BadSummand(f"summand index {k} out of range 0..{len(parts) - 1}")
    if len(set(parts)) != len(parts) and len({p.gvector for p in parts}) != len(parts):
        raise NotSilting("mutation needs a basic complex")
    key = ("mutation", k)
    hit = x._cache.get(key)
    if hit is not None:
        return hit
    X = parts[k]
    others = [p for t, p in enumerate(parts) if t != k]
    Y, direction = mutate_summand(X, others)
    if Y.is_zero():
        raise InternalError("mutation produced a zero summand")
    Y = intern(Y)
    new = from_summands(others + [Y])
    out = (new, direction, Y)
    x._cache[key] = out
    return out


def silt_mutate(x: TwoTermComplex, k: int) -> TwoTermComplex:
    return silt_mutate_ex(x, k)[0]


def gkey(x: TwoTermComplex) -> tuple[tuple[int, ...], ...]:
    """Sorted g-vectors of the indecomposable summands."""
    return tuple(sorted(p.gvector for p in summands(x)))


def is_stalk_regular(x: TwoTermComplex) -> bool:
    return not x.deg_m1 and sorted(x.deg_0) == list(regular_labels(x.algebra))
