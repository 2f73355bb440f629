"""Krull-Schmidt decomposition, isomorphism testing and transport to the basic algebra."""

from __future__ import annotations

import itertools

import numpy as np

from ..algebra import structure as st
from ..errors import InternalError, NotSplitField
from ..exactla import linalg as la
from ..exactla import poly as pl
from ..seeding import resolve
from .hom import end_algebra_mats, end_radical, hom_dim, hom_space, radical_rows, socle_rows, top_multiplicities
from .module import ModuleRep, direct_sum, submodule, zero_module


DEFAULT_SEED = 0x7A17
SWEEP_LIMIT = 4096
MAX_SPLIT_TRIALS = 200


def matrix_minpoly(F, m: np.ndarray) -> tuple[int, ...]:
    d = m.shape[0]
    return st.krylov_minpoly(F, lambda v: F.matmul(m, v.reshape(d, d)).ravel(), np.eye(d, dtype=np.int64).ravel(), d)


def _poly_at(F, f, m: np.ndarray) -> np.ndarray:
    d = m.shape[0]
    acc = np.zeros((d, d), dtype=np.int64)
    eye = np.eye(d, dtype=np.int64)
    for c in reversed(f):
        acc = F.add(F.matmul(acc, m), F.mul(eye, int(c)))
    return acc


def _splitting_idempotent(M: ModuleRep, rng) -> np.ndarray | None:
    """A nontrivial idempotent endomorphism, or None when M is indecomposable."""
    F = M.field
    E = end_algebra_mats(M)
    top = E.shape[0] - end_radical(M).shape[0]
    if top == 1:
        return None
    for _ in range(MAX_SPLIT_TRIALS):
        c = F.random(rng, (E.shape[0],))
        phi = F.tensordot(c, E, axes=(0, 0))
        mu = matrix_minpoly(F, phi)
        facs = pl.factor_poly(F, mu)
        if len(facs) >= 2:
            f, k = facs[0]
            part = (1,)
            for _ in range(k):
                part = pl.mul(F, part, f)
            rest = pl.divmod_poly(F, mu, part)[0]
            u = pl.crt_idempotents(F, [part, rest])[0]
            return _poly_at(F, u, phi)
        if len(facs) == 1 and pl.deg(facs[0][0]) == top and top > 1:
            # the semisimple quotient of End(M) is a proper field extension
            raise NotSplitField(
                "endomorphism ring of an indecomposable summand is not split",
                minpoly=facs[0][0],
                suggested_degree=top,
            )
    raise InternalError("failed to find a splitting endomorphism")


def _decompose_embedded(M: ModuleRep, rng) -> list[tuple[ModuleRep, np.ndarray]]:
    """Indecomposable summands with inclusion matrices (d x d_summand)."""
    if M.dim == 0:
        return []
    e = _splitting_idempotent(M, rng)
    if e is None:
        return [(M, np.eye(M.dim, dtype=np.int64))]
    F = M.field
    out = []
    for idem in (e, F.sub(np.eye(M.dim, dtype=np.int64), e)):
        sub, rows = submodule(M, idem.T)
        for U, inc in _decompose_embedded(sub, rng):
            out.append((U, F.matmul(rows.T, inc)))
    return out


def loewy_layers(M: ModuleRep) -> tuple[tuple[int, ...], ...]:
    """Dimension vectors of the radical layers."""

    def build():
        layers = []
        cur = M
        while cur.dim:
            R = radical_rows(cur)
            top = top_multiplicities(cur)
            layers.append(top)
            cur = submodule(cur, R)[0] if R.shape[0] else zero_module(cur.algebra)
        return tuple(layers)

    return M.cached("loewy", build)


def invariant_key(M: ModuleRep) -> tuple:
    """Isomorphism-invariant sort key used for deterministic ordering."""
    soc = submodule(M, socle_rows(M))[0] if M.dim else M
    return (M.dim, M.dimension_vector(), loewy_layers(M), soc.dimension_vector() if M.dim else ())


def _iso_indecomposable(U: ModuleRep, V: ModuleRep) -> np.ndarray | None:
    """For indecomposables, non-isomorphisms form a proper subspace, so some basis map is invertible."""
    if U.dim != V.dim or U.dimension_vector() != V.dimension_vector():
        return None
    H = hom_space(U, V)
    for phi in H.basis:
        if la.rank(U.field, phi) == U.dim:
            return phi
    return None


def decompose_with_embeddings(M: ModuleRep, seed: int | None = None):
    """Indecomposable summands in canonical order, each with its inclusion into M."""
    seed = resolve(seed, DEFAULT_SEED)

    def build():
        rng = np.random.default_rng(seed)
        parts = _decompose_embedded(M, rng)
        keyed = sorted(range(len(parts)), key=lambda i: (invariant_key(parts[i][0]), i))
        return [parts[i] for i in keyed]

    return M.cached(("decompose", seed), build)


def decompose(M: ModuleRep, seed: int | None = None) -> list[tuple[ModuleRep, int]]:
    """Multiset of indecomposable summands as (representative, multiplicity)."""
    groups: list[list] = []
    for U, _ in decompose_with_embeddings(M, seed):
        for g in groups:
            if invariant_key(g[0]) == invariant_key(U) and _iso_indecomposable(g[0], U) is not None:
                g[1] += 1
                break
        else:
            groups.append([U, 1])
    return [(U, k) for U, k in groups]


def num_summands(M: ModuleRep) -> int:
    """|M|: the number of non-isomorphic indecomposable summands."""
    return len(decompose(M))


def is_basic_module(M: ModuleRep) -> bool:
    return all(k == 1 for _, k in decompose(M))


def basic_part(M: ModuleRep) -> ModuleRep:
    """Direct sum of one copy of each indecomposable summand."""
    parts = [U for U, _ in decompose(M)]
    return direct_sum(parts) if parts else zero_module(M.algebra)


def is_isomorphic(M: ModuleRep, N: ModuleRep, seed: int | None = None) -> np.ndarray | None:
    """An invertible module map M -> N, or None."""
    seed = resolve(seed, DEFAULT_SEED)
    M.same_algebra(N)
    F = M.field
    if M.dim != N.dim:
        return None
    if M.dim == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if M.dimension_vector() != N.dimension_vector():
        return None
    h = hom_dim(M, N)
    if h != hom_dim(M, M) or h != hom_dim(N, N):
        return None
    H = hom_space(M, N)
    if F.q**h <= SWEEP_LIMIT:
        for c in itertools.product(range(F.q), repeat=h):
            phi = H.combine(c)
            if la.rank(F, phi) == M.dim:
                return phi
        return None
    rng = np.random.default_rng(seed)
    for _ in range(64):
        phi = H.combine(F.random(rng, (h,)))
        if la.rank(F, phi) == M.dim:
            return phi
    return _iso_by_matching(M, N, seed)


def _iso_by_matching(M: ModuleRep, N: ModuleRep, seed: int) -> np.ndarray | None:
    F = M.field
    dm = decompose_with_embeddings(M, seed)
    dn = list(decompose_with_embeddings(N, seed))
    if len(dm) != len(dn):
        return None
    used = [False] * len(dn)
    cols_m, cols_n = [], []
    for U, inc_u in dm:
        for j, (V, inc_v) in enumerate(dn):
            if used[j]:
                continue
            phi = _iso_indecomposable(U, V)
            if phi is not None:
                used[j] = True
                cols_m.append(inc_u)
                cols_n.append(F.matmul(inc_v, phi))
                break
        else:
            return None
    Tm = np.hstack(cols_m)
    Tn = np.hstack(cols_n)
    return F.matmul(Tn, la.inverse(F, Tm))


# ----------------------------------------------------------------------
# Morita transport


def condense_module(M: ModuleRep, cond: st.Condensation | None = None) -> ModuleRep:
    """e*M as a module over the basic algebra e*A*e."""
    A = M.algebra
    cond = cond if cond is not None else st.condense_basic(A)
    if cond.source is not A:
        raise InternalError("condensation belongs to another algebra")
    if cond.basic is A:
        return M
    F, B = M.field, cond.basic
    if M.dim == 0:
        return zero_module(B)
    R = la.row_basis(F, M.act(cond.idem).T)
    if R.shape[0] == 0:
        return zero_module(B)
    piv = [int(np.flatnonzero(r)[0]) for r in R]
    mats = F.tensordot(B.embedding, M.action, axes=(1, 0))  # basic basis -> matrices on M
    imgs = F.tensordot(mats, R.T, axes=(2, 0))
    return ModuleRep(B, imgs[:, piv, :], check=False)


def expand_module(N: ModuleRep, cond: st.Condensation) -> ModuleRep:
    """Inverse transport A*e (x) N, computed from a presentation of N."""
    from .presentation import cokernel, min_presentation

    if cond.basic is cond.source:
        return N
    if N.algebra is not cond.basic:
        raise InternalError("module does not live over the condensed algebra")
    A = cond.source
    pres = min_presentation(N)
    X = pres.f1
    XA = A.field.tensordot(X, cond.basic.embedding, axes=(2, 0)) if X.size else np.zeros(X.shape[:2] + (A.dim,), dtype=np.int64)
    return cokernel(A, pres.p1, pres.p0, XA)[0]
