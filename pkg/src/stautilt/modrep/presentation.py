"""Projective modules, projective covers, minimal presentations and the AR translate.

A direct sum of indecomposable projectives is described by a tuple of
labels (indices into the basic idempotents of the algebra).  A map between
two such sums is an array ``X`` of shape (len(source), len(target), dim A)
whose entry ``X[c, r]`` lies in ``e_c A e_r`` and acts by right
multiplication; composing "X then Y" is the matrix product ``X @ Y``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..algebra import structure as st
from ..algebra.core import FinDimAlgebra
from ..errors import InternalError
from ..exactla import linalg as la
from .hom import radical_rows, top_multiplicities
from .module import ModuleRep, dual_of_right, quotient, submodule, zero_module


# ----------------------------------------------------------------------
# projectives


def proj_basis(A: FinDimAlgebra, i: int) -> np.ndarray:
    """Row basis (rref) of A*e_i inside A."""

    def build():
        e = st.basic_idempotents(A)[i]
        return la.row_basis(A.field, A.right_matrix(e).T)

    return A.cached(f"proj_basis_{i}", build)


def right_proj_basis(A: FinDimAlgebra, i: int) -> np.ndarray:
    """Row basis (rref) of e_i*A inside A."""

    def build():
        e = st.basic_idempotents(A)[i]
        return la.row_basis(A.field, A.left_matrix(e).T)

    return A.cached(f"rproj_basis_{i}", build)


def _pivots(rows: np.ndarray) -> list[int]:
    return [int(np.flatnonzero(r)[0]) for r in rows]


def projective(A: FinDimAlgebra, i: int) -> ModuleRep:
    """The indecomposable projective P(i) = A e_i."""

    def build():
        B = proj_basis(A, i)
        M, _ = submodule(_regular(A), B)
        M.name = f"P({i + 1})"
        return M

    return A.cached(f"projective_{i}", build)


def _regular(A):
    from .module import regular_module

    return regular_module(A)


def projective_indecomposables(A: FinDimAlgebra) -> list[ModuleRep]:
    return [projective(A, i) for i in range(st.num_simples(A))]


def simple(A: FinDimAlgebra, i: int) -> ModuleRep:
    def build():
        P = projective(A, i)
        S, _ = quotient(P, radical_rows(P))
        S.name = f"S({i + 1})"
        return S

    return A.cached(f"simple_{i}", build)


def simples(A: FinDimAlgebra) -> list[ModuleRep]:
    return [simple(A, i) for i in range(st.num_simples(A))]


def proj_sum_module(A: FinDimAlgebra, labels) -> ModuleRep:
    from .module import direct_sum

    labels = tuple(labels)
    if not labels:
        return zero_module(A)
    return direct_sum([projective(A, i) for i in labels])


def proj_dims(A: FinDimAlgebra, labels) -> list[int]:
    return [proj_basis(A, i).shape[0] for i in labels]


def proj_map_matrix(A: FinDimAlgebra, src, tgt, X) -> np.ndarray:
    """Module-level matrix (d_tgt x d_src) of a map between sums of projectives."""
    F = A.field
    src, tgt = tuple(src), tuple(tgt)
    ds, dt = proj_dims(A, src), proj_dims(A, tgt)
    out = np.zeros((sum(dt), sum(ds)), dtype=np.int64)
    if not src or not tgt:
        return out
    X = np.asarray(X, dtype=np.int64)
    so = np.concatenate([[0], np.cumsum(ds)]).astype(int)
    to = np.concatenate([[0], np.cumsum(dt)]).astype(int)
    for c, i in enumerate(src):
        Bi = proj_basis(A, i)
        for r, j in enumerate(tgt):
            x = X[c, r]
            if not np.any(x):
                continue
            prods = F.matmul(A.right_matrix(x), Bi.T)  # columns: u * x for u in basis of A e_i
            piv = _pivots(proj_basis(A, j))
            out[to[r] : to[r + 1], so[c] : so[c + 1]] = prods[piv, :]
    return out


def module_map_to_proj_matrix(A: FinDimAlgebra, src, tgt, phi) -> np.ndarray:
    """Inverse of proj_map_matrix: read off X from a module map."""
    src, tgt = tuple(src), tuple(tgt)
    ds, dt = proj_dims(A, src), proj_dims(A, tgt)
    so = np.concatenate([[0], np.cumsum(ds)]).astype(int)
    to = np.concatenate([[0], np.cumsum(dt)]).astype(int)
    es = st.basic_idempotents(A)
    X = np.zeros((len(src), len(tgt), A.dim), dtype=np.int64)
    for c, i in enumerate(src):
        gen = es[i][_pivots(proj_basis(A, i))]
        col = A.field.matmul(phi[:, so[c] : so[c + 1]], gen)
        for r, j in enumerate(tgt):
            X[c, r] = A.field.matmul(col[to[r] : to[r + 1]], proj_basis(A, j))
    return X


def compose(A: FinDimAlgebra, X, Y) -> np.ndarray:
    """X then Y: (X @ Y)[c, s] = sum_r X[c, r] * Y[r, s]."""
    X = np.asarray(X, dtype=np.int64)
    Y = np.asarray(Y, dtype=np.int64)
    if X.shape[0] == 0 or Y.shape[1] == 0 or X.shape[1] == 0:
        return np.zeros((X.shape[0], Y.shape[1], A.dim), dtype=np.int64)
    F = A.field
    # left[c, r, j, k] = sum_i X[c, r, i] mult[i, j, k]
    left = F.tensordot(X, A.mult, axes=(2, 0))
    return F.einsum("crjk,rsj->csk", left, Y)


def cokernel(A: FinDimAlgebra, src, tgt, X) -> tuple[ModuleRep, np.ndarray]:
    """Cokernel of a map of projectives, with the projection from the target module."""
    tgt_mod = proj_sum_module(A, tgt)
    if tgt_mod.dim == 0:
        return tgt_mod, np.zeros((0, 0), dtype=np.int64)
    mat = proj_map_matrix(A, src, tgt, X)
    return quotient(tgt_mod, mat.T)


# ----------------------------------------------------------------------
# covers and presentations


@dataclass(frozen=True, eq=False)
class ProjCover:
    labels: tuple[int, ...]
    module: ModuleRep  # the projective P0
    map: np.ndarray  # d_M x d_P0
    generators: np.ndarray  # columns: images of the generators e_i of each summand


def projective_cover(M: ModuleRep) -> ProjCover:
    def build():
        A, F = M.algebra, M.field
        if M.dim == 0:
            return ProjCover((), zero_module(A), np.zeros((0, 0), dtype=np.int64), np.zeros((0, 0), dtype=np.int64))
        es = st.basic_idempotents(A)
        mults = top_multiplicities(M)
        R = radical_rows(M)
        span = la.EchelonSpan(F, M.dim)
        for r in R:
            span.add(r)
        labels, gens = [], []
        for i, (e, t) in enumerate(zip(es, mults)):
            if t == 0:
                continue
            Ei = M.act(e)
            cols = la.row_basis(F, Ei.T)  # basis of e_i M as rows
            got = 0
            for v in cols:
                if got == t:
                    break
                if span.add(v):
                    labels.append(i)
                    gens.append(v)
                    got += 1
            if got != t:
                raise InternalError("could not lift the top of a module")
        P = proj_sum_module(A, labels)
        # map: u in A e_i (summand c) -> u * m_c
        blocks = []
        for c, i in enumerate(labels):
            B = proj_basis(A, i)
            acts = F.tensordot(B, M.action, axes=(1, 0))  # k, d, d
            blocks.append(F.matmul(acts, gens[c]).T)  # d x k
        f0 = np.hstack(blocks)
        if la.rank(F, f0) != M.dim:
            raise InternalError("projective cover map is not surjective")
        return ProjCover(tuple(labels), P, f0, np.array(gens).T)

    return M.cached("proj_cover", build)


def syzygy(M: ModuleRep) -> tuple[ModuleRep, np.ndarray]:
    """Omega(M) = ker of the projective cover, with its inclusion rows in P0."""

    def build():
        pc = projective_cover(M)
        if M.dim == 0:
            return zero_module(M.algebra), np.zeros((0, 0), dtype=np.int64)
        K = la.nullspace(M.field, pc.map)
        if K.shape[0] == 0:
            return zero_module(M.algebra), np.zeros((0, pc.module.dim), dtype=np.int64)
        return submodule(pc.module, K)

    return M.cached("syzygy", build)


@dataclass(frozen=True, eq=False)
class ProjPresentation:
    p1: tuple[int, ...]
    p0: tuple[int, ...]
    f1: np.ndarray  # (len p1, len p0, dim A)
    f0: np.ndarray  # d_M x d_P0


def min_presentation(M: ModuleRep) -> ProjPresentation:
    def build():
        A = M.algebra
        pc = projective_cover(M)
        omega, rows = syzygy(M)
        if omega.dim == 0:
            return ProjPresentation((), pc.labels, np.zeros((0, len(pc.labels), A.dim), dtype=np.int64), pc.map)
        pc1 = projective_cover(omega)
        incl = rows.T  # d_P0 x d_omega
        phi = A.field.matmul(incl, pc1.map)  # P1 -> P0 at module level
        X = module_map_to_proj_matrix(A, pc1.labels, pc.labels, phi)
        return ProjPresentation(pc1.labels, pc.labels, X, pc.map)

    return M.cached("min_presentation", build)


def is_projective(M: ModuleRep) -> bool:
    return M.dim == 0 or syzygy(M)[0].dim == 0


def tau(M: ModuleRep) -> ModuleRep:
    """The Auslander-Reiten translate D Tr M via a minimal presentation."""

    def build():
        A, F = M.algebra, M.field
        pres = min_presentation(M)
        if not pres.p1:
            return zero_module(A)
        # Hom(-, A) turns X into y -> X y between right projectives
        src, tgt = pres.p0, pres.p1
        Rt = [right_proj_basis(A, j) for j in tgt]
        Rs = [right_proj_basis(A, i) for i in src]
        dt = [r.shape[0] for r in Rt]
        to = np.concatenate([[0], np.cumsum(dt)]).astype(int)
        D = sum(dt)
        image_cols = []
        for c, Bc in enumerate(Rs):
            for y in Bc:
                col = np.zeros(D, dtype=np.int64)
                for r in range(len(tgt)):
                    v = A.mul(pres.f1[r, c], y)
                    col[to[r] : to[r + 1]] = v[_pivots(Rt[r])]
                image_cols.append(col)
        image = la.row_basis(F, np.array(image_cols)) if image_cols else np.zeros((0, D), dtype=np.int64)
        # right action of the basis on the target sum
        Ract = np.zeros((A.dim, D, D), dtype=np.int64)
        for r, Br in enumerate(Rt):
            piv = _pivots(Br)
            for b in range(A.dim):
                prods = F.matmul(A.right_matrix(A.basis_vector(b)), Br.T)  # columns: y * b
                Ract[b, to[r] : to[r + 1], to[r] : to[r + 1]] = prods[piv, :]
        Q, _ = _quotient_plain(F, Ract, image)
        return dual_of_right(A, Q)

    return M.cached("tau", build)


def _quotient_plain(F, act, rows):
    """Quotient of a space with operators `act` by an invariant subspace (rows)."""
    D = act.shape[1]
    R = la.row_basis(F, rows) if rows.shape[0] else np.zeros((0, D), dtype=np.int64)
    piv = [int(np.flatnonzero(r)[0]) for r in R]
    free = [c for c in range(D) if c not in set(piv)]
    proj = np.eye(D, dtype=np.int64)
    if R.shape[0]:
        proj = F.sub(proj, F.matmul(R.T, proj[piv, :]))
    proj = proj[free, :]
    lift = np.zeros((D, len(free)), dtype=np.int64)
    lift[free, np.arange(len(free))] = 1
    a = F.tensordot(act, lift, axes=(2, 0))
    q = F.tensordot(a, proj, axes=(1, 1)).transpose(0, 2, 1)
    return q, proj


def tau_inverse_check(M: ModuleRep) -> bool:
    """tau M = 0 exactly when M is projective."""
    return (tau(M).dim == 0) == is_projective(M)
