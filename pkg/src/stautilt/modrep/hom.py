"""Hom spaces by spinning, radicals and tops of modules, trace submodules."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..algebra import structure as st
from ..errors import InternalError
from ..exactla import linalg as la
from .module import ModuleRep, quotient, submodule, zero_module


@dataclass(frozen=True, eq=False)
class HomBasis:
    source: ModuleRep
    target: ModuleRep
    basis: np.ndarray  # (k, d_target, d_source)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def combine(self, coeffs) -> np.ndarray:
        F = self.source.field
        return F.tensordot(np.asarray(coeffs, dtype=np.int64), self.basis, axes=(0, 0))


def radical_rows(M: ModuleRep) -> np.ndarray:
    """Row basis of J(A) * M."""

    def build():
        F = M.field
        J = st.radical(M.algebra)
        if M.dim == 0 or J.shape[0] == 0:
            return np.zeros((0, M.dim), dtype=np.int64)
        mats = F.tensordot(J, M.action, axes=(1, 0))  # k, d, d
        cols = mats.transpose(0, 2, 1).reshape(-1, M.dim)
        return la.row_basis(F, cols)

    return M.cached("radical_rows", build)


def module_generators(M: ModuleRep) -> np.ndarray:
    """Standard basis vectors lifting a basis of the top; they generate M."""
    return M.cached("generators", lambda: la.complement_basis(M.field, radical_rows(M), M.dim))


@dataclass(frozen=True, eq=False)
class SpinData:
    """A basis of M reached from generators by the algebra generators.

    ``origin[k]`` is ("gen", i) or ("act", parent_index, generator_index);
    ``relations`` are (parent_index, generator_index, coeffs) meaning
    g * v_parent = sum coeffs[l] v_l.
    """

    basis: np.ndarray  # columns are v_k
    origin: list
    relations: list


def spin_data(M: ModuleRep) -> SpinData:
    def build():
        F = M.field
        gens = module_generators(M)
        gm = M.gen_mats
        span = la.EchelonSpan(F, M.dim)
        vecs: list[np.ndarray] = []
        origin: list = []
        pending: list = []  # (key, generator index or None, vector) outside the growing basis

        for i, g in enumerate(gens):
            if span.add(g):
                vecs.append(g)
                origin.append(("gen", i))
            else:
                pending.append((("gen", i), None, g))
        k = 0
        while k < len(vecs):
            for gi, G in enumerate(gm):
                w = F.matmul(G, vecs[k])
                if span.add(w):
                    vecs.append(w)
                    origin.append(("act", k, gi))
                else:
                    pending.append(((k,), gi, w))
            k += 1
        if len(vecs) != M.dim:
            raise InternalError("module generators do not generate the module")
        B = np.array(vecs, dtype=np.int64).T
        Binv = la.inverse(F, B)
        rels = [(key, gi, F.matmul(Binv, w)) for key, gi, w in pending]
        return SpinData(B, origin, rels)

    return M.cached("spin", build)


def hom_space(M: ModuleRep, N: ModuleRep) -> HomBasis:
    """Basis of Hom_A(M, N) as (d_N x d_M) matrices."""
    M.same_algebra(N)
    F = M.field
    dM, dN = M.dim, N.dim
    if dM == 0 or dN == 0:
        return HomBasis(M, N, np.zeros((0, dN, dM), dtype=np.int64))
    sd = spin_data(M)
    gens = module_generators(M)
    s = gens.shape[0]
    u = s * dN  # unknowns: images of the generators
    gmN = N.gen_mats
    # Y[k] is the linear map (unknowns -> N) giving the image of v_k
    Y: list[np.ndarray] = []
    for org in sd.origin:
        if org[0] == "gen":
            sel = np.zeros((dN, u), dtype=np.int64)
            i = org[1]
            sel[:, i * dN : (i + 1) * dN] = np.eye(dN, dtype=np.int64)
            Y.append(sel)
        else:
            _, parent, gi = org
            Y.append(F.matmul(gmN[gi], Y[parent]))
    Yarr = np.array(Y)  # n, dN, u
    eqs = []
    for org, gi, coeffs in sd.relations:
        if gi is None:
            i = org[1]
            lhs = np.zeros((dN, u), dtype=np.int64)
            lhs[:, i * dN : (i + 1) * dN] = np.eye(dN, dtype=np.int64)
        else:
            lhs = F.matmul(gmN[gi], Y[org[0]])
        rhs = F.tensordot(coeffs, Yarr, axes=(0, 0))
        eqs.append(F.sub(lhs, rhs))
    if eqs:
        K = la.nullspace(F, np.vstack(eqs))
    else:
        K = np.eye(u, dtype=np.int64)
    if K.shape[0] == 0:
        return HomBasis(M, N, np.zeros((0, dN, dM), dtype=np.int64))
    # images of the spin basis for each solution, then convert to the standard basis
    imgs = F.tensordot(Yarr, K.T, axes=(2, 0))  # n, dN, k
    Binv = M.cached("spin_inverse", lambda: la.inverse(F, sd.basis))
    phis = F.einsum("ndk,nm->kdm", imgs, Binv)
    return HomBasis(M, N, phis)


def hom_dim(M: ModuleRep, N: ModuleRep) -> int:
    return hom_space(M, N).dim


def end_algebra_mats(M: ModuleRep) -> np.ndarray:
    return M.cached("end", lambda: hom_space(M, M).basis)


def end_radical(M: ModuleRep) -> np.ndarray:
    """Coefficient rows (over the End basis) spanning rad End(M)."""

    def build():
        E = end_algebra_mats(M)
        if E.shape[0] == 0:
            return np.zeros((0, 0), dtype=np.int64)
        return st.matrix_algebra_radical(M.field, E)

    return M.cached("end_radical", build)


def is_indecomposable(M: ModuleRep) -> bool:
    if M.dim == 0:
        return False
    E = end_algebra_mats(M)
    return E.shape[0] - end_radical(M).shape[0] == 1


# ----------------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class RadicalTop:
    rad: ModuleRep
    inclusion: np.ndarray  # d x dim rad, columns are the basis of rad M
    top: ModuleRep
    projection: np.ndarray  # dim top x d
    top_multiplicities: tuple[int, ...]


def radical_and_top(M: ModuleRep) -> RadicalTop:
    R = radical_rows(M)
    rad, rows = submodule(M, R) if R.shape[0] else (zero_module(M.algebra), R)
    top, proj = quotient(M, R)
    return RadicalTop(rad, rows.T, top, proj, top_multiplicities(M))


def top_multiplicities(M: ModuleRep) -> tuple[int, ...]:
    """Multiplicity of each simple (class order) in the top of M."""

    def build():
        F = M.field
        top, _ = quotient(M, radical_rows(M))
        es = st.basic_idempotents(M.algebra)
        return tuple(la.rank(F, top.act(e)) if top.dim else 0 for e in es)

    return M.cached("topmult", build)


def socle_rows(M: ModuleRep) -> np.ndarray:
    """Row basis of the socle: vectors killed by the radical."""
    F = M.field
    J = st.radical(M.algebra)
    if J.shape[0] == 0 or M.dim == 0:
        return np.eye(M.dim, dtype=np.int64)
    mats = F.tensordot(J, M.action, axes=(1, 0)).reshape(-1, M.dim)
    return la.row_basis(F, la.nullspace(F, mats))


def trace_in(M: ModuleRep, N: ModuleRep) -> tuple[ModuleRep, np.ndarray]:
    """The trace of M in N (sum of images of all maps M -> N) and its basis rows."""
    H = hom_space(M, N)
    if H.dim == 0:
        return zero_module(N.algebra), np.zeros((0, N.dim), dtype=np.int64)
    cols = H.basis.transpose(0, 2, 1).reshape(-1, N.dim)
    return submodule(N, cols)


def generates(M: ModuleRep, N: ModuleRep) -> bool:
    """True when N is a quotient of some M^r."""
    if N.dim == 0:
        return True
    H = hom_space(M, N)
    if H.dim == 0:
        return False
    cols = H.basis.transpose(0, 2, 1).reshape(-1, N.dim)
    return la.rank(M.field, cols) == N.dim
