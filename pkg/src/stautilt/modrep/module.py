"""Left modules given by action matrices, and their elementary constructions."""

from __future__ import annotations

import threading

import numpy as np

from ..algebra import structure as st
from ..algebra.core import FinDimAlgebra
from ..errors import AlgebraMismatch, InvalidInput, ShapeError
from ..exactla import linalg as la


class ModuleRep:
    """A finite-dimensional left module: ``action[i]`` is the matrix of basis element i.

    Vectors are columns; ``action[i] @ v`` is ``b_i * v``.
    """

    def __init__(self, algebra: FinDimAlgebra, action, *, check: bool = True, name: str = ""):
        self.algebra = algebra
        act = np.asarray(action, dtype=np.int64)
        n = algebra.dim
        if act.ndim != 3 or act.shape[0] != n or act.shape[1] != act.shape[2]:
            raise ShapeError(f"action must have shape ({n}, d, d), got {act.shape}")
        act = np.array(algebra.field.asarray(act), dtype=np.int64)
        act.setflags(write=False)
        self.action = act
        self.dim = act.shape[1]
        self.name = name
        self._cache: dict = {}
        self._lock = threading.RLock()
        if check:
            self.check()

    @property
    def field(self):
        return self.algebra.field

    def cached(self, key, build):
        if key in self._cache:
            return self._cache[key]
        with self._lock:
            if key not in self._cache:
                self._cache[key] = build()
            return self._cache[key]

    def __repr__(self):
        return f"<ModuleRep {self.name + ' ' if self.name else ''}dim={self.dim}>"

    def check(self) -> None:
        A, F, d = self.algebra, self.field, self.dim
        if d == 0:
            return
        if not np.array_equal(self.act(A.unit), np.eye(d, dtype=np.int64)):
            raise InvalidInput("the unit does not act as the identity")
        for g in A.gens:
            lhs = F.tensordot(self.act(g), self.action, axes=(1, 1)).transpose(1, 0, 2)  # j, d, d
            prods = F.tensordot(g, A.mult, axes=(0, 0))  # j, k: coords of g * b_j
            rhs = F.tensordot(prods, self.action, axes=(1, 0))
            if not np.array_equal(lhs, rhs):
                raise InvalidInput("action matrices do not respect the multiplication")

    def act(self, x) -> np.ndarray:
        """Matrix of an algebra element given by coordinates."""
        return self.field.tensordot(np.asarray(x, dtype=np.int64), self.action, axes=(0, 0))

    @property
    def gen_mats(self) -> np.ndarray:
        return self.cached("gen_mats", lambda: np.array([self.act(g) for g in self.algebra.gens]).reshape(-1, self.dim, self.dim))

    def same_algebra(self, other: "ModuleRep") -> None:
        if other.algebra is not self.algebra:
            raise AlgebraMismatch("modules live over different algebras")

    def is_zero(self) -> bool:
        return self.dim == 0

    # ------------------------------------------------------------------
    def dimension_vector(self) -> tuple[int, ...]:
        """Composition multiplicities of the simples (split algebras)."""

        def build():
            es = st.basic_idempotents(self.algebra)
            return tuple(la.rank(self.field, self.act(e)) if self.dim else 0 for e in es)

        return self.cached("dimvec", build)


def zero_module(A: FinDimAlgebra) -> ModuleRep:
    return ModuleRep(A, np.zeros((A.dim, 0, 0), dtype=np.int64), check=False, name="0")


def regular_module(A: FinDimAlgebra) -> ModuleRep:
    return A.cached("regular_module", lambda: ModuleRep(A, A.regular_action, check=False, name="regular"))


def from_generator_matrices(A: FinDimAlgebra, mats) -> ModuleRep:
    """Extend matrices given for ``A.gens`` to the whole basis."""
    F = A.field
    mats = np.asarray(mats, dtype=np.int64)
    if mats.shape[0] != A.gens.shape[0]:
        raise ShapeError("one matrix per algebra generator is required")
    d = mats.shape[1]
    words, coeffs = word_basis(A)
    # words[k] is a sequence of generator indices; value = g_{w[-1]} ... g_{w[0]} * 1
    vals = []
    for w in words:
        m = np.eye(d, dtype=np.int64)
        for gi in w:
            m = F.matmul(mats[gi], m)
        vals.append(m)
    vals = np.array(vals).reshape(len(words), d, d)
    action = F.tensordot(coeffs, vals, axes=(1, 0))
    return ModuleRep(A, action)


def word_basis(A: FinDimAlgebra):
    """Words in the generators whose values form a basis, and the matrix
    expressing each basis element b_i as a combination of those words."""

    def build():
        F, n = A.field, A.dim
        span = la.EchelonSpan(F, n)
        words, vals = [()], [A.unit]
        span.add(A.unit)
        Ls = [A.left_matrix(g) for g in A.gens]
        i = 0
        while i < len(words) and len(words) < n:
            for gi, L in enumerate(Ls):
                v = F.matmul(L, vals[i])
                if span.add(v):
                    words.append(words[i] + (gi,))
                    vals.append(v)
            i += 1
        V = np.array(vals)
        if V.shape[0] != n:
            raise InvalidInput("algebra generators do not generate the algebra")
        coeffs = la.inverse(F, V)  # b_i = sum_k coeffs[i, k] * value_k
        return words, coeffs

    return A.cached("word_basis", build)


def submodule(M: ModuleRep, rows) -> tuple[ModuleRep, np.ndarray]:
    """Submodule spanned by rows (must be invariant); returns it with the rref basis rows."""
    F = M.field
    if M.dim == 0:
        return M, np.zeros((0, 0), dtype=np.int64)
    rows = np.asarray(rows, dtype=np.int64).reshape(-1, M.dim)
    R = la.row_basis(F, rows) if rows.shape[0] else rows
    k = R.shape[0]
    if k == 0:
        return zero_module(M.algebra), R
    piv = [int(np.flatnonzero(r)[0]) for r in R]
    imgs = F.tensordot(M.action, R.T, axes=(2, 0))  # n, d, k
    sub_act = imgs[:, piv, :]
    back = F.tensordot(sub_act, R, axes=(1, 0)).transpose(0, 2, 1)
    if not np.array_equal(back, imgs):
        raise InvalidInput("subspace is not a submodule")
    return ModuleRep(M.algebra, sub_act, check=False), R


def quotient(M: ModuleRep, rows) -> tuple[ModuleRep, np.ndarray]:
    """M / U for an invariant subspace U; returns the quotient and the projection matrix."""
    F = M.field
    if M.dim == 0:
        return M, np.zeros((0, 0), dtype=np.int64)
    rows = np.asarray(rows, dtype=np.int64).reshape(-1, M.dim)
    R = la.row_basis(F, rows) if rows.shape[0] else np.zeros((0, M.dim), dtype=np.int64)
    piv = [int(np.flatnonzero(r)[0]) for r in R]
    free = [c for c in range(M.dim) if c not in set(piv)]
    # projection: v -> (v - sum v[piv_i] R_i)[free]
    proj = np.eye(M.dim, dtype=np.int64)
    if R.shape[0]:
        proj = F.sub(proj, F.matmul(R.T, proj[piv, :]))
    proj = proj[free, :]
    lift = np.zeros((M.dim, len(free)), dtype=np.int64)
    lift[free, np.arange(len(free))] = 1
    act = F.tensordot(M.action, lift, axes=(2, 0))  # n, d, k
    qact = F.tensordot(act, proj, axes=(1, 1)).transpose(0, 2, 1)
    Q = ModuleRep(M.algebra, qact, check=False)
    return Q, proj


def direct_sum(mods) -> ModuleRep:
    mods = list(mods)
    if not mods:
        raise InvalidInput("direct sum of nothing needs an algebra")
    A = mods[0].algebra
    for m in mods:
        mods[0].same_algebra(m)
    d = sum(m.dim for m in mods)
    act = np.zeros((A.dim, d, d), dtype=np.int64)
    o = 0
    for m in mods:
        act[:, o : o + m.dim, o : o + m.dim] = m.action
        o += m.dim
    return ModuleRep(A, act, check=False)


def image_module(M: ModuleRep, vectors) -> tuple[ModuleRep, np.ndarray]:
    """Submodule generated by the given vectors (columns of `vectors`)."""
    rows = spin(M, np.asarray(vectors, dtype=np.int64).reshape(M.dim, -1).T)
    return submodule(M, rows)


def spin(M: ModuleRep, rows) -> np.ndarray:
    """Row basis of the submodule generated by the given row vectors."""
    F = M.field
    span = la.EchelonSpan(F, M.dim)
    queue = []
    for r in np.asarray(rows, dtype=np.int64).reshape(-1, M.dim):
        if span.add(r):
            queue.append(r)
    gm = M.gen_mats
    while queue:
        v = queue.pop()
        for g in gm:
            w = F.matmul(g, v)
            if span.add(w):
                queue.append(w)
    return la.row_basis(F, span.rows) if span.dim else span.rows


def change_basis(M: ModuleRep, T) -> ModuleRep:
    """The module with action T^-1 rho T (T invertible, columns = new basis)."""
    F = M.field
    Ti = la.inverse(F, T)
    act = F.tensordot(F.tensordot(M.action, T, axes=(2, 0)), Ti, axes=(1, 1)).transpose(0, 2, 1)
    return ModuleRep(M.algebra, act, check=False)


def dual_of_right(A: FinDimAlgebra, right_action) -> ModuleRep:
    """Left module D(T) from right-action matrices (t -> t*b as column maps)."""
    R = np.asarray(right_action, dtype=np.int64)
    return ModuleRep(A, R.transpose(0, 2, 1), check=False)
