"""The finite-dimensional algebra type and its elementary constructors."""

from __future__ import annotations

import hashlib
import threading
from typing import Callable, Sequence

import numpy as np

from ..errors import InvalidInput, ShapeError
from ..exactla import linalg as la
from ..exactla.field import GF


class FinDimAlgebra:
    """An associative unital algebra given by structure constants.

    ``mult[i, j]`` holds the coordinates of ``b_i * b_j``.  Vectors are
    coordinate rows of length ``dim``.  Derived data (radical, idempotents,
    generators) is computed lazily and cached once per instance.
    """

    def __init__(
        self,
        field: GF,
        mult,
        unit,
        labels: Sequence[str] | None = None,
        *,
        gens=None,
        prim_idems=None,
        name: str = "",
        check: bool = True,
    ):
        self.field = field
        mult = field.asarray(mult)
        n = mult.shape[0]
        if mult.shape != (n, n, n):
            raise ShapeError(f"structure constants must be n*n*n, got {mult.shape}")
        self.mult = np.array(mult, dtype=np.int64)
        self.mult.setflags(write=False)
        self.dim = n
        self.unit = np.array(field.asarray(unit), dtype=np.int64).reshape(n)
        self.labels = list(labels) if labels is not None else [f"b{i}" for i in range(n)]
        if len(self.labels) != n:
            raise ShapeError("one label per basis element is required")
        self.name = name
        self._cache: dict[str, object] = {}
        self._lock = threading.RLock()
        if gens is not None:
            self._cache["gens"] = np.asarray(gens, dtype=np.int64).reshape(-1, n)
        if prim_idems is not None:
            self._cache["given_idems"] = np.asarray(prim_idems, dtype=np.int64).reshape(-1, n)
        if check:
            self.check_axioms()

    # ------------------------------------------------------------------
    def cached(self, key: str, build: Callable[[], object]):
        if key in self._cache:
            return self._cache[key]
        with self._lock:
            if key not in self._cache:
                self._cache[key] = build()
            return self._cache[key]

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"<FinDimAlgebra{tag} dim={self.dim} over {self.field}>"

    # ------------------------------------------------------------------
    # element arithmetic
    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def mul(self, x, y) -> np.ndarray:
        F = self.field
        return F.dot(y, F.tensordot(x, self.mult, axes=(0, 0)))

    def mul_many(self, xs, ys) -> np.ndarray:
        """Pairwise products: out[s, t] = xs[s] * ys[t]."""
        F = self.field
        left = F.tensordot(np.asarray(xs), self.mult, axes=(1, 0))  # s, j, k
        return F.einsum("tj,sjk->stk", np.asarray(ys), left)

    def left_matrix(self, x) -> np.ndarray:
        """Matrix of v -> x*v acting on column coordinates."""
        return self.field.tensordot(x, self.mult, axes=(0, 0)).T

    def right_matrix(self, y) -> np.ndarray:
        """Matrix of v -> v*y acting on column coordinates."""
        return self.field.tensordot(y, self.mult, axes=(0, 1)).T

    @property
    def regular_action(self) -> np.ndarray:
        """(n, n, n) left-multiplication matrices of the basis."""
        return self.cached("regular_action", lambda: np.ascontiguousarray(self.mult.transpose(0, 2, 1)))

    def power(self, x, k: int) -> np.ndarray:
        out = self.unit.copy()
        for _ in range(k):
            out = self.mul(out, x)
        return out

    def add(self, x, y):
        return self.field.add(x, y)

    def sub(self, x, y):
        return self.field.sub(x, y)

    def scale(self, c, x):
        return self.field.mul(x, c)

    def eval_poly(self, f, x) -> np.ndarray:
        """f(x) with the constant term read as a multiple of the unit."""
        F = self.field
        acc = np.zeros(self.dim, dtype=np.int64)
        for c in reversed(f):
            acc = F.add(self.mul(acc, x), F.mul(self.unit, int(c)))
        return acc

    def commutator_matrix(self) -> np.ndarray:
        """Rows over the basis pairs of b_i b_j - b_j b_i."""
        F = self.field
        return F.sub(self.mult, self.mult.transpose(1, 0, 2)).reshape(self.dim * self.dim, self.dim)

    def span_products(self, u, v) -> np.ndarray:
        """Row basis of span{x*y : x in span(u), y in span(v)}."""
        u = np.asarray(u, dtype=np.int64).reshape(-1, self.dim)
        v = np.asarray(v, dtype=np.int64).reshape(-1, self.dim)
        if u.shape[0] == 0 or v.shape[0] == 0:
            return np.zeros((0, self.dim), dtype=np.int64)
        prods = self.mul_many(u, v).reshape(-1, self.dim)
        return la.row_basis(self.field, prods)

    # ------------------------------------------------------------------
    def check_axioms(self) -> None:
        F, n = self.field, self.dim
        if n == 0:
            raise InvalidInput("the zero algebra is not allowed")
        M = self.mult
        # (b_i b_j) b_k versus b_i (b_j b_k)
        lhs = F.tensordot(M, M, axes=(2, 0))  # i j k l
        rhs = F.tensordot(M, M, axes=(2, 1)).transpose(2, 0, 1, 3)  # j k i r -> i j k r
        if not np.array_equal(lhs, rhs):
            raise InvalidInput("multiplication is not associative")
        L = F.tensordot(self.unit, M, axes=(0, 0))
        R = F.tensordot(self.unit, M, axes=(0, 1))
        eye = np.eye(n, dtype=np.int64)
        if not (np.array_equal(L, eye) and np.array_equal(R, eye)):
            raise InvalidInput("unit is not a two-sided identity")

    def fingerprint(self) -> str:
        h = hashlib.sha256()
        h.update(repr(self.field.spec()).encode())
        h.update(self.mult.tobytes())
        h.update(self.unit.tobytes())
        return h.hexdigest()[:16]

    # ------------------------------------------------------------------
    @property
    def gens(self) -> np.ndarray:
        """Algebra generators as coordinate rows (chosen greedily from the basis)."""
        return self.cached("gens", lambda: _greedy_generators(self))

    def subalgebra_span(self, gens) -> np.ndarray:
        """Row basis of the unital subalgebra generated by `gens`."""
        gens = np.asarray(gens, dtype=np.int64).reshape(-1, self.dim)
        span = la.EchelonSpan(self.field, self.dim)
        span.add(self.unit)
        queue = [self.unit]
        Ls = [self.left_matrix(g) for g in gens]
        while queue:
            w = queue.pop()
            for L in Ls:
                v = self.field.matmul(L, w)
                if span.add(v):
                    queue.append(v)
        return span.rows


def _greedy_generators(a: FinDimAlgebra) -> np.ndarray:
    F, n = a.field, a.dim
    span = la.EchelonSpan(F, n)
    span.add(a.unit)
    chosen = []
    queue: list[np.ndarray] = [a.unit]
    Ls: list[np.ndarray] = []
    for i in range(n):
        if span.dim == n:
            break
        b = a.basis_vector(i)
        if not np.any(span.reduce(b)):
            continue
        chosen.append(b)
        L = a.left_matrix(b)
        Ls.append(L)
        # every word so far, then extended by all generators
        queue = [row.copy() for row in span.rows]
        while queue:
            w = queue.pop()
            for Lg in Ls:
                v = F.matmul(Lg, w)
                if span.add(v):
                    queue.append(v)
    return np.array(chosen, dtype=np.int64).reshape(-1, n)


# ----------------------------------------------------------------------
# constructors


def from_structure_constants(field: GF, mult, unit, labels=None, name: str = "") -> FinDimAlgebra:
    return FinDimAlgebra(field, mult, unit, labels, name=name)


def group_algebra(group, field: GF) -> FinDimAlgebra:
    """kG on the group's canonical element order."""
    n = group.order
    mult = np.zeros((n, n, n), dtype=np.int64)
    table = np.asarray(group.table)
    ii, jj = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    mult[ii, jj, table] = 1
    unit = np.zeros(n, dtype=np.int64)
    unit[group.identity] = 1
    gens = np.zeros((len(group.generators), n), dtype=np.int64)
    for r, g in enumerate(group.generators):
        gens[r, g] = 1
    if gens.shape[0] == 0:
        gens = unit[None, :].copy()
    alg = FinDimAlgebra(field, mult, unit, [f"g{i}" for i in range(n)], gens=gens, name="group algebra", check=False)
    alg.group = group
    return alg


def tensor_algebra(a: FinDimAlgebra, b: FinDimAlgebra) -> FinDimAlgebra:
    """A (x) B with basis pairs (i, k) in row-major order."""
    if a.field != b.field:
        raise InvalidInput("tensor factors must share a field")
    F = a.field
    na, nb = a.dim, b.dim
    mult = F.einsum("ijm,kln->ikjlmn", a.mult, b.mult).reshape(na * nb, na * nb, na * nb)
    unit = F.einsum("i,k->ik", a.unit, b.unit).reshape(-1)
    labels = [f"{x}*{y}" for x in a.labels for y in b.labels]
    gens = [F.einsum("i,k->ik", g, b.unit).reshape(-1) for g in a.gens]
    gens += [F.einsum("i,k->ik", a.unit, h).reshape(-1) for h in b.gens]
    return FinDimAlgebra(F, mult, unit, labels, gens=np.array(gens), name="tensor", check=False)


def subalgebra(a: FinDimAlgebra, basis_rows, unit, labels=None, name: str = "") -> FinDimAlgebra:
    """Algebra on a multiplicatively closed span with its own unit.

    ``basis_rows`` must be in reduced echelon form; the result records the
    embedding matrix in ``.embedding`` (rows are images of the new basis).
    """
    F = a.field
    rows = np.asarray(basis_rows, dtype=np.int64)
    k = rows.shape[0]
    piv = [int(np.flatnonzero(r)[0]) for r in rows]
    prods = a.mul_many(rows, rows)  # k, k, n
    coords = prods[:, :, piv]
    check = F.tensordot(coords, rows, axes=(2, 0))
    if not np.array_equal(check, prods):
        raise InvalidInput("span is not closed under multiplication")
    unit = np.asarray(unit, dtype=np.int64)
    u = unit[piv]
    if not np.array_equal(F.matmul(u, rows), unit):
        raise InvalidInput("unit is outside the span")
    labels = labels or [f"c{i}" for i in range(k)]
    sub = FinDimAlgebra(F, coords, u, labels, name=name, check=False)
    sub.embedding = rows
    sub.parent = a
    return sub


def corner_basis(a: FinDimAlgebra, e, f=None) -> np.ndarray:
    """Row basis (rref) of e*A*f."""
    f = e if f is None else f
    F = a.field
    left = F.matmul(a.left_matrix(e), np.eye(a.dim, dtype=np.int64))  # columns e*b_j
    both = F.matmul(a.right_matrix(f), left)  # columns e*b_j*f
    return la.row_basis(F, both.T)


def corner_dim(a: FinDimAlgebra, e, f=None) -> int:
    return corner_basis(a, e, f).shape[0]


def two_sided_ideal(a: FinDimAlgebra, elements) -> np.ndarray:
    """Row basis of the two-sided ideal generated by the given elements."""
    F = a.field
    xs = np.asarray(elements, dtype=np.int64).reshape(-1, a.dim)
    if xs.shape[0] == 0:
        return np.zeros((0, a.dim), dtype=np.int64)
    right = la.row_basis(F, F.tensordot(xs, a.mult, axes=(1, 0)).reshape(-1, a.dim))  # x * b_j
    if right.shape[0] == 0:
        return right
    both = F.tensordot(a.mult, right, axes=(1, 1)).transpose(0, 2, 1)  # b_i * y
    return la.row_basis(F, both.reshape(-1, a.dim))


def quotient_algebra(a: FinDimAlgebra, ideal_rows, name: str = "") -> FinDimAlgebra:
    """A / I for a two-sided ideal I; records ``.projection`` and the lifted basis ``.lift``."""
    F = a.field
    R = la.row_basis(F, np.asarray(ideal_rows, dtype=np.int64).reshape(-1, a.dim))
    piv = [int(np.flatnonzero(r)[0]) for r in R]
    free = [c for c in range(a.dim) if c not in set(piv)]
    proj = np.eye(a.dim, dtype=np.int64)
    if R.shape[0]:
        proj = F.sub(proj, F.matmul(R.T, proj[piv, :]))
    proj = proj[free, :]
    prods = a.mult[np.ix_(free, free)]  # k, k, n
    mult = F.tensordot(prods, proj, axes=(2, 1))
    unit = F.matmul(proj, a.unit)
    q = FinDimAlgebra(F, mult, unit, [a.labels[f] for f in free], name=name or f"{a.name}/I", check=False)
    q.projection = proj
    q.lift = free
    q.parent = a
    return q
