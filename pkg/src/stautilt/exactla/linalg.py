"""Dense exact linear algebra over a `GF`.

The array-level functions (`rref`, `nullspace`, ...) take the field first and
plain int64 arrays; `Mat`, `row_reduce` and `solve` are the checked public
surface that carries the field along with the entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ..errors import InvalidField, ShapeError
from .field import GF


def rref(F: GF, a) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form and pivot columns."""
    A = np.array(F.asarray(a), dtype=np.int64, copy=True)
    if A.ndim != 2:
        raise ShapeError("rref expects a 2-d array")
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        if A[r, c] != 1:
            A[r, c:] = F.mul(A[r, c:], F.inv(A[r, c]))
        others = np.flatnonzero(A[:, c])
        others = others[others != r]
        if others.size:
            A[others, c:] = F.sub(A[others, c:], F.mul(A[others, c][:, None], A[r, c:][None, :]))
        pivots.append(c)
        r += 1
    return A, pivots


def rank(F: GF, a) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    if a.shape[0] > a.shape[1]:
        a = a.T
    return len(rref(F, a)[1])


def row_basis(F: GF, a) -> np.ndarray:
    """Rows of the rref spanning the row space (shape (rank, cols))."""
    a = np.asarray(a, dtype=np.int64)
    if a.ndim != 2 or a.shape[0] == 0:
        return np.zeros((0, a.shape[-1] if a.ndim == 2 else 0), dtype=np.int64)
    R, piv = rref(F, a)
    return R[: len(piv)]


def nullspace(F: GF, a) -> np.ndarray:
    """Rows spanning {x : a @ x = 0}; shape (cols - rank, cols)."""
    a = np.asarray(a, dtype=np.int64)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    R, piv = rref(F, a)
    free = [c for c in range(cols) if c not in set(piv)]
    K = np.zeros((len(free), cols), dtype=np.int64)
    if not free:
        return K
    piv_arr = np.array(piv, dtype=np.int64)
    for k, f in enumerate(free):
        K[k, f] = 1
        if piv:
            K[k, piv_arr] = F.neg(R[: len(piv), f])
    return K


def left_nullspace(F: GF, a) -> np.ndarray:
    return nullspace(F, np.asarray(a).T)


def solve(F: GF, a, b) -> np.ndarray | None:
    """Some x with a @ x = b (free variables zero), or None if inconsistent."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    vec = b.ndim == 1
    if vec:
        b = b[:, None]
    if a.shape[0] != b.shape[0]:
        raise ShapeError(f"row mismatch {a.shape} vs {b.shape}")
    n = a.shape[1]
    if a.shape[0] == 0:
        x = np.zeros((n, b.shape[1]), dtype=np.int64)
        return x[:, 0] if vec else x
    R, piv = rref(F, np.hstack([a, b]))
    if piv and piv[-1] >= n:
        return None
    x = np.zeros((n, b.shape[1]), dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = R[i, n:]
    return x[:, 0] if vec else x


def inverse(F: GF, a) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ShapeError("inverse needs a square matrix")
    R, piv = rref(F, np.hstack([a, np.eye(n, dtype=np.int64)]))
    if piv[:n] != list(range(n)) or len(piv) < n or piv[n - 1] >= n:
        raise ZeroDivisionError("matrix is singular")
    return R[:, n:]


def coordinates(F: GF, basis, vecs) -> np.ndarray | None:
    """Coefficients c with c @ basis = vecs (rows), or None if some vec is outside the span."""
    basis = np.asarray(basis, dtype=np.int64)
    vecs = np.asarray(vecs, dtype=np.int64)
    single = vecs.ndim == 1
    if single:
        vecs = vecs[None, :]
    if basis.shape[0] == 0:
        if np.any(vecs):
            return None
        out = np.zeros((vecs.shape[0], 0), dtype=np.int64)
        return out[0] if single else out
    x = solve(F, basis.T, vecs.T)
    if x is None:
        return None
    return x.T[0] if single else x.T


def in_span(F: GF, basis, vecs) -> bool:
    return coordinates(F, basis, vecs) is not None


def complement_basis(F: GF, basis, n: int) -> np.ndarray:
    """Standard unit vectors completing the row span of `basis` to F^n."""
    basis = np.asarray(basis, dtype=np.int64).reshape(-1, n)
    piv = set(rref(F, basis)[1]) if basis.shape[0] else set()
    free = [c for c in range(n) if c not in piv]
    E = np.zeros((len(free), n), dtype=np.int64)
    E[np.arange(len(free)), free] = 1
    return E


def intersect(F: GF, u, v) -> np.ndarray:
    """Row basis of span(u) ∩ span(v)."""
    u = row_basis(F, u)
    v = row_basis(F, v)
    if u.shape[0] == 0 or v.shape[0] == 0:
        return np.zeros((0, u.shape[1] if u.ndim == 2 else v.shape[1]), dtype=np.int64)
    K = left_nullspace(F, np.vstack([u, F.neg(v)]))
    if K.shape[0] == 0:
        return np.zeros((0, u.shape[1]), dtype=np.int64)
    return row_basis(F, F.matmul(K[:, : u.shape[0]], u))


class EchelonSpan:
    """Incrementally maintained row span, used by spinning algorithms."""

    def __init__(self, F: GF, n: int):
        self.F = F
        self.n = n
        self.rows = np.zeros((0, n), dtype=np.int64)
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, v) -> np.ndarray:
        F = self.F
        v = np.array(v, dtype=np.int64, copy=True)
        for row, c in zip(self.rows, self.pivots):
            if v[c]:
                v = F.sub(v, F.mul(v[c], row))
        return v

    def add(self, v) -> bool:
        """Insert v; return True when it enlarged the span."""
        F = self.F
        r = self.reduce(v)
        nz = np.flatnonzero(r)
        if nz.size == 0:
            return False
        c = int(nz[0])
        r = F.mul(r, F.inv(r[c]))
        if self.rows.shape[0]:
            col = self.rows[:, c]
            hit = np.flatnonzero(col)
            if hit.size:
                self.rows[hit] = F.sub(self.rows[hit], F.mul(col[hit][:, None], r[None, :]))
        self.rows = np.vstack([self.rows, r])
        self.pivots.append(c)
        return True


# ----------------------------------------------------------------------
# checked public surface


@dataclass(frozen=True, eq=False)
class Mat:
    """An immutable matrix over a finite field."""

    field: GF
    data: np.ndarray

    def __post_init__(self):
        arr = self.field.asarray(self.data)
        if arr.ndim != 2:
            raise ShapeError("Mat needs a 2-d array")
        arr = np.array(arr, dtype=np.int64)
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @classmethod
    def from_rows(cls, field: GF, rows, cols: int | None = None) -> "Mat":
        arr = np.asarray(rows, dtype=np.int64)
        if arr.size == 0:
            arr = arr.reshape(len(rows) if hasattr(rows, "__len__") else 0, cols or 0)
        return cls(field, arr)

    @classmethod
    def zeros(cls, field: GF, rows: int, cols: int) -> "Mat":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: GF, n: int) -> "Mat":
        return cls(field, np.eye(n, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self.data.ravel())

    @property
    def T(self) -> "Mat":
        return Mat(self.field, self.data.T)

    def _check(self, other: "Mat") -> None:
        if not isinstance(other, Mat):
            raise TypeError("expected a Mat")
        if other.field != self.field:
            raise InvalidField(f"mixed fields {self.field} and {other.field}")

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        return Mat(self.field, self.field.matmul(self.data, other.data))

    def __add__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.data.shape != other.data.shape:
            raise ShapeError("shape mismatch")
        return Mat(self.field, self.field.add(self.data, other.data))

    def __sub__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.data.shape != other.data.shape:
            raise ShapeError("shape mismatch")
        return Mat(self.field, self.field.sub(self.data, other.data))

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and other.field == self.field
            and other.data.shape == self.data.shape
            and bool(np.array_equal(other.data, self.data))
        )

    def __hash__(self):
        return hash((self.field, self.data.shape, self.data.tobytes()))

    def __repr__(self):
        return f"Mat({self.field}, {self.data.tolist()})"


class RowReduction(NamedTuple):
    rref: Mat
    rank: int
    pivot_cols: tuple[int, ...]
    kernel_basis: Mat


def row_reduce(a: Mat) -> RowReduction:
    F = a.field
    if a.rows == 0:
        R = a.data.copy()
        piv: list[int] = []
    else:
        R, piv = rref(F, a.data)
    K = nullspace(F, a.data) if a.rows else np.eye(a.cols, dtype=np.int64)
    return RowReduction(Mat(F, R), len(piv), tuple(piv), Mat(F, K.reshape(-1, a.cols)))


def solve_mat(a: Mat, b: Mat) -> Mat | None:
    """Return some x with a @ x = b (free variables zero) or None when inconsistent."""
    a._check(b)
    if a.rows != b.rows:
        raise ShapeError(f"a has {a.rows} rows but b has {b.rows}")
    x = solve(a.field, a.data, b.data)
    return None if x is None else Mat(a.field, x)
