"""Two-term complexes of projectives and their homotopy-category Hom spaces.

Labels index the basic idempotents of the algebra, so label i stands for
the indecomposable projective P(i) = A e_i.  A map between sums of
projectives is an array X of shape (len(src), len(tgt), dim A) acting by
right multiplication; "X then Y" is ``compose(A, X, Y)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..algebra import structure as st
from ..algebra.core import FinDimAlgebra, corner_basis
from ..errors import InternalError, ShapeError
from ..exactla import linalg as la
from ..modrep.presentation import compose, proj_map_matrix


def _empty_map(A, n_src: int, n_tgt: int) -> np.ndarray:
    return np.zeros((n_src, n_tgt, A.dim), dtype=np.int64)


# ----------------------------------------------------------------------
# Hom spaces between sums of projectives


@dataclass(frozen=True, eq=False)
class CornerBasis:
    """Basis of e_i A e_j; for i == j the first vector is e_i and the rest span e_i J e_i."""

    rows: np.ndarray
    cols: list
    inv: np.ndarray
    top: bool

    @property
    def dim(self) -> int:
        return self.rows.shape[0]

    def coords(self, F, v) -> np.ndarray:
        if self.dim == 0:
            return np.zeros(0, dtype=np.int64)
        return F.matmul(np.asarray(v, dtype=np.int64)[..., self.cols], self.inv)


def corner(A: FinDimAlgebra, i: int, j: int) -> CornerBasis:
    def build():
        F = A.field
        es = st.basic_idempotents(A)
        R = corner_basis(A, es[i], es[j])
        top = False
        if i == j:
            rad = la.intersect(F, R, st.radical(A)) if st.radical(A).shape[0] else np.zeros((0, A.dim), dtype=np.int64)
            R = np.vstack([es[i][None, :], rad]).astype(np.int64)
            top = True
        if R.shape[0] == 0:
            return CornerBasis(R, [], np.zeros((0, 0), dtype=np.int64), top)
        _, piv = la.rref(F, R)
        if len(piv) != R.shape[0]:
            raise InternalError("corner basis is not independent")
        return CornerBasis(R, list(piv), la.inverse(F, R[:, piv]), top)

    return A.cached(("corner", i, j), build)


class PHom:
    """Hom(P(src), P(tgt)) with coordinates block by block in (row, column) order."""

    def __init__(self, A: FinDimAlgebra, src, tgt):
        self.A = A
        self.src, self.tgt = tuple(src), tuple(tgt)
        self.blocks = []
        off = 0
        top = []
        for c, i in enumerate(self.src):
            for r, j in enumerate(self.tgt):
                cb = corner(A, i, j)
                self.blocks.append((c, r, cb, off))
                if cb.top:
                    top.append(off)
                off += cb.dim
        self.dim = off
        self.top_coords = top

    def to_coords(self, X) -> np.ndarray:
        F = self.A.field
        X = np.asarray(X, dtype=np.int64)
        lead = X.shape[:-3]
        out = np.zeros(lead + (self.dim,), dtype=np.int64)
        for c, r, cb, off in self.blocks:
            if cb.dim:
                out[..., off : off + cb.dim] = cb.coords(F, X[..., c, r, :])
        return out

    def from_coords(self, v) -> np.ndarray:
        F = self.A.field
        v = np.asarray(v, dtype=np.int64)
        lead = v.shape[:-1]
        X = np.zeros(lead + (len(self.src), len(self.tgt), self.A.dim), dtype=np.int64)
        for c, r, cb, off in self.blocks:
            if cb.dim:
                X[..., c, r, :] = F.matmul(v[..., off : off + cb.dim], cb.rows)
        return X

    def basis(self) -> np.ndarray:
        return self.from_coords(np.eye(self.dim, dtype=np.int64))


def compose_many(A: FinDimAlgebra, Xs, Y) -> np.ndarray:
    """Batch of X then Y."""
    Xs = np.asarray(Xs, dtype=np.int64)
    Y = np.asarray(Y, dtype=np.int64)
    n = Xs.shape[0]
    if n == 0 or Xs.shape[1] == 0 or Y.shape[1] == 0 or Xs.shape[2] == 0:
        return np.zeros((n, Xs.shape[1], Y.shape[1], A.dim), dtype=np.int64)
    F = A.field
    left = F.tensordot(Xs, A.mult, axes=(3, 0))  # n c r j k
    return F.einsum("ncrjk,rsj->ncsk", left, Y)


def compose_many_right(A: FinDimAlgebra, X, Ys) -> np.ndarray:
    """Batch of X then Y for each Y."""
    X = np.asarray(X, dtype=np.int64)
    Ys = np.asarray(Ys, dtype=np.int64)
    n = Ys.shape[0]
    if n == 0 or X.shape[0] == 0 or Ys.shape[2] == 0 or X.shape[1] == 0:
        return np.zeros((n, X.shape[0], Ys.shape[2], A.dim), dtype=np.int64)
    F = A.field
    left = F.tensordot(X, A.mult, axes=(2, 0))  # c r j k
    return F.einsum("crjk,nrsj->ncsk", left, Ys)


# ----------------------------------------------------------------------
# complexes


@dataclass(frozen=True, eq=False)
class TwoTermComplex:
    """P_{-1} --d--> P_0 with both terms given by labels."""

    algebra: FinDimAlgebra
    deg_m1: tuple
    deg_0: tuple
    d: np.ndarray
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        A = self.algebra
        object.__setattr__(self, "deg_m1", tuple(int(i) for i in self.deg_m1))
        object.__setattr__(self, "deg_0", tuple(int(i) for i in self.deg_0))
        d = np.asarray(self.d, dtype=np.int64).reshape(len(self.deg_m1), len(self.deg_0), A.dim)
        n = st.num_simples(A)
        if any(not 0 <= i < n for i in self.deg_m1 + self.deg_0):
            raise ShapeError("projective label out of range")
        d = np.array(A.field.asarray(d), dtype=np.int64)
        d.setflags(write=False)
        object.__setattr__(self, "d", d)

    @property
    def gvector(self) -> tuple[int, ...]:
        n = st.num_simples(self.algebra)
        g = [0] * n
        for i in self.deg_0:
            g[i] += 1
        for i in self.deg_m1:
            g[i] -= 1
        return tuple(g)

    def is_zero(self) -> bool:
        return not self.deg_m1 and not self.deg_0

    def module_matrix(self) -> np.ndarray:
        """The differential as a matrix between the underlying vector spaces."""
        return proj_map_matrix(self.algebra, self.deg_m1, self.deg_0, self.d)

    def to_json(self) -> dict:
        return {
            "deg_m1": [i + 1 for i in self.deg_m1],
            "deg_0": [i + 1 for i in self.deg_0],
            "d": self.module_matrix().tolist(),
        }

    def __repr__(self):
        return f"<TwoTermComplex {list(self.deg_m1)} -> {list(self.deg_0)}>"


def stalk(A: FinDimAlgebra, labels, degree: int = 0) -> TwoTermComplex:
    labels = tuple(labels)
    if degree == 0:
        return TwoTermComplex(A, (), labels, _empty_map(A, 0, len(labels)))
    if degree == -1:
        return TwoTermComplex(A, labels, (), _empty_map(A, len(labels), 0))
    raise ShapeError("stalk complexes live in degree 0 or -1")


def regular_labels(A: FinDimAlgebra) -> tuple[int, ...]:
    return tuple(range(st.num_simples(A)))


def direct_sum(parts) -> TwoTermComplex:
    parts = list(parts)
    if not parts:
        raise ShapeError("empty direct sum")
    A = parts[0].algebra
    m1 = sum((p.deg_m1 for p in parts), ())
    z0 = sum((p.deg_0 for p in parts), ())
    d = _empty_map(A, len(m1), len(z0))
    r = c = 0
    for p in parts:
        d[r : r + len(p.deg_m1), c : c + len(p.deg_0)] = p.d
        r += len(p.deg_m1)
        c += len(p.deg_0)
    return TwoTermComplex(A, m1, z0, d)


def is_radical_entry(A: FinDimAlgebra, i: int, j: int, x) -> bool:
    if i != j:
        return True
    cb = corner(A, i, i)
    return int(cb.coords(A.field, x)[0]) == 0


def corner_inverse(A: FinDimAlgebra, i: int, x) -> np.ndarray:
    """Inverse of an invertible element of the local ring e_i A e_i."""
    F = A.field
    cb = corner(A, i, i)
    e = cb.rows[0]
    lam = int(cb.coords(F, x)[0])
    if lam == 0:
        raise InternalError("element is not invertible in the corner ring")
    li = int(F.inv(lam))
    m = F.sub(F.mul(x, li), e)  # x / lam - e, nilpotent
    term = e.copy()
    acc = e.copy()
    neg_m = F.neg(m)
    for _ in range(A.dim + 1):
        term = A.mul(term, neg_m)
        if not np.any(term):
            break
        acc = F.add(acc, term)
    else:
        raise InternalError("radical element is not nilpotent")
    return F.mul(acc, li)


def _drop(seq, k):
    return tuple(x for t, x in enumerate(seq) if t != k)


def reduce_chain(A: FinDimAlgebra, labels: list, diffs: list):
    """Gaussian elimination of invertible entries in a chain of projective maps.

    ``labels`` has one tuple per degree (lowest first) and ``diffs[t]`` maps
    ``labels[t]`` to ``labels[t + 1]``.  Returns the reduced data, which is
    homotopy equivalent to the input.
    """
    labels = [tuple(l) for l in labels]
    diffs = [np.asarray(d, dtype=np.int64) for d in diffs]
    F = A.field
    changed = True
    while changed:
        changed = False
        for t, d in enumerate(diffs):
            src, tgt = labels[t], labels[t + 1]
            hit = None
            for a in range(len(src)):
                for c in range(len(tgt)):
                    if src[a] == tgt[c] and not is_radical_entry(A, src[a], tgt[c], d[a, c]):
                        hit = (a, c)
                        break
                if hit:
                    break
            if hit is None:
                continue
            a, c = hit
            ainv = corner_inverse(A, src[a], d[a, c])
            gamma = np.delete(d[:, c : c + 1], a, axis=0)
            beta = np.delete(d[a : a + 1, :], c, axis=1)
            rest = np.delete(np.delete(d, a, axis=0), c, axis=1)
            corr = compose(A, compose(A, gamma, ainv[None, None, :]), beta)
            diffs[t] = F.sub(rest, corr) if rest.size else rest
            if t > 0:
                diffs[t - 1] = np.delete(diffs[t - 1], a, axis=1)
            if t + 1 < len(diffs):
                diffs[t + 1] = np.delete(diffs[t + 1], c, axis=0)
            labels[t] = _drop(src, a)
            labels[t + 1] = _drop(tgt, c)
            changed = True
            break
    return labels, diffs


def reduced(x: TwoTermComplex) -> TwoTermComplex:
    """Remove contractible summands (Q --id--> Q)."""
    labels, diffs = reduce_chain(x.algebra, [x.deg_m1, x.deg_0], [x.d])
    if labels[0] == x.deg_m1 and labels[1] == x.deg_0:
        return x
    return TwoTermComplex(x.algebra, labels[0], labels[1], diffs[0])


def is_reduced(x: TwoTermComplex) -> bool:
    A = x.algebra
    return all(
        is_radical_entry(A, i, j, x.d[a, c]) for a, i in enumerate(x.deg_m1) for c, j in enumerate(x.deg_0)
    )


# ----------------------------------------------------------------------
# homotopy category


@dataclass(frozen=True, eq=False)
class ChainSpace:
    """Chain maps x -> y as coordinate rows over Hom(x_{-1}, y_{-1}) + Hom(x_0, y_0)."""

    x: TwoTermComplex
    y: TwoTermComplex
    h1: PHom
    h0: PHom
    cycles: np.ndarray  # rows: all chain maps
    boundaries: np.ndarray  # rows: null-homotopic chain maps
    reps: np.ndarray  # rows: lift a basis of Hom_K(x, y)

    @property
    def dim(self) -> int:
        return self.reps.shape[0]

    def split(self, rows):
        rows = np.asarray(rows, dtype=np.int64)
        k = self.h1.dim
        return self.h1.from_coords(rows[..., :k]), self.h0.from_coords(rows[..., k:])

    def join(self, f1, f0) -> np.ndarray:
        return np.concatenate([self.h1.to_coords(f1), self.h0.to_coords(f0)], axis=-1)

    def radical_cycles(self) -> np.ndarray:
        """Chain maps whose components have all entries in the radical."""
        top = list(self.h1.top_coords) + [self.h1.dim + t for t in self.h0.top_coords]
        Z = self.cycles
        if not top or Z.shape[0] == 0:
            return Z
        F = self.x.algebra.field
        K = la.nullspace(F, Z[:, top].T) if Z.shape[0] else Z
        if K.shape[0] == 0:
            return np.zeros((0, Z.shape[1]), dtype=np.int64)
        return F.matmul(K, Z)


def _quotient_reps(F, Z, B, n):
    span = la.EchelonSpan(F, n)
    for b in B:
        span.add(b)
    reps = [z for z in Z if span.add(z)]
    if not reps:
        return np.zeros((0, n), dtype=np.int64)
    return np.array(reps, dtype=np.int64)


def chain_maps(x: TwoTermComplex, y: TwoTermComplex) -> ChainSpace:
    key = ("chain", id(y))
    hit = x._cache.get(key)
    if hit is not None and hit.y is y:
        return hit
    A, F = x.algebra, x.algebra.field
    h1 = PHom(A, x.deg_m1, y.deg_m1)
    h0 = PHom(A, x.deg_0, y.deg_0)
    h10 = PHom(A, x.deg_m1, y.deg_0)
    h01 = PHom(A, x.deg_0, y.deg_m1)
    n = h1.dim + h0.dim
    # chain condition: d_x then f0 equals f1 then d_y
    if h10.dim:
        c1 = h10.to_coords(compose_many(A, h1.basis(), y.d)) if h1.dim else np.zeros((0, h10.dim), dtype=np.int64)
        c0 = h10.to_coords(compose_many_right(A, x.d, h0.basis())) if h0.dim else np.zeros((0, h10.dim), dtype=np.int64)
        L = np.vstack([F.neg(c1), c0]).T
        Z = la.nullspace(F, L) if n else np.zeros((0, 0), dtype=np.int64)
    else:
        Z = np.eye(n, dtype=np.int64)
    if h01.dim and n:
        S = h01.basis()
        b1 = h1.to_coords(compose_many_right(A, x.d, S))
        b0 = h0.to_coords(compose_many(A, S, y.d))
        B = la.row_basis(F, np.hstack([b1, b0]))
    else:
        B = np.zeros((0, n), dtype=np.int64)
    Z = la.row_basis(F, Z) if Z.shape[0] and n else np.zeros((0, n), dtype=np.int64)
    if B.shape[0] == 0:
        B = np.zeros((0, n), dtype=np.int64)
    reps = _quotient_reps(F, Z, B, n)
    out = ChainSpace(x, y, h1, h0, Z, B, reps)
    x._cache[key] = out
    return out


def compose_chain(A, f, g):
    """Chain map f then g, each a pair (f1, f0)."""
    return compose(A, f[0], g[0]), compose(A, f[1], g[1])


@dataclass(frozen=True)
class HomK:
    dim: int
    basis: tuple  # representatives; for shift 0 pairs (f1, f0), otherwise single maps
    note: str = ""


def hom_k(x: TwoTermComplex, y: TwoTermComplex, shift: int) -> HomK:
    """Hom in the homotopy category from x to y[shift]."""
    if x.algebra is not y.algebra:
        from ..errors import AlgebraMismatch

        raise AlgebraMismatch("complexes live over different algebras")
    A, F = x.algebra, x.algebra.field
    if shift == 0:
        cs = chain_maps(x, y)
        f1, f0 = cs.split(cs.reps)
        return HomK(cs.dim, tuple(zip(f1, f0)))
    if shift == 1:
        h10 = PHom(A, x.deg_m1, y.deg_0)
        if h10.dim == 0:
            return HomK(0, ())
        rows = []
        h0 = PHom(A, x.deg_0, y.deg_0)
        h1 = PHom(A, x.deg_m1, y.deg_m1)
        if h0.dim:
            rows.append(h10.to_coords(compose_many_right(A, x.d, h0.basis())))
        if h1.dim:
            rows.append(h10.to_coords(compose_many(A, h1.basis(), y.d)))
        U = np.vstack(rows) if rows else np.zeros((0, h10.dim), dtype=np.int64)
        reps = _quotient_reps(F, np.eye(h10.dim, dtype=np.int64), U, h10.dim)
        return HomK(reps.shape[0], tuple(h10.from_coords(reps)))
    if shift == -1:
        h01 = PHom(A, x.deg_0, y.deg_m1)
        if h01.dim == 0:
            return HomK(0, ())
        S = h01.basis()
        conds = []
        h11 = PHom(A, x.deg_m1, y.deg_m1)
        h00 = PHom(A, x.deg_0, y.deg_0)
        if h11.dim:
            conds.append(h11.to_coords(compose_many_right(A, x.d, S)))
        if h00.dim:
            conds.append(h00.to_coords(compose_many(A, S, y.d)))
        if conds:
            K = la.nullspace(F, np.hstack(conds).T)
        else:
            K = np.eye(h01.dim, dtype=np.int64)
        return HomK(K.shape[0], tuple(h01.from_coords(K)) if K.shape[0] else ())
    return HomK(0, (), note="vanishes identically for two-term complexes")


def is_presilting(x: TwoTermComplex) -> bool:
    return hom_k(x, x, 1).dim == 0
