"""Structural analysis: radical, idempotents, blocks, basic algebras, symmetry."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InternalError, InvalidIdempotent, NotBasic, NotSplitField
from ..exactla import linalg as la
from ..exactla import poly as pl
from ..exactla.field import GF
from ..seeding import resolve
from .core import FinDimAlgebra, corner_basis, subalgebra

DEFAULT_SEED = 20240


# ----------------------------------------------------------------------
# radical of an algebra of matrices


def _int_matpow_mod(mats: np.ndarray, e: int, modulus: int) -> np.ndarray:
    """Batched integer matrix power modulo `modulus` (exact)."""
    n = mats.shape[-1]
    use_float = (modulus - 1) ** 2 * n < 2**52

    def mm(x, y):
        if use_float:
            return np.rint(np.matmul(x.astype(np.float64), y.astype(np.float64)) % modulus).astype(np.int64) % modulus
        return np.matmul(x.astype(object), y.astype(object)) % modulus

    result = None
    base = mats % modulus
    while e:
        if e & 1:
            result = base if result is None else mm(result, base)
        e >>= 1
        if e:
            base = mm(base, base)
    return np.asarray(result, dtype=np.int64)


def _radical_prime(p: int, mats: np.ndarray) -> np.ndarray:
    """Coefficient rows (over F_p) spanning the radical of span(mats)."""
    Fp = GF(p)
    h, N = mats.shape[0], mats.shape[1]
    X = np.eye(h, dtype=np.int64)
    level = 0
    while p**level <= N:
        if X.shape[0] == 0:
            break
        Xm = Fp.tensordot(X, mats, axes=(1, 0))  # r, N, N
        if level == 0:
            # Tr(x b) as a bilinear pairing
            G = Fp.matmul(Xm.reshape(Xm.shape[0], -1), mats.transpose(0, 2, 1).reshape(h, -1).T)
        else:
            modulus = p ** (level + 1)
            prods = np.matmul(Xm[:, None].astype(np.float64), mats[None].astype(np.float64))
            prods = np.rint(prods % modulus).astype(np.int64) if N * (p - 1) ** 2 < 2**52 else None
            if prods is None:
                prods = np.matmul(Xm[:, None].astype(object), mats[None].astype(object)).astype(np.int64)
            powered = _int_matpow_mod(prods.reshape(-1, N, N), p**level, modulus)
            tr = np.trace(powered, axis1=1, axis2=2) % modulus
            if np.any(tr % p**level):
                raise InternalError("trace form is not divisible where the theory requires it")
            G = (tr // p**level % p).reshape(Xm.shape[0], h)
        K = la.left_nullspace(Fp, G)
        X = Fp.matmul(K, X) if K.shape[0] else np.zeros((0, h), dtype=np.int64)
        level += 1
    return la.row_basis(Fp, X) if X.shape[0] else X


def matrix_algebra_radical(F: GF, mats) -> np.ndarray:
    """Rows of coefficients (w.r.t. `mats`) spanning the Jacobson radical.

    `mats` is a linearly independent basis of a matrix algebra over F.
    Extension fields are handled by restricting scalars to the prime field.
    """
    mats = np.asarray(mats, dtype=np.int64)
    h = mats.shape[0]
    if h == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if F.m == 1:
        return _radical_prime(F.p, mats)
    m = F.m
    pm = np.stack([F.to_prime_matrix(F.mul(mats[i], F.p**s)) for i in range(h) for s in range(m)])
    rows = _radical_prime(F.p, pm)
    if rows.shape[0] == 0:
        return np.zeros((0, h), dtype=np.int64)
    return la.row_basis(F, F.from_prime_vectors(rows))


def _check_radical(a: FinDimAlgebra, J: np.ndarray) -> None:
    if J.shape[0] == 0:
        return
    F = a.field
    basis = np.eye(a.dim, dtype=np.int64)
    for side in (a.span_products(basis, J), a.span_products(J, basis)):
        if side.shape[0] and not la.in_span(F, J, side):
            raise InternalError("computed radical is not an ideal")
    power = J
    for _ in range(a.dim + 1):
        power = a.span_products(power, J)
        if power.shape[0] == 0:
            return
    raise InternalError("computed radical is not nilpotent")


def radical(a: FinDimAlgebra) -> np.ndarray:
    """Row basis (rref) of the Jacobson radical J(a)."""

    def build():
        J = matrix_algebra_radical(a.field, a.regular_action)
        J = la.row_basis(a.field, J) if J.shape[0] else np.zeros((0, a.dim), dtype=np.int64)
        _check_radical(a, J)
        return J

    return a.cached("radical", build)


def radical_power(a: FinDimAlgebra, k: int) -> np.ndarray:
    J = radical(a)
    out = np.eye(a.dim, dtype=np.int64)
    for _ in range(k):
        out = a.span_products(out, J)
    return out


# ----------------------------------------------------------------------
# minimal polynomials and idempotent splitting


def krylov_minpoly(F: GF, apply, v0, bound: int) -> tuple[int, ...]:
    """Monic minimal polynomial of an operator restricted to the cyclic span of v0."""
    vecs = [np.asarray(v0, dtype=np.int64)]
    for _ in range(bound):
        vecs.append(apply(vecs[-1]))
    K = np.array(vecs).T  # columns are the iterates
    R, piv = la.rref(F, K)
    k = len(piv)
    if piv != list(range(k)):
        raise InternalError("Krylov sequence pivots out of order")
    coeffs = [int(c) for c in F.neg(R[:k, k])] if k else []
    return tuple(coeffs) + (1,)


def element_minpoly(a: FinDimAlgebra, x, e=None) -> tuple[int, ...]:
    """Minimal polynomial of x inside the corner algebra with identity e."""
    e = a.unit if e is None else np.asarray(e, dtype=np.int64)
    L = a.left_matrix(x)
    return krylov_minpoly(a.field, lambda v: a.field.matmul(L, v), e, a.dim)


def split_by_element(a: FinDimAlgebra, x, e, seed: int | None = None):
    """Orthogonal idempotents of e*A*e from the primary decomposition of x.

    Returns (idempotents, factors) where factors are the distinct monic
    irreducible factors of the minimal polynomial of x.
    """
    seed = resolve(seed, DEFAULT_SEED)
    F = a.field
    mu = element_minpoly(a, x, e)
    facs = pl.factor_poly(F, mu, seed=seed)
    if len(facs) <= 1:
        return [np.asarray(e, dtype=np.int64)], [f for f, _ in facs]
    parts = []
    for f, mult in facs:
        q: tuple[int, ...] = (1,)
        for _ in range(mult):
            q = pl.mul(F, q, f)
        parts.append(q)
    polys = pl.crt_idempotents(F, parts)
    idems = []
    for u in polys:
        # u(x) computed with constant term times e
        acc = np.zeros(a.dim, dtype=np.int64)
        for c in reversed(u):
            acc = F.add(a.mul(acc, x), F.mul(e, int(c)))
        idems.append(acc)
    return idems, [f for f, _ in facs]


def _corner_random(a: FinDimAlgebra, e, rng) -> np.ndarray:
    B = corner_basis(a, e)
    c = a.field.random(rng, B.shape[0])
    return a.field.matmul(c, B)


def _is_idempotent(a: FinDimAlgebra, e) -> bool:
    return np.array_equal(a.mul(e, e), e)


def _split_to_primitive(a: FinDimAlgebra, start, seed: int, candidates=None, max_trials: int = 200):
    """Refine a list of orthogonal idempotents until each corner is local with residue field F."""
    F = a.field
    J = radical(a)
    rng = np.random.default_rng(seed)
    todo = [np.asarray(e, dtype=np.int64) for e in start]
    done = []
    while todo:
        e = todo.pop(0)
        cb = corner_basis(a, e)
        cj = corner_basis_in(a, e, J)
        top_dim = cb.shape[0] - cj
        if top_dim == 1:
            done.append(e)
            continue
        pieces = None
        field_factor = None
        trial_elems = []
        if candidates is not None:
            trial_elems.extend(a.mul(a.mul(e, c), e) for c in candidates)
        for t in range(max_trials + len(trial_elems)):
            x = trial_elems[t] if t < len(trial_elems) else _corner_random(a, e, rng)
            idems, facs = split_by_element(a, x, e, seed=seed + t)
            if len(idems) > 1:
                pieces = idems
                break
            if facs and pl.deg(facs[0]) > 1:
                field_factor = facs[0]
                if pl.deg(field_factor) == top_dim:
                    raise NotSplitField(
                        f"a simple quotient is the field F_{F.q}[x]/({_fmt_poly(field_factor)})",
                        minpoly=field_factor,
                        suggested_degree=F.m * pl.deg(field_factor),
                    )
        if pieces is None:
            if field_factor is not None:
                raise NotSplitField(
                    "could not split a corner; its residue ring looks non-split",
                    minpoly=field_factor,
                    suggested_degree=F.m * pl.deg(field_factor),
                )
            raise InternalError("failed to split a non-local corner")
        todo = pieces + todo
    return done


def _fmt_poly(f) -> str:
    return " + ".join(f"{c}x^{i}" for i, c in enumerate(f) if c) or "0"


def corner_basis_in(a: FinDimAlgebra, e, span_rows) -> int:
    """dim of e*S*e where S is a two-sided ideal given by rows."""
    span_rows = np.asarray(span_rows, dtype=np.int64).reshape(-1, a.dim)
    if span_rows.shape[0] == 0:
        return 0
    F = a.field
    Le = a.left_matrix(e)
    Re = a.right_matrix(e)
    imgs = F.matmul(Re, F.matmul(Le, span_rows.T)).T
    return la.rank(F, imgs)


def primitive_idempotents(a: FinDimAlgebra, seed: int | None = None) -> list[np.ndarray]:
    """Complete set of primitive orthogonal idempotents."""
    seed = resolve(seed, DEFAULT_SEED)

    def build():
        given = a._cache.get("given_idems")
        if given is not None:
            return [np.array(e) for e in given]
        return _order_idempotents(a, _split_to_primitive(a, [a.unit], seed))

    return a.cached("prim_idems", build)


def _order_idempotents(a: FinDimAlgebra, idems):
    group = getattr(a, "group", None)
    if group is None:
        return idems
    # group algebras: the trivial module's projective cover first
    aug = [a.field.sum(e) for e in idems]
    order = sorted(range(len(idems)), key=lambda i: 0 if aug[i] else 1)
    return [idems[i] for i in order]


def same_projective(a: FinDimAlgebra, e, f) -> bool:
    """A*e and A*f are isomorphic (e, f primitive) iff e*A*f is not inside J."""
    J = radical(a)
    B = corner_basis(a, e, f)
    if B.shape[0] == 0:
        return False
    return not la.in_span(a.field, J, B) if J.shape[0] else True


@dataclass(frozen=True)
class IdempotentClasses:
    idems: tuple
    classes: tuple  # tuple of tuples of indices into idems


def idempotent_classes(a: FinDimAlgebra) -> IdempotentClasses:
    def build():
        idems = primitive_idempotents(a)
        classes: list[list[int]] = []
        for i, e in enumerate(idems):
            for cl in classes:
                if same_projective(a, idems[cl[0]], e):
                    cl.append(i)
                    break
            else:
                classes.append([i])
        return IdempotentClasses(tuple(idems), tuple(tuple(c) for c in classes))

    return a.cached("idem_classes", build)


def num_simples(a: FinDimAlgebra) -> int:
    return len(idempotent_classes(a).classes)


def is_basic(a: FinDimAlgebra) -> bool:
    cl = idempotent_classes(a)
    return len(cl.classes) == len(cl.idems)


def basic_idempotents(a: FinDimAlgebra) -> list[np.ndarray]:
    """One primitive idempotent per isomorphism class of projectives."""
    cl = idempotent_classes(a)
    return [cl.idems[c[0]] for c in cl.classes]


def is_split(a: FinDimAlgebra) -> tuple[bool, tuple | None]:
    try:
        primitive_idempotents(a)
    except NotSplitField as exc:
        return False, exc.minpoly
    return True, None


def cartan_matrix(a: FinDimAlgebra) -> np.ndarray:
    """C[i, j] = dim e_i A e_j, the multiplicity of simple i in P(j)."""
    es = basic_idempotents(a)
    r = len(es)
    C = np.zeros((r, r), dtype=np.int64)
    for i in range(r):
        for j in range(r):
            C[i, j] = corner_basis(a, es[i], es[j]).shape[0]
    return C


def simple_dimensions(a: FinDimAlgebra) -> list[int]:
    """Dimension of each simple module, in class order."""
    cl = idempotent_classes(a)
    return [len(c) for c in cl.classes]


# ----------------------------------------------------------------------
# centre and blocks


def center(a: FinDimAlgebra) -> np.ndarray:
    def build():
        F = a.field
        # z with z b_i = b_i z for every generator
        cons = []
        for g in a.gens:
            cons.append(F.sub(a.right_matrix(g), a.left_matrix(g)))
        return la.row_basis(F, la.nullspace(F, np.vstack(cons)))

    return a.cached("center", build)


@dataclass(frozen=True, eq=False)
class BlockIdempotent:
    algebra: FinDimAlgebra
    vector: np.ndarray

    def __repr__(self):
        return f"BlockIdempotent({self.vector.tolist()})"


def central_blocks(a: FinDimAlgebra, seed: int | None = None) -> list[BlockIdempotent]:
    """Primitive idempotents of the centre, in a deterministic order."""
    seed = resolve(seed, DEFAULT_SEED)

    def build():
        F = a.field
        Z = center(a)
        idems = [a.unit]
        changed = True
        while changed:
            changed = False
            for z in Z:
                new = []
                for e in idems:
                    x = a.mul(e, z)
                    pieces, _ = split_by_element(a, x, e, seed=seed)
                    if len(pieces) > 1:
                        changed = True
                    new.extend(pieces)
                idems = new
        for e in idems:
            eZ = la.row_basis(F, np.array([a.mul(e, z) for z in Z]))
            mats = np.array([a.left_matrix(v) for v in eZ])
            radZ = matrix_algebra_radical(F, mats)
            if eZ.shape[0] - radZ.shape[0] != 1:
                x = _first_nonscalar(a, e, eZ, radZ)
                mu = element_minpoly(a, x, e) if x is not None else None
                facs = pl.factor_poly(F, mu) if mu else []
                g = facs[0][0] if facs else None
                raise NotSplitField(
                    "the centre has a residue field larger than the base field",
                    minpoly=g,
                    suggested_degree=F.m * (pl.deg(g) if g else 2),
                )
        # order by the position of the first nonzero coordinate
        idems.sort(key=lambda v: tuple(-int(c != 0) for c in v))
        return [BlockIdempotent(a, e) for e in idems]

    return a.cached("blocks", build)


def _first_nonscalar(a, e, eZ, radZ):
    F = a.field
    for v in eZ:
        rest = F.sub(v, F.mul(e, int(v[np.flatnonzero(e)[0]]) if np.any(e) else 0))
        if np.any(rest):
            return v
    return None


def block_algebra(a: FinDimAlgebra, e: BlockIdempotent | np.ndarray) -> FinDimAlgebra:
    vec = e.vector if isinstance(e, BlockIdempotent) else np.asarray(e, dtype=np.int64)
    F = a.field
    if not _is_idempotent(a, vec):
        raise InvalidIdempotent("not an idempotent")
    for g in a.gens:
        if not np.array_equal(a.mul(vec, g), a.mul(g, vec)):
            raise InvalidIdempotent("not central")
    rows = la.row_basis(F, F.matmul(a.left_matrix(vec), np.eye(a.dim, dtype=np.int64)).T)
    sub = subalgebra(a, rows, vec, name=f"block of {a.name}".strip())
    sub.block_idempotent = vec
    group = getattr(a, "group", None)
    if group is not None:
        sub.group = None
    return sub


# ----------------------------------------------------------------------
# basic algebra


@dataclass(frozen=True, eq=False)
class Condensation:
    basic: FinDimAlgebra
    idem: np.ndarray
    mults: tuple[int, ...]
    source: FinDimAlgebra


def condense_basic(a: FinDimAlgebra) -> Condensation:
    def build():
        cl = idempotent_classes(a)
        mults = tuple(len(c) for c in cl.classes)
        reps = [cl.idems[c[0]] for c in cl.classes]
        idem = np.zeros(a.dim, dtype=np.int64)
        for e in reps:
            idem = a.field.add(idem, e)
        if all(m == 1 for m in mults):
            return Condensation(a, a.unit.copy(), mults, a)
        rows = corner_basis(a, idem)
        basic = subalgebra(a, rows, idem, name="basic")
        piv = [int(np.flatnonzero(r)[0]) for r in rows]
        basic._cache["given_idems"] = np.array([e[piv] for e in reps])
        return Condensation(basic, idem, mults, a)

    return a.cached("condensation", build)


# ----------------------------------------------------------------------
# symmetry and Gabriel quiver


def symmetric_forms(a: FinDimAlgebra) -> np.ndarray:
    """Rows spanning the linear forms vanishing on all commutators."""
    F = a.field
    return la.nullspace(F, a.commutator_matrix())


def _nondegenerate(a: FinDimAlgebra, lam) -> bool:
    F = a.field
    gram = F.tensordot(a.mult, lam, axes=(2, 0))
    return la.rank(F, gram) == a.dim


def is_symmetric(a: FinDimAlgebra, seed: int | None = None) -> np.ndarray | None:
    """A symmetrizing linear form (as coefficient row on the basis) or None."""
    seed = resolve(seed, DEFAULT_SEED)
    F = a.field
    S = symmetric_forms(a)
    t = S.shape[0]
    if t == 0:
        return None
    cands = [S[i] for i in range(t)]
    rng = np.random.default_rng(seed)
    cands += [F.matmul(F.random(rng, t), S) for _ in range(64)]
    for lam in cands:
        if np.any(lam) and _nondegenerate(a, lam):
            return lam
    if F.q**t <= 4096:
        for code in range(1, F.q**t):
            c = np.array([(code // F.q**s) % F.q for s in range(t)], dtype=np.int64)
            lam = F.matmul(c, S)
            if _nondegenerate(a, lam):
                return lam
    return None


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[tuple[str, str, str], ...]  # (name, source, target)
    relations: tuple = ()

    def arrow_count(self, source: str, target: str) -> int:
        return sum(1 for _, s, t in self.arrows if s == source and t == target)


def gabriel_quiver(a: FinDimAlgebra) -> Quiver:
    if not is_basic(a):
        raise NotBasic("the Gabriel quiver is only computed for basic algebras")
    es = primitive_idempotents(a)
    J = radical(a)
    J2 = a.span_products(J, J)
    verts = tuple(str(i + 1) for i in range(len(es)))
    arrows = []
    for i, ei in enumerate(es):
        for j, ej in enumerate(es):
            n = _corner_dim_in(a, ej, ei, J) - _corner_dim_in(a, ej, ei, J2)
            for k in range(n):
                arrows.append((f"a{i + 1}{j + 1}_{k}", verts[i], verts[j]))
    return Quiver(verts, tuple(arrows))


def _corner_dim_in(a: FinDimAlgebra, e, f, rows) -> int:
    """dim of e*S*f for a two-sided ideal S."""
    rows = np.asarray(rows, dtype=np.int64).reshape(-1, a.dim)
    if rows.shape[0] == 0:
        return 0
    F = a.field
    imgs = F.matmul(a.right_matrix(f), F.matmul(a.left_matrix(e), rows.T)).T
    return la.rank(F, imgs)
