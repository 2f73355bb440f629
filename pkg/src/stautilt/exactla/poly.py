"""Univariate polynomials over a GF as low-to-high coefficient tuples.

The zero polynomial is the empty tuple.  Factorization runs squarefree
decomposition, distinct-degree splitting, then Cantor-Zassenhaus.
"""

from __future__ import annotations

import numpy as np

from ..errors import InvalidInput
from .field import GF

Poly = tuple[int, ...]
MAX_FACTOR_DEGREE = 64


def trim(f) -> Poly:
    f = [int(c) for c in f]
    while f and f[-1] == 0:
        f.pop()
    return tuple(f)


def deg(f: Poly) -> int:
    return len(f) - 1


def add(F: GF, f: Poly, g: Poly) -> Poly:
    n = max(len(f), len(g))
    a = np.zeros(n, dtype=np.int64)
    b = np.zeros(n, dtype=np.int64)
    a[: len(f)] = f
    b[: len(g)] = g
    return trim(F.add(a, b))


def neg(F: GF, f: Poly) -> Poly:
    return trim(F.neg(np.asarray(f, dtype=np.int64))) if f else ()


def sub(F: GF, f: Poly, g: Poly) -> Poly:
    return add(F, f, neg(F, g))


def scale(F: GF, c: int, f: Poly) -> Poly:
    if not f:
        return ()
    return trim(F.mul(np.asarray(f, dtype=np.int64), int(c)))


def mul(F: GF, f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return ()
    return trim(F.bilinear(np.convolve, np.asarray(f), np.asarray(g)))


def monic(F: GF, f: Poly) -> Poly:
    if not f:
        return ()
    return scale(F, int(F.inv(f[-1])), f)


def divmod_poly(F: GF, f: Poly, g: Poly) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(f)
    dg = deg(g)
    lead_inv = int(F.inv(g[-1]))
    gv = np.asarray(g, dtype=np.int64)
    qt = [0] * max(len(f) - dg, 0)
    while len(r) - 1 >= dg:
        c = int(F.mul(r[-1], lead_inv))
        shift = len(r) - 1 - dg
        qt[shift] = c
        seg = np.asarray(r[shift:], dtype=np.int64)
        r[shift:] = [int(x) for x in F.sub(seg, F.mul(gv, c))]
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return trim(qt), trim(r)


def mod(F: GF, f: Poly, g: Poly) -> Poly:
    return divmod_poly(F, f, g)[1]


def gcd(F: GF, f: Poly, g: Poly) -> Poly:
    while g:
        f, g = g, mod(F, f, g)
    return monic(F, f)


def xgcd(F: GF, f: Poly, g: Poly) -> tuple[Poly, Poly, Poly]:
    """(d, s, t) with s f + t g = d monic."""
    r0, r1 = f, g
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        q, r = divmod_poly(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, q, s1))
        t0, t1 = t1, sub(F, t0, mul(F, q, t1))
    if not r0:
        return (), s0, t0
    c = int(F.inv(r0[-1]))
    return scale(F, c, r0), scale(F, c, s0), scale(F, c, t0)


def powmod(F: GF, f: Poly, e: int, m: Poly) -> Poly:
    result: Poly = (1,)
    base = mod(F, f, m)
    while e:
        if e & 1:
            result = mod(F, mul(F, result, base), m)
        base = mod(F, mul(F, base, base), m)
        e >>= 1
    return mod(F, result, m) if deg(m) > 0 else ()


def derivative(F: GF, f: Poly) -> Poly:
    return trim(int(F.mul(f[i], i % F.p)) for i in range(1, len(f)))


def evaluate(F: GF, f: Poly, x: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = int(F.add(F.mul(acc, x), c))
    return acc


def _pth_root(F: GF, f: Poly) -> Poly:
    # every exponent is a multiple of p; a -> a^(q/p) inverts Frobenius
    e = F.q // F.p
    return trim(F.power(f[i], e) for i in range(0, len(f), F.p))


def squarefree_decomposition(F: GF, f: Poly) -> list[tuple[Poly, int]]:
    """Monic squarefree, pairwise coprime (g, i) with prod g^i = monic(f)."""
    f = monic(F, f)
    out: list[tuple[Poly, int]] = []
    if deg(f) <= 0:
        return out
    df = derivative(F, f)
    if not df:
        return [(g, i * F.p) for g, i in squarefree_decomposition(F, _pth_root(F, f))]
    c = gcd(F, f, df)
    w = divmod_poly(F, f, c)[0]
    i = 1
    while deg(w) > 0:
        y = gcd(F, w, c)
        fac = divmod_poly(F, w, y)[0]
        if deg(fac) > 0:
            out.append((monic(F, fac), i))
        w = y
        c = divmod_poly(F, c, y)[0]
        i += 1
    if deg(c) > 0:
        out.extend((g, j * F.p) for g, j in squarefree_decomposition(F, _pth_root(F, c)))
    return out


def distinct_degree(F: GF, f: Poly) -> list[tuple[Poly, int]]:
    """Split a monic squarefree f into products of irreducibles of equal degree."""
    out = []
    rest = f
    x: Poly = (0, 1)
    h = mod(F, x, rest) if deg(rest) > 0 else ()
    i = 1
    while deg(rest) >= 2 * i:
        h = powmod(F, h, F.q, rest)
        g = gcd(F, rest, sub(F, h, x))
        if deg(g) > 0:
            out.append((g, i))
            rest = divmod_poly(F, rest, g)[0]
            h = mod(F, h, rest)
        i += 1
    if deg(rest) > 0:
        out.append((rest, deg(rest)))
    return out


def equal_degree(F: GF, f: Poly, d: int, rng: np.random.Generator) -> list[Poly]:
    """Cantor-Zassenhaus split of a monic product of distinct degree-d irreducibles."""
    n = deg(f)
    if n == d:
        return [f]
    while True:
        a = trim(F.random(rng, n))
        if deg(a) <= 0:
            continue
        g = gcd(F, f, a)
        if 0 < deg(g) < n:
            break
        if F.p == 2:
            # absolute trace map into F_2
            t = a
            b = a
            for _ in range(F.m * d - 1):
                t = mod(F, mul(F, t, t), f)
                b = add(F, b, t)
        else:
            b = sub(F, powmod(F, a, (F.q**d - 1) // 2, f), (1,))
        g = gcd(F, f, b)
        if 0 < deg(g) < n:
            break
    h = divmod_poly(F, f, g)[0]
    return equal_degree(F, g, d, rng) + equal_degree(F, h, d, rng)


def factor_poly(F: GF, f, seed: int = 0) -> list[tuple[Poly, int]]:
    """Monic irreducible factors with multiplicities, sorted by (degree, coefficients)."""
    f = trim(F.asarray(np.asarray(list(f), dtype=np.int64)).tolist())
    if not f:
        raise InvalidInput("cannot factor the zero polynomial")
    if deg(f) > MAX_FACTOR_DEGREE:
        raise InvalidInput(f"factorization is capped at degree {MAX_FACTOR_DEGREE}")
    rng = np.random.default_rng(seed)
    out: list[tuple[Poly, int]] = []
    for g, mult in squarefree_decomposition(F, f):
        for h, d in distinct_degree(F, g):
            out.extend((irr, mult) for irr in equal_degree(F, h, d, rng))
    out.sort(key=lambda t: (deg(t[0]), t[0]))
    return out


def is_irreducible(F: GF, f) -> bool:
    fs = factor_poly(F, f)
    return len(fs) == 1 and fs[0][1] == 1


def crt_idempotents(F: GF, parts: list[Poly]) -> list[Poly]:
    """For pairwise coprime moduli q_j with product f, polys u_j = delta_jk mod q_k."""
    f: Poly = (1,)
    for q in parts:
        f = mul(F, f, q)
    out = []
    for q in parts:
        cof = divmod_poly(F, f, q)[0]
        _, s, _ = xgcd(F, cof, q)
        out.append(mod(F, mul(F, cof, s), f))
    return out


def from_roots(F: GF, roots) -> Poly:
    f: Poly = (1,)
    for r in roots:
        f = mul(F, f, (int(F.neg(r)), 1))
    return f
