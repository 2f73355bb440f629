"""Finite fields F_q with vectorised numpy arithmetic.

Elements are integer codes.  For q = p^m the code of
c_0 + c_1 x + ... + c_{m-1} x^{m-1} is sum(c_s * p**s), so the prime field
sits inside every extension as the codes 0..p-1.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from ..errors import InvalidField

# low-to-high coefficients of monic irreducible polynomials
BUILTIN_MODULI: dict[int, tuple[int, ...]] = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (2, 1, 1),
    25: (2, 1, 1),
    27: (1, 2, 0, 1),
}

MAX_TABLE_ORDER = 1024
_FLOAT_EXACT = 2.0**52


def _first_irreducible(p: int, m: int) -> tuple[int, ...]:
    """First monic irreducible of degree m, counting lower coefficients as base-p digits."""
    for k in range(p**m):
        low = [(k // p**i) % p for i in range(m)]
        if low[0] == 0:
            continue
        f = tuple(low) + (1,)
        if _irreducible_over_prime(f, p):
            return f
    raise InvalidField(f"no irreducible polynomial of degree {m} over F_{p}")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            m = 0
            while q % p == 0:
                q //= p
                m += 1
            if q != 1 or not is_prime(p):
                break
            return p, m
    raise InvalidField(f"{q} is not a prime power")


class GF:
    """The finite field with p**degree elements.

    Instances compare equal when characteristic, degree and modulus agree.
    All arithmetic methods accept ints or integer arrays and broadcast.
    """

    def __init__(self, p: int, degree: int = 1, modulus=None):
        if not is_prime(p):
            raise InvalidField(f"characteristic {p} is not prime")
        if p >= 1 << 15:
            raise InvalidField("characteristic must be below 32768")
        if degree < 1:
            raise InvalidField("extension degree must be >= 1")
        self.p = int(p)
        self.m = int(degree)
        self.q = self.p**self.m
        if self.m == 1:
            if modulus:
                raise InvalidField("prime fields take no modulus")
            self.modulus: tuple[int, ...] = ()
        else:
            if self.q > MAX_TABLE_ORDER:
                raise InvalidField(f"extension fields are limited to q <= {MAX_TABLE_ORDER}")
            if not modulus:
                modulus = BUILTIN_MODULI.get(self.q) or _first_irreducible(self.p, self.m)
            modulus = tuple(int(c) % self.p for c in modulus)
            if len(modulus) != self.m + 1 or modulus[-1] != 1:
                raise InvalidField("modulus must be monic of the extension degree")
            if not _irreducible_over_prime(modulus, self.p):
                raise InvalidField(f"modulus {modulus} is reducible over F_{self.p}")
            self.modulus = modulus
            self._build_tables()

    # ------------------------------------------------------------------
    @classmethod
    def of_order(cls, q: int) -> "GF":
        p, m = _prime_power(q)
        return cls(p, m)

    @classmethod
    def from_spec(cls, spec: dict) -> "GF":
        try:
            return cls(int(spec["p"]), int(spec.get("degree", 1)), spec.get("modulus") or None)
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidField(f"bad field spec {spec!r}") from exc

    def spec(self) -> dict:
        return {"p": self.p, "degree": self.m, "modulus": list(self.modulus)}

    @property
    def is_prime(self) -> bool:
        return self.m == 1

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        return f"GF({self.q})" if self.m == 1 else f"GF({self.q}, modulus={self.modulus})"

    # ------------------------------------------------------------------
    def _build_tables(self) -> None:
        p, m, q = self.p, self.m, self.q
        digits = np.array([[(c // p**s) % p for s in range(m)] for c in range(q)], dtype=np.int64)
        self._digits = digits
        self._weights = p ** np.arange(m, dtype=np.int64)
        # reduction tensor: x^s * x^t = sum_u red[s, t, u] x^u
        powers = np.zeros((2 * m - 1, m), dtype=np.int64)
        for k in range(2 * m - 1):
            if k < m:
                powers[k, k] = 1
            else:
                prev = np.concatenate([[0], powers[k - 1][:-1]])
                top = powers[k - 1][-1]
                prev = (prev - top * np.array(self.modulus[:-1], dtype=np.int64)) % p
                powers[k] = prev
        self._red = np.zeros((m, m, m), dtype=np.int64)
        for s in range(m):
            for t in range(m):
                self._red[s, t] = powers[s + t]
        a = digits[:, None, :]
        b = digits[None, :, :]
        self._add = ((a + b) % p) @ self._weights
        self._neg = ((-digits) % p) @ self._weights
        prod = np.einsum("as,bt,stu->abu", digits, digits, self._red) % p
        self._mul = prod @ self._weights
        inv = np.zeros(q, dtype=np.int64)
        for x in range(1, q):
            inv[x] = int(np.nonzero(self._mul[x] == 1)[0][0])
        self._inv = inv

    # ------------------------------------------------------------------
    def asarray(self, a) -> np.ndarray:
        """Validate codes and return an int64 array (prime fields reduce mod p)."""
        arr = np.asarray(a, dtype=np.int64)
        if self.m == 1:
            return arr % self.p
        if arr.size and (arr.min() < 0 or arr.max() >= self.q):
            raise InvalidField(f"element codes must lie in [0, {self.q})")
        return arr

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def add(self, a, b):
        if self.m == 1:
            return (np.asarray(a, dtype=np.int64) + b) % self.p
        return self._add[a, b]

    def neg(self, a):
        if self.m == 1:
            return (-np.asarray(a, dtype=np.int64)) % self.p
        return self._neg[a]

    def sub(self, a, b):
        if self.m == 1:
            return (np.asarray(a, dtype=np.int64) - b) % self.p
        return self._add[a, self._neg[b]]

    def mul(self, a, b):
        if self.m == 1:
            return (np.asarray(a, dtype=np.int64) * b) % self.p
        return self._mul[a, b]

    def inv(self, a):
        a_arr = np.asarray(a, dtype=np.int64)
        if np.any(a_arr == 0):
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.m == 1:
            return np.asarray(pow_mod_array(a_arr, self.p - 2, self.p))
        return self._inv[a_arr]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a: int, e: int) -> int:
        result, base = 1, int(a)
        if e < 0:
            base, e = int(self.inv(base)), -e
        while e:
            if e & 1:
                result = int(self.mul(result, base))
            base = int(self.mul(base, base))
            e >>= 1
        return result

    def sum(self, a, axis=None):
        a = np.asarray(a, dtype=np.int64)
        if self.m == 1:
            return a.sum(axis=axis) % self.p
        d = self._digits[a]
        if axis is None:
            return int((d.reshape(-1, self.m).sum(axis=0) % self.p) @ self._weights)
        return (d.sum(axis=axis % a.ndim) % self.p) @ self._weights

    # ------------------------------------------------------------------
    def bilinear(self, fn, a, b) -> np.ndarray:
        """Evaluate a bilinear integer map `fn` (e.g. np.matmul) over this field.

        `fn` must be bilinear over the integers; prime fields go through float64
        BLAS when exact, extensions through their coefficient digits.
        """
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return _exact_int(fn, a, b, self.p)
        ad = np.moveaxis(self._digits[a], -1, 0)
        bd = np.moveaxis(self._digits[b], -1, 0)
        parts = [[_exact_int(fn, ad[s], bd[t], self.p) for t in range(self.m)] for s in range(self.m)]
        out = None
        for u in range(self.m):
            acc = 0
            for s in range(self.m):
                for t in range(self.m):
                    c = self._red[s, t, u]
                    if c:
                        acc = acc + c * parts[s][t]
            acc = np.asarray(acc) % self.p
            out = acc * self._weights[u] if out is None else out + acc * self._weights[u]
        return np.asarray(out, dtype=np.int64)

    def matmul(self, a, b) -> np.ndarray:
        return self.bilinear(np.matmul, a, b)

    def dot(self, a, b):
        return self.bilinear(np.dot, a, b)

    def tensordot(self, a, b, axes) -> np.ndarray:
        return self.bilinear(lambda x, y: np.tensordot(x, y, axes=axes), a, b)

    def einsum(self, subscripts: str, a, b) -> np.ndarray:
        return self.bilinear(lambda x, y: np.einsum(subscripts, x, y), a, b)

    # ------------------------------------------------------------------
    @cached_property
    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    @cached_property
    def prime_mult_blocks(self) -> np.ndarray:
        """(q, m, m) integer matrices of multiplication by each element over F_p.

        Column t of block c holds the digits of c * x^t.
        """
        if self.m == 1:
            return np.arange(self.p, dtype=np.int64).reshape(self.p, 1, 1)
        blocks = np.zeros((self.q, self.m, self.m), dtype=np.int64)
        for t in range(self.m):
            basis_el = self.p**t
            prods = self._mul[:, basis_el]
            blocks[:, :, t] = self._digits[prods]
        return blocks

    def to_prime_matrix(self, a: np.ndarray) -> np.ndarray:
        """Restriction of scalars: an (r, c) matrix over F_q as (r*m, c*m) over F_p."""
        a = np.asarray(a, dtype=np.int64)
        if self.m == 1:
            return a.copy()
        r, c = a.shape
        blocks = self.prime_mult_blocks[a]  # r, c, m, m
        return blocks.transpose(0, 2, 1, 3).reshape(r * self.m, c * self.m)

    def from_prime_vectors(self, v: np.ndarray) -> np.ndarray:
        """Inverse of coordinate restriction for row vectors of length n*m."""
        v = np.asarray(v, dtype=np.int64)
        if self.m == 1:
            return v.copy()
        n = v.shape[-1] // self.m
        return v.reshape(v.shape[:-1] + (n, self.m)) @ self._weights

    def random(self, rng: np.random.Generator, shape) -> np.ndarray:
        return rng.integers(0, self.q, size=shape, dtype=np.int64)


def pow_mod_array(a: np.ndarray, e: int, p: int) -> np.ndarray:
    result = np.ones_like(a)
    base = a % p
    while e:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


def _exact_int(fn, a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # float64 BLAS is exact while every partial sum stays below 2**52
    bound = (p - 1) ** 2 * max(a.size, b.size, 1)
    if bound < _FLOAT_EXACT:
        out = fn(a.astype(np.float64), b.astype(np.float64))
        return np.asarray(np.rint(np.asarray(out) % p), dtype=np.int64) % p
    return np.asarray(fn(a.astype(object), b.astype(object)) % p, dtype=np.int64)


def _irreducible_over_prime(modulus: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(modulus) - 1
    f = list(modulus)
    for d in range(1, deg // 2 + 1):
        for code in range(p**d):
            g = [(code // p**s) % p for s in range(d)] + [1]
            if _poly_mod_prime(f, g, p) == []:
                return False
    return True


def _poly_mod_prime(f: list[int], g: list[int], p: int) -> list[int]:
    r = list(f)
    dg = len(g) - 1
    while len(r) - 1 >= dg and r:
        c = r[-1]
        if c:
            shift = len(r) - 1 - dg
            for i, gi in enumerate(g):
                r[shift + i] = (r[shift + i] - c * gi) % p
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return r
