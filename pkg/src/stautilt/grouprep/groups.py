"""Finite groups stored as multiplication tables."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from ..errors import BadAction, BadSubgroup, GroupTooLarge, InvalidInput

GROUP_CAP = 10_000


class FiniteGroup:
    """A group on elements 0..n-1 with ``table[i, j] = i * j``.

    Element order is canonical: breadth-first from the identity over the
    generators.  ``parts`` maps names to embeddings of distinguished
    subgroups (factors of products), as index arrays into this group.
    """

    def __init__(self, table, identity: int = 0, generators: Sequence[int] = (), name: str = "", check: bool = True):
        t = np.asarray(table, dtype=np.int64)
        n = t.shape[0]
        if t.shape != (n, n) or n == 0:
            raise InvalidInput("group table must be square and nonempty")
        self.table = t
        self.table.setflags(write=False)
        self.order = n
        self.identity = int(identity)
        self.name = name
        self.parts: dict[str, "Subgroup"] = {}
        self.perms: list[tuple[int, ...]] | None = None
        if check:
            self._validate()
        inv = np.empty(n, dtype=np.int64)
        rows, cols = np.nonzero(t == self.identity)
        inv[rows] = cols
        self.inverse = inv
        self.generators = tuple(int(g) for g in generators) if generators else _greedy_generators(self)

    def _validate(self):
        t, n = self.table, self.order
        if t.min() < 0 or t.max() >= n:
            raise InvalidInput("table entries out of range")
        full = np.arange(n)
        for axis in (0, 1):
            if not np.all(np.sort(t, axis=axis) == (full[:, None] if axis == 0 else full[None, :])):
                raise InvalidInput("table is not a Latin square")
        e = self.identity
        if not (np.array_equal(t[e], full) and np.array_equal(t[:, e], full)):
            raise InvalidInput("identity element is wrong")
        if n <= 64:
            if not np.array_equal(t[t, :], t[:, t]):
                raise InvalidInput("table is not associative")
        else:
            rng = np.random.default_rng(0)
            a, b, c = rng.integers(0, n, size=(3, 4096))
            if not np.array_equal(t[t[a, b], c], t[a, t[b, c]]):
                raise InvalidInput("table is not associative")

    def __repr__(self):
        return f"<FiniteGroup {self.name or ''} order={self.order}>"

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return int(self.table[self.table[g, x], self.inverse[g]])

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = int(self.table[x, a])
            k += 1
        return k

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def power(self, a: int, k: int) -> int:
        x = self.identity
        for _ in range(k % self.element_order(a)):
            x = int(self.table[x, a])
        return x

    @property
    def whole(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.order)))

    def subgroup(self, gens: Sequence[int]) -> "Subgroup":
        return Subgroup(self, _closure(self, [int(g) for g in gens]))

    def subgroup_from_elements(self, elems: Sequence[int]) -> "Subgroup":
        return Subgroup(self, tuple(sorted(int(x) for x in elems)))


def _closure(g: FiniteGroup, gens: list[int]) -> tuple[int, ...]:
    seen = {g.identity}
    queue = [g.identity]
    while queue:
        x = queue.pop()
        for s in gens:
            y = int(g.table[x, s])
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return tuple(sorted(seen))


def _greedy_generators(g: FiniteGroup) -> tuple[int, ...]:
    gens: list[int] = []
    span = {g.identity}
    for x in range(g.order):
        if x not in span:
            gens.append(x)
            span = set(_closure(g, gens))
        if len(span) == g.order:
            break
    return tuple(gens)


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    elements: tuple[int, ...]
    _cache: dict = dc_field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        els = tuple(sorted(set(int(x) for x in self.elements)))
        object.__setattr__(self, "elements", els)
        g = self.parent
        s = set(els)
        if g.identity not in s:
            raise BadSubgroup("subgroup must contain the identity")
        arr = np.array(els)
        if not s.issuperset(g.table[np.ix_(arr, arr)].ravel().tolist()):
            raise BadSubgroup("subset is not closed under multiplication")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return int(x) in set(self.elements)

    def index(self) -> int:
        return self.parent.order // self.order

    def is_normal(self) -> bool:
        g = self.parent
        s = set(self.elements)
        return all(g.conj(x, h) in s for x in g.generators for h in self.elements)

    def as_group(self) -> tuple[FiniteGroup, np.ndarray]:
        """The subgroup as a standalone group, with its embedding into the parent."""
        if "group" in self._cache:
            return self._cache["group"]
        g = self.parent
        sub_gens = _greedy_generators_in(g, self.elements)
        order = _bfs_order(g, sub_gens)
        pos = {x: i for i, x in enumerate(order)}
        arr = np.array(order)
        table = np.vectorize(pos.__getitem__)(g.table[np.ix_(arr, arr)])
        grp = FiniteGroup(table, 0, tuple(pos[s] for s in sub_gens), name=f"subgroup of {g.name}", check=False)
        self._cache["group"] = (grp, arr)
        return grp, arr

    def left_coset_reps(self) -> list[int]:
        """Minimal representative of each left coset gH, sorted."""
        g = self.parent
        seen: set[int] = set()
        reps = []
        arr = np.array(self.elements)
        for x in range(g.order):
            if x in seen:
                continue
            reps.append(x)
            seen.update(g.table[x, arr].tolist())
        return reps

    def is_p_quotient(self, p: int) -> bool:
        k = self.index()
        while k % p == 0:
            k //= p
        return k == 1


def _greedy_generators_in(g: FiniteGroup, elements) -> tuple[int, ...]:
    gens: list[int] = []
    span = {g.identity}
    target = len(elements)
    for x in elements:
        if x not in span:
            gens.append(int(x))
            span = set(_closure(g, gens))
        if len(span) == target:
            break
    return tuple(gens)


def _bfs_order(g: FiniteGroup, gens: Sequence[int]) -> list[int]:
    order = [g.identity]
    seen = {g.identity}
    i = 0
    while i < len(order):
        x = order[i]
        for s in sorted(gens):
            y = int(g.table[x, s])
            if y not in seen:
                seen.add(y)
                order.append(y)
        i += 1
    return order


# ----------------------------------------------------------------------
# constructors


def parse_permutation(p, degree: int | None = None) -> tuple[int, ...]:
    """A permutation from an image list (0-based) or cycle notation like "(1 2 3)(4 5)" (1-based)."""
    if isinstance(p, str):
        cycles = re.findall(r"\(([^()]*)\)", p)
        pts = [[int(x) - 1 for x in re.split(r"[\s,]+", c.strip()) if x] for c in cycles]
        n = max([max(c) + 1 for c in pts if c] + [degree or 0])
        img = list(range(n))
        for c in pts:
            for a, b in zip(c, c[1:] + c[:1]):
                img[a] = b
        return tuple(img)
    img = tuple(int(x) for x in p)
    if sorted(img) != list(range(len(img))):
        raise InvalidInput(f"{p} is not a permutation")
    return img


def group_from_permutations(gens, name: str = "") -> FiniteGroup:
    perms = [parse_permutation(p) for p in gens]
    deg = max([len(p) for p in perms] + [1])
    perms = sorted(tuple(p) + tuple(range(len(p), deg)) for p in perms)
    ident = tuple(range(deg))

    def compose(a, b):  # apply b first, then a
        return tuple(a[b[i]] for i in range(deg))

    order = [ident]
    pos = {ident: 0}
    i = 0
    while i < len(order):
        x = order[i]
        for s in perms:
            y = compose(x, s)
            if y not in pos:
                if len(order) >= GROUP_CAP:
                    raise GroupTooLarge(f"group exceeds {GROUP_CAP} elements")
                pos[y] = len(order)
                order.append(y)
        i += 1
    n = len(order)
    table = np.empty((n, n), dtype=np.int64)
    for a, x in enumerate(order):
        for b, y in enumerate(order):
            table[a, b] = pos[compose(x, y)]
    gen_idx = tuple(dict.fromkeys(pos[s] for s in perms if pos[s] != 0))
    grp = FiniteGroup(table, 0, gen_idx, name=name, check=False)
    grp.perms = order
    return grp


def group_from_table(table, name: str = "") -> FiniteGroup:
    t = np.asarray(table, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise InvalidInput("group table must be square")
    if t.shape[0] > GROUP_CAP:
        raise GroupTooLarge(f"group exceeds {GROUP_CAP} elements")
    full = np.arange(t.shape[0])
    ids = [i for i in range(t.shape[0]) if np.array_equal(t[i], full)]
    if not ids:
        raise InvalidInput("table has no identity")
    return FiniteGroup(t, ids[0], name=name)


def cyclic(n: int) -> FiniteGroup:
    if n == 1:
        return FiniteGroup([[0]], 0, (), name="C1")
    return group_from_permutations([list(range(1, n)) + [0]], name=f"C{n}")


def dihedral(n: int) -> FiniteGroup:
    """The dihedral group of order 2n acting on an n-gon."""
    rot = [(i + 1) % n for i in range(n)]
    ref = [(-i) % n for i in range(n)]
    return group_from_permutations([rot, ref], name=f"D{n}")


def symmetric(n: int) -> FiniteGroup:
    if n == 1:
        return cyclic(1)
    gens = [[1, 0] + list(range(2, n)), list(range(1, n)) + [0]]
    return group_from_permutations(gens, name=f"S{n}")


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    ng, nh = g.order, h.order
    if ng * nh > GROUP_CAP:
        raise GroupTooLarge(f"group exceeds {GROUP_CAP} elements")
    gi, hi = np.meshgrid(np.arange(ng), np.arange(nh), indexing="ij")
    gi, hi = gi.ravel(), hi.ravel()
    table = g.table[gi[:, None], gi[None, :]] * nh + h.table[hi[:, None], hi[None, :]]
    ident = g.identity * nh + h.identity
    gens = [x * nh + h.identity for x in g.generators] + [g.identity * nh + y for y in h.generators]
    prod = _canonical(table, ident, gens, name=f"{g.name}x{h.name}")
    relabel = prod.relabel
    prod.parts["factor0"] = prod.subgroup_from_elements(relabel[np.arange(ng) * nh + h.identity])
    prod.parts["factor1"] = prod.subgroup_from_elements(relabel[g.identity * nh + np.arange(nh)])
    prod.factor_embeddings = {
        "factor0": relabel[np.arange(ng) * nh + h.identity],
        "factor1": relabel[g.identity * nh + np.arange(nh)],
    }
    return prod


def _check_automorphism(n: FiniteGroup, phi: np.ndarray) -> None:
    if sorted(phi.tolist()) != list(range(n.order)):
        raise BadAction("action image is not a bijection")
    t = n.table
    if not np.array_equal(phi[t], t[phi[:, None], phi[None, :]]):
        raise BadAction("action image is not a homomorphism")


def semidirect(base: FiniteGroup, acting: FiniteGroup, action: Sequence[Sequence[int]]) -> FiniteGroup:
    """base x| acting, where action[k] is the automorphism (as an image list) for acting.generators[k].

    Product: (n1, q1)(n2, q2) = (n1 * phi_q1(n2), q1 q2).
    """
    if len(action) != len(acting.generators):
        raise BadAction("one automorphism per generator of the acting group is required")
    nb, nq = base.order, acting.order
    if nb * nq > GROUP_CAP:
        raise GroupTooLarge(f"group exceeds {GROUP_CAP} elements")
    phis = {}
    gen_maps = []
    for img in action:
        phi = np.asarray(img, dtype=np.int64)
        if phi.shape != (nb,):
            raise BadAction("automorphism must list an image for every base element")
        _check_automorphism(base, phi)
        gen_maps.append(phi)
    phis[acting.identity] = np.arange(nb)
    queue = [acting.identity]
    while queue:
        q = queue.pop()
        for s, phi_s in zip(acting.generators, gen_maps):
            r = acting.mul(q, s)
            comp = phis[q][phi_s]
            if r in phis:
                if not np.array_equal(phis[r], comp):
                    raise BadAction("action is not a homomorphism from the acting group")
            else:
                phis[r] = comp
                queue.append(r)
    # verify every relation, not only those met along the search
    for q in range(nq):
        for s, phi_s in zip(acting.generators, gen_maps):
            if not np.array_equal(phis[acting.mul(q, s)], phis[q][phi_s]):
                raise BadAction("action is not a homomorphism from the acting group")
    PHI = np.stack([phis[q] for q in range(nq)])
    ni, qi = np.meshgrid(np.arange(nb), np.arange(nq), indexing="ij")
    ni, qi = ni.ravel(), qi.ravel()
    new_n = base.table[ni[:, None], PHI[qi[:, None], ni[None, :]]]
    new_q = acting.table[qi[:, None], qi[None, :]]
    table = new_n * nq + new_q
    ident = base.identity * nq + acting.identity
    gens = [x * nq + acting.identity for x in base.generators] + [base.identity * nq + y for y in acting.generators]
    prod = _canonical(table, ident, gens, name=f"{base.name}:{acting.name}")
    relabel = prod.relabel
    prod.parts["base"] = prod.subgroup_from_elements(relabel[np.arange(nb) * nq + acting.identity])
    prod.parts["acting"] = prod.subgroup_from_elements(relabel[base.identity * nq + np.arange(nq)])
    prod.factor_embeddings = {
        "base": relabel[np.arange(nb) * nq + acting.identity],
        "acting": relabel[base.identity * nq + np.arange(nq)],
    }
    return prod


def _canonical(table: np.ndarray, ident: int, gens: Sequence[int], name: str) -> FiniteGroup:
    """Relabel a table in BFS order from the identity over sorted generators."""
    raw = FiniteGroup(table, ident, tuple(gens), check=False)
    order = _bfs_order(raw, gens)
    if len(order) != raw.order:
        raise InvalidInput("generators do not generate the group")
    relabel = np.empty(raw.order, dtype=np.int64)
    relabel[np.array(order)] = np.arange(raw.order)
    arr = np.array(order)
    new_table = relabel[table[np.ix_(arr, arr)]]
    gens_new = tuple(dict.fromkeys(int(relabel[g]) for g in sorted(gens) if g != ident))
    grp = FiniteGroup(new_table, 0, gens_new, name=name, check=True)
    grp.relabel = relabel
    return grp


def inner_automorphism(g: FiniteGroup, x: int) -> list[int]:
    """Image list of y -> x y x^-1."""
    return [g.conj(x, y) for y in range(g.order)]


def aut_group_small(g: FiniteGroup) -> list[np.ndarray]:
    """All automorphisms as image arrays, found from generator images."""
    if g.order > 64:
        raise GroupTooLarge("automorphism search is limited to groups of order <= 64")
    gens = list(g.generators)
    order = _bfs_order(g, gens)
    # express each element as (predecessor, generator) along the BFS tree
    pred: dict[int, tuple[int, int]] = {}
    seen = {g.identity}
    for x in order:
        for k, s in enumerate(sorted(gens)):
            y = g.mul(x, s)
            if y not in seen:
                seen.add(y)
                pred[y] = (x, k)
    sgens = sorted(gens)
    orders = [g.element_order(s) for s in sgens]
    candidates = [[y for y in range(g.order) if g.element_order(y) == o] for o in orders]
    out = []
    for imgs in itertools.product(*candidates):
        phi = np.empty(g.order, dtype=np.int64)
        phi[g.identity] = g.identity
        for x in order[1:]:
            px, k = pred[x]
            phi[x] = g.mul(int(phi[px]), imgs[k])
        if len(set(phi.tolist())) != g.order:
            continue
        if np.array_equal(phi[g.table], g.table[phi[:, None], phi[None, :]]):
            out.append(phi)
    out.sort(key=lambda a: a.tolist())
    return out
