"""Bound quiver algebras and Brauer tree algebras.

Paths are written in traversal order: ``("a", "b")`` means first ``a`` then
``b``.  The algebra product is composition, so that path equals ``b * a``
and left modules are representations of the quiver.  The indecomposable
projective at vertex ``v`` is spanned by the paths starting at ``v``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from ..errors import InvalidInput, NotAdmissible
from ..exactla import linalg as la
from ..exactla.field import GF
from .core import FinDimAlgebra

Path = tuple[str, ...]


@dataclass(frozen=True)
class QuiverPresentation:
    vertices: tuple[str, ...]
    arrows: tuple[tuple[str, str, str], ...]  # (name, source, target)
    relations: tuple[tuple[tuple[int, Path], ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(self, "arrows", tuple((str(a), str(s), str(t)) for a, s, t in self.arrows))
        rels = tuple(tuple((int(c), tuple(str(x) for x in path)) for c, path in rel) for rel in self.relations)
        object.__setattr__(self, "relations", rels)
        names = [a for a, _, _ in self.arrows]
        if len(set(names)) != len(names):
            raise InvalidInput("arrow names must be distinct")
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidInput("vertex labels must be distinct")
        vs = set(self.vertices)
        for a, s, t in self.arrows:
            if s not in vs or t not in vs:
                raise InvalidInput(f"arrow {a} has an unknown endpoint")
        for rel in self.relations:
            for _, path in rel:
                if len(path) < 2:
                    raise NotAdmissible("relation terms must be paths of length >= 2")
                self.endpoints(path)

    @property
    def arrow_map(self) -> dict[str, tuple[str, str]]:
        return {a: (s, t) for a, s, t in self.arrows}

    def endpoints(self, path: Path) -> tuple[str, str]:
        amap = self.arrow_map
        try:
            ends = [amap[a] for a in path]
        except KeyError as exc:
            raise InvalidInput(f"unknown arrow {exc.args[0]}") from None
        for (_, t), (s, _) in zip(ends, ends[1:]):
            if t != s:
                raise InvalidInput(f"path {'.'.join(path)} is not composable")
        return ends[0][0], ends[-1][1]


def _coef(F: GF, c: int) -> int:
    # integers are element codes; a minus sign negates in the field
    if F.m == 1:
        return int(c) % F.p
    code = int(F.asarray(abs(int(c))))
    return int(F.neg(code)) if c < 0 else code


def _enumerate_paths(q: QuiverPresentation, cap: int) -> list[tuple[str, str, Path]]:
    """(source, target, arrows) for every path of length <= cap."""
    out = [(v, v, ()) for v in q.vertices]
    frontier = [p for p in out]
    out_arrows: dict[str, list[tuple[str, str]]] = {v: [] for v in q.vertices}
    for a, s, t in q.arrows:
        out_arrows[s].append((a, t))
    for _ in range(cap):
        nxt = []
        for s, t, path in frontier:
            for a, t2 in out_arrows[t]:
                nxt.append((s, t2, path + (a,)))
        out.extend(nxt)
        frontier = nxt
    return out


def from_quiver(q: QuiverPresentation, field: GF, nilpotency_cap: int) -> FinDimAlgebra:
    """The algebra kQ/I, computed modulo paths longer than the cap."""
    if nilpotency_cap < 2:
        raise InvalidInput("the nilpotency cap must be at least 2")
    F = field
    cap = nilpotency_cap
    paths = _enumerate_paths(q, cap)
    index = {(s, p): i for i, (s, _, p) in enumerate(paths)}
    N = len(paths)

    def path_id(src: str, path: Path):
        return index.get((src, path))

    # split relations into uniform parts e_t r e_s
    uniform: list[dict[tuple[str, str], list[tuple[int, Path]]]] = []
    for rel in q.relations:
        parts: dict[tuple[str, str], list[tuple[int, Path]]] = {}
        for c, path in rel:
            parts.setdefault(q.endpoints(path), []).append((_coef(F, c), path))
        uniform.append(parts)

    by_target: dict[str, list[int]] = {}
    by_source: dict[str, list[int]] = {}
    for i, (s, t, p) in enumerate(paths):
        by_target.setdefault(t, []).append(i)
        by_source.setdefault(s, []).append(i)

    rows = []
    for parts in uniform:
        for (s, t), terms in parts.items():
            rlen = min(len(p) for _, p in terms)
            for wi in by_target.get(s, []):
                ws, _, wp = paths[wi]
                if len(wp) + rlen > cap:
                    continue
                for ui in by_source.get(t, []):
                    _, _, up = paths[ui]
                    if len(wp) + rlen + len(up) > cap:
                        continue
                    row = np.zeros(N, dtype=np.int64)
                    for c, p in terms:
                        full = wp + p + up
                        if len(full) <= cap:
                            j = path_id(ws, full)
                            row[j] = F.add(row[j], c)
                    if np.any(row):
                        rows.append(row)

    # long paths first so the surviving (non-pivot) paths are the short ones
    order = sorted(range(N), key=lambda i: (-len(paths[i][2]), i))
    inv_order = np.argsort(order)
    if rows:
        Rm = np.array(rows)[:, order]
        R, piv = la.rref(F, Rm)
        R = R[: len(piv)]
    else:
        R, piv = np.zeros((0, N), dtype=np.int64), []
    pivset = set(piv)
    # every path of length cap must die
    for i in range(N):
        if len(paths[i][2]) == cap and inv_order[i] not in pivset:
            raise NotAdmissible(f"paths of length {cap} survive; the ideal is not admissible within the cap")

    free = [c for c in range(N) if c not in pivset]  # columns in sorted order
    free_paths = [order[c] for c in free]
    # basis order: trivial paths by vertex, arrows, then by length
    free_paths.sort(key=lambda i: (len(paths[i][2]), i))
    basis_col = {inv_order[i]: k for k, i in enumerate(free_paths)}
    n = len(free_paths)
    piv_row = {c: r for r, c in enumerate(piv)}

    def normal_form(i: int) -> np.ndarray:
        v = np.zeros(n, dtype=np.int64)
        c = int(inv_order[i])
        if c in basis_col:
            v[basis_col[c]] = 1
            return v
        row = R[piv_row[c]]
        for col, k in basis_col.items():
            if row[col]:
                v[k] = F.neg(row[col])
        return v

    mult = np.zeros((n, n, n), dtype=np.int64)
    for a_idx, i in enumerate(free_paths):
        si, ti, pi = paths[i]
        for b_idx, j in enumerate(free_paths):
            sj, tj, pj = paths[j]
            # b_i * b_j = first path j, then path i
            if tj != si:
                continue
            full = pj + pi
            if len(full) > cap:
                continue
            mult[a_idx, b_idx] = normal_form(path_id(sj, full))

    unit = np.zeros(n, dtype=np.int64)
    idems = []
    for v in q.vertices:
        k = free_paths.index(index[(v, ())])
        unit[k] = 1
        e = np.zeros(n, dtype=np.int64)
        e[k] = 1
        idems.append(e)
    labels = []
    for i in free_paths:
        s, _, p = paths[i]
        labels.append(f"e{s}" if not p else ".".join(p))
    gens = idems + [np.eye(n, dtype=np.int64)[k] for k, i in enumerate(free_paths) if len(paths[i][2]) == 1]
    alg = FinDimAlgebra(F, mult, unit, labels, gens=np.array(gens), prim_idems=np.array(idems), name="quiver algebra", check=n <= 60)
    alg.quiver = q
    alg.basis_paths = [(paths[i][0], paths[i][2]) for i in free_paths]
    return alg


# ----------------------------------------------------------------------
# Brauer trees


@dataclass(frozen=True)
class BrauerTreeSpec:
    """A Brauer tree: edges between tree vertices with cyclic orders around vertices.

    ``orders[v]`` lists the indices of edges at v in cyclic (successor) order;
    when absent the increasing edge order is used.
    """

    edges: tuple[tuple[str, str], ...]
    orders: dict = dc_field(default_factory=dict)
    exceptional_vertex: str | None = None
    multiplicity: int = 1

    def __post_init__(self):
        edges = tuple((str(u), str(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        if not edges:
            raise InvalidInput("a Brauer tree needs at least one edge")
        if self.multiplicity < 1:
            raise InvalidInput("multiplicity must be >= 1")
        if self.exceptional_vertex is None and self.multiplicity != 1:
            raise InvalidInput("multiplicity > 1 needs an exceptional vertex")
        verts = sorted({x for e in edges for x in e})
        if self.exceptional_vertex is not None and str(self.exceptional_vertex) not in verts:
            raise InvalidInput("exceptional vertex is not in the tree")
        if len(verts) != len(edges) + 1:
            raise InvalidInput("the edge set is not a tree")
        # connectivity
        adj: dict[str, set[str]] = {v: set() for v in verts}
        for u, v in edges:
            if u == v:
                raise InvalidInput("loops are not allowed in a tree")
            adj[u].add(v)
            adj[v].add(u)
        seen = {verts[0]}
        stack = [verts[0]]
        while stack:
            x = stack.pop()
            for y in adj[x] - seen:
                seen.add(y)
                stack.append(y)
        if len(seen) != len(verts):
            raise InvalidInput("the edge set is not connected")
        orders = {}
        for v in verts:
            incident = [i for i, e in enumerate(edges) if v in e]
            given = self.orders.get(v, self.orders.get(int(v), None) if v.isdigit() else None) if self.orders else None
            if given is None:
                orders[v] = tuple(incident)
            else:
                given = tuple(int(i) for i in given)
                if sorted(given) != incident:
                    raise InvalidInput(f"cyclic order at {v} must list exactly its incident edges")
                orders[v] = given
        object.__setattr__(self, "orders", orders)
        if self.exceptional_vertex is not None:
            object.__setattr__(self, "exceptional_vertex", str(self.exceptional_vertex))

    @property
    def vertices(self) -> list[str]:
        return sorted(self.orders)

    def vertex_multiplicity(self, v: str) -> int:
        return self.multiplicity if v == self.exceptional_vertex else 1


def brauer_tree_presentation(spec: BrauerTreeSpec) -> tuple[QuiverPresentation, int]:
    """Special-biserial presentation of the Brauer tree algebra and a safe cap."""
    e = len(spec.edges)
    qverts = tuple(f"E{i}" for i in range(e))
    if e == 1:
        m = spec.multiplicity
        q = QuiverPresentation(qverts, (("x", "E0", "E0"),), (((1, ("x",) * (m + 1)),),))
        return q, m + 2
    arrows = []
    cycles: dict[str, list[str]] = {}  # tree vertex -> arrow names around it
    arrow_out: dict[tuple[str, int], str] = {}  # (tree vertex, edge) -> arrow leaving that edge
    arrow_in: dict[tuple[str, int], str] = {}
    truncated = set()
    for v in spec.vertices:
        order = spec.orders[v]
        d = len(order)
        mv = spec.vertex_multiplicity(v)
        if d == 1 and mv == 1:
            truncated.add(v)
            continue
        names = []
        for k in range(d):
            src, dst = order[k], order[(k + 1) % d]
            name = f"{v}_{k}"
            arrows.append((name, qverts[src], qverts[dst]))
            arrow_out[(v, src)] = name
            arrow_in[(v, dst)] = name
            names.append(name)
        cycles[v] = names

    def cycle_from(v: str, edge: int) -> tuple[str, ...]:
        order = spec.orders[v]
        start = order.index(edge)
        d = len(order)
        return tuple(cycles[v][(start + k) % d] for k in range(d))

    rels = []
    for i, (u, w) in enumerate(spec.edges):
        live = [x for x in (u, w) if x not in truncated]
        for x in live:
            c = cycle_from(x, i) * spec.vertex_multiplicity(x)
            rels.append(((1, c + (arrow_out[(x, i)],)),))
        if len(live) == 2:
            x, y = live
            cx = cycle_from(x, i) * spec.vertex_multiplicity(x)
            cy = cycle_from(y, i) * spec.vertex_multiplicity(y)
            rels.append(((1, cx), (-1, cy)))
            # passing from one cycle to the other through edge i is zero
            for a_in, b_out in ((arrow_in[(x, i)], arrow_out[(y, i)]), (arrow_in[(y, i)], arrow_out[(x, i)])):
                rels.append(((1, (a_in, b_out)),))
    cap = max(len(spec.orders[v]) * spec.vertex_multiplicity(v) for v in spec.vertices) + 2
    return QuiverPresentation(qverts, tuple(arrows), tuple(rels)), cap


def brauer_tree_algebra(spec: BrauerTreeSpec, field: GF) -> FinDimAlgebra:
    q, cap = brauer_tree_presentation(spec)
    alg = from_quiver(q, field, cap)
    alg.name = f"Brauer tree e={len(spec.edges)} m={spec.multiplicity}"
    alg.brauer_tree = spec
    return alg


def brauer_line(e: int, multiplicity: int = 1, exceptional: int | None = None) -> BrauerTreeSpec:
    """Line v0 - v1 - ... - ve; the exceptional vertex index defaults to the middle one."""
    edges = tuple((f"v{i}", f"v{i + 1}") for i in range(e))
    exc = None
    if multiplicity > 1:
        exc = f"v{(e + 1) // 2 if exceptional is None else exceptional}"
    return BrauerTreeSpec(edges, {}, exc, multiplicity)


def brauer_star(e: int, multiplicity: int = 1, exceptional_center: bool = True) -> BrauerTreeSpec:
    edges = tuple(("c", f"l{i}") for i in range(e))
    exc = None
    if multiplicity > 1:
        exc = "c" if exceptional_center else "l0"
    return BrauerTreeSpec(edges, {}, exc, multiplicity)


def truncated_polynomial(field: GF, m: int) -> FinDimAlgebra:
    """k[x]/(x^m) as a one-loop quiver algebra."""
    if m == 1:
        q = QuiverPresentation(("1",), ())
        return from_quiver(q, field, 2)
    q = QuiverPresentation(("1",), (("x", "1", "1"),), (((1, ("x",) * m),),))
    return from_quiver(q, field, m + 1 if m >= 2 else 2)


def linear_quiver(field: GF, n: int, relations: Sequence = ()) -> FinDimAlgebra:
    """Path algebra of 1 -> 2 -> ... -> n."""
    verts = tuple(str(i + 1) for i in range(n))
    arrows = tuple((f"a{i + 1}", str(i + 1), str(i + 2)) for i in range(n - 1))
    q = QuiverPresentation(verts, arrows, tuple(relations))
    return from_quiver(q, field, max(n, 2))
