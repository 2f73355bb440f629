"""Mutation-closure enumeration of support pairs, Hasse posets and poset comparison."""

from __future__ import annotations

import itertools
import logging
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..algebra import structure as st
from ..algebra.core import FinDimAlgebra
from ..errors import InternalError, PossiblyInfinite
from ..modrep.hom import hom_dim
from ..modrep.presentation import tau
from .pair import SupportPair, geq, pair_of_summands, same_pair

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**6


@dataclass(eq=False)
class TauPoset:
    """Nodes in canonical (g-key) order; an edge (i, j) means node i covers node j."""

    nodes: list  # SupportPair, or None for posets read back from files
    hasse_edges: list
    gkeys: list
    info: list = field(default_factory=list)  # per-node dicts for serialization
    complexes: list = field(default_factory=list)
    algebra: FinDimAlgebra | None = None
    complete: bool = True

    @property
    def size(self) -> int:
        return len(self.gkeys)

    def out_degree(self, i: int) -> int:
        return sum(1 for a, _ in self.hasse_edges if a == i)

    def in_degree(self, i: int) -> int:
        return sum(1 for _, b in self.hasse_edges if b == i)

    @property
    def max_index(self) -> int | None:
        tops = [i for i in range(self.size) if self.in_degree(i) == 0]
        return tops[0] if len(tops) == 1 else None

    @property
    def min_index(self) -> int | None:
        bottoms = [i for i in range(self.size) if self.out_degree(i) == 0]
        return bottoms[0] if len(bottoms) == 1 else None

    def successors(self) -> list[list[int]]:
        succ = [[] for _ in range(self.size)]
        for a, b in self.hasse_edges:
            succ[a].append(b)
        return succ

    def order_matrix(self) -> np.ndarray:
        """reach[i, j] is True iff node i >= node j."""
        n = self.size
        reach = np.eye(n, dtype=bool)
        succ = self.successors()
        for i in range(n):
            stack = [i]
            while stack:
                u = stack.pop()
                for v in succ[u]:
                    if not reach[i, v]:
                        reach[i, v] = True
                        stack.append(v)
        return reach

    def to_json(self, with_complexes: bool = False) -> dict:
        nodes = []
        for i in range(self.size):
            d = {"id": i, "gkey": [list(g) for g in self.gkeys[i]]}
            d.update(self.info[i] if i < len(self.info) else {})
            if with_complexes and self.complexes:
                d["complex"] = self.complexes[i].to_json()
            nodes.append(d)
        out = {
            "algebra_hash": self.algebra.fingerprint() if self.algebra is not None else None,
            "nodes": nodes,
            "hasse": [list(e) for e in self.hasse_edges],
            "max": self.max_index,
            "min": self.min_index,
        }
        return out

    @classmethod
    def from_json(cls, data: dict) -> "TauPoset":
        nodes = sorted(data["nodes"], key=lambda d: d["id"])
        if [d["id"] for d in nodes] != list(range(len(nodes))):
            raise ValueError("node ids must be 0..n-1")
        gkeys = [tuple(tuple(int(x) for x in g) for g in d["gkey"]) for d in nodes]
        info = [{k: v for k, v in d.items() if k not in ("id", "gkey", "complex")} for d in nodes]
        edges = sorted((int(a), int(b)) for a, b in data["hasse"])
        for a, b in edges:
            if not (0 <= a < len(nodes) and 0 <= b < len(nodes)):
                raise ValueError("edge refers to a missing node")
        p = cls([None] * len(nodes), edges, gkeys, info)
        p.algebra_hash = data.get("algebra_hash")
        return p

    def same_as(self, other: "TauPoset") -> bool:
        return self.gkeys == other.gkeys and self.hasse_edges == other.hasse_edges and self.info == other.info


def _node_info(pair: SupportPair) -> dict:
    return {
        "m_summands": pair.m_labels(),
        "p_summands": pair.p_label_strings(),
        "dims": [pair.M.dim, pair.P.dim],
    }


def enumerate_pairs(
    a: FinDimAlgebra,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
    audit: bool = False,
    check_order: bool = True,
) -> TauPoset:
    """Breadth-first mutation closure from the regular pair.

    The search runs on two-term silting complexes and deduplicates by
    g-key.  Edges between mutation partners are oriented by ``geq`` and
    cross-checked against the direction of the mutation.  When ``audit``
    is set, every g-key hit is confirmed by a module isomorphism test.
    """
    from ..twosilt.silting import gkey, regular_silting, silt_mutate_ex, summands

    if budget < 1:
        raise ValueError("budget must be at least 1")
    st.primitive_idempotents(a)  # raises NotSplitField early
    start = regular_silting(a)
    seen = {gkey(start): start}
    frontier = [start]
    directed: dict[tuple, str] = {}
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None

    def expand(x):
        return [silt_mutate_ex(x, k) for k in range(len(summands(x)))]

    try:
        while frontier:
            frontier.sort(key=gkey)
            results = list(pool.map(expand, frontier)) if pool else [expand(x) for x in frontier]
            nxt = []
            for x, muts in zip(frontier, results):
                gx = gkey(x)
                for y, direction, _ in muts:
                    gy = gkey(y)
                    edge = (gx, gy) if direction == "left" else (gy, gx)
                    directed[frozenset((gx, gy))] = edge
                    if gy in seen:
                        if audit and seen[gy] is not y:
                            _audit_collision(seen[gy], y)
                        continue
                    seen[gy] = y
                    nxt.append(y)
                    if len(seen) > budget:
                        raise PossiblyInfinite(
                            f"mutation closure exceeded the budget of {budget} nodes",
                            partial=_build_poset(a, seen, directed, complete=False, check_order=False),
                        )
            frontier = nxt
            log.info("enumerated %d pairs", len(seen))
    finally:
        if pool:
            pool.shutdown()
    return _build_poset(a, seen, directed, complete=True, check_order=check_order)


def _audit_collision(x, y) -> None:
    from ..modrep.decompose import is_isomorphic
    from ..twosilt.silting import summands

    px = pair_of_summands(x.algebra, summands(x))
    py = pair_of_summands(y.algebra, summands(y))
    if px.p_labels != py.p_labels or is_isomorphic(px.M, py.M) is None:
        raise InternalError("two different complexes share a g-key")


def _build_poset(a, seen, directed, complete: bool, check_order: bool) -> TauPoset:
    from ..twosilt.silting import summands

    keys = sorted(seen)
    index = {k: i for i, k in enumerate(keys)}
    complexes = [seen[k] for k in keys]
    pairs = [pair_of_summands(a, summands(c)) for c in complexes]
    edges = set()
    for pair_key, (big, small) in directed.items():
        if big not in index or small not in index:
            continue
        i, j = index[big], index[small]
        if check_order:
            if not geq(pairs[i], pairs[j]) or geq(pairs[j], pairs[i]):
                raise InternalError("mutation direction disagrees with the order on modules")
        edges.add((i, j))
    return TauPoset(
        nodes=pairs,
        hasse_edges=sorted(edges),
        gkeys=list(keys),
        info=[_node_info(p) for p in pairs],
        complexes=complexes,
        algebra=a,
        complete=complete,
    )


# ----------------------------------------------------------------------
# comparison


def _depths(p: TauPoset) -> list[int]:
    """Longest-path distance from the maximum (or from sources)."""
    n = p.size
    succ = p.successors()
    indeg = [p.in_degree(i) for i in range(n)]
    depth = [0] * n
    queue = deque(i for i in range(n) if indeg[i] == 0)
    while queue:
        u = queue.popleft()
        for v in succ[u]:
            depth[v] = max(depth[v], depth[u] + 1)
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)
    return depth


def poset_isomorphic(p1: TauPoset, p2: TauPoset) -> list[int] | None:
    """A bijection (list: node of p1 -> node of p2) preserving Hasse arrows, or None."""
    n = p1.size
    if n != p2.size or len(p1.hasse_edges) != len(p2.hasse_edges):
        return None
    e1, e2 = set(p1.hasse_edges), set(p2.hasse_edges)
    d1, d2 = _depths(p1), _depths(p2)
    inv1 = [(p1.in_degree(i), p1.out_degree(i), d1[i]) for i in range(n)]
    inv2 = [(p2.in_degree(i), p2.out_degree(i), d2[i]) for i in range(n)]
    if sorted(inv1) != sorted(inv2):
        return None
    order = sorted(range(n), key=lambda i: (d1[i], i))
    mapping = [-1] * n
    used = [False] * n

    def consistent(u, v) -> bool:
        for w in range(n):
            x = mapping[w]
            if x < 0:
                continue
            if ((u, w) in e1) != ((v, x) in e2) or ((w, u) in e1) != ((x, v) in e2):
                return False
        return True

    def search(t: int) -> bool:
        if t == n:
            return True
        u = order[t]
        for v in range(n):
            if used[v] or inv2[v] != inv1[u] or not consistent(u, v):
                continue
            mapping[u] = v
            used[v] = True
            if search(t + 1):
                return True
            mapping[u] = -1
            used[v] = False
        return False

    return list(mapping) if search(0) else None


@dataclass
class EmbeddingReport:
    injective: bool
    preserves_order: bool
    reflects_order: bool
    image_is_component_union: bool
    surjective: bool
    witnesses: list

    @property
    def ok(self) -> bool:
        return self.injective and self.preserves_order and self.reflects_order and self.image_is_component_union

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "injective": self.injective,
            "preserves_order": self.preserves_order,
            "reflects_order": self.reflects_order,
            "image_is_component_union": self.image_is_component_union,
            "surjective": self.surjective,
            "witnesses": self.witnesses,
        }


def verify_order_embedding(mapping, p1: TauPoset, p2: TauPoset) -> EmbeddingReport:
    mapping = [int(mapping[i]) for i in range(p1.size)]
    witnesses = []
    injective = len(set(mapping)) == len(mapping)
    if not injective:
        seen = {}
        for i, v in enumerate(mapping):
            if v in seen:
                witnesses.append({"collapsed": [seen[v], i], "image": v})
                break
            seen[v] = i
    r1, r2 = p1.order_matrix(), p2.order_matrix()
    pres = refl = True
    for i in range(p1.size):
        for j in range(p1.size):
            a, b = bool(r1[i, j]), bool(r2[mapping[i], mapping[j]])
            if a and not b and pres:
                pres = False
                witnesses.append({"not_preserved": [i, j]})
            if b and not a and refl:
                refl = False
                witnesses.append({"not_reflected": [i, j]})
    image = set(mapping)
    comp_ok = True
    for a, b in p2.hasse_edges:
        if (a in image) != (b in image):
            comp_ok = False
            witnesses.append({"edge_leaves_image": [a, b]})
            break
    return EmbeddingReport(injective, pres, refl, comp_ok, image == set(range(p2.size)), witnesses)


# ----------------------------------------------------------------------
# exhaustive oracle


def brute_force_stautilt(a: FinDimAlgebra, indec_list) -> list[SupportPair]:
    """All support pairs built from the given pairwise non-isomorphic indecomposables."""
    mods = list(indec_list)
    n = st.num_simples(a)
    taus = [tau(X) for X in mods]
    k = len(mods)
    rigid = np.array([[hom_dim(mods[i], taus[j]) == 0 for j in range(k)] for i in range(k)], dtype=bool)
    dimvecs = [X.dimension_vector() for X in mods]
    out = []
    for s in range(0, min(n, k) + 1):
        for subset in itertools.combinations(range(k), s):
            if not all(rigid[i, j] for i in subset for j in subset):
                continue
            free = [i for i in range(n) if all(dimvecs[t][i] == 0 for t in subset)]
            for plabels in itertools.combinations(free, n - s):
                out.append(SupportPair(a, tuple(mods[t] for t in subset), tuple(plabels)))
    out.sort(key=lambda p: p.gkey)
    return out


def pairs_match(list1, list2) -> bool:
    """Equality of two pair collections as sets (matched by g-key, confirmed by isomorphism)."""
    if len(list1) != len(list2):
        return False
    by_key = {p.gkey: p for p in list2}
    if len(by_key) != len(list2):
        return False
    for p in list1:
        q = by_key.get(p.gkey)
        if q is None or not same_pair(p, q):
            return False
    return True
