"""Cross-check of the pair/complex correspondence on a whole enumeration."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from ..algebra.core import FinDimAlgebra
from ..errors import PossiblyInfinite
from .silting import gkey, shifted_regular_silting, silt_geq, silt_mutate, summands


@dataclass
class SquareReport:
    nodes: int
    silting_nodes: int
    bijective: bool
    round_trip: bool
    order_preserved: bool
    mutation_commutes: bool
    witnesses: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.bijective and self.round_trip and self.order_preserved and self.mutation_commutes

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "nodes": self.nodes,
            "silting_nodes": self.silting_nodes,
            "bijective": self.bijective,
            "round_trip": self.round_trip,
            "order_preserved": self.order_preserved,
            "mutation_commutes": self.mutation_commutes,
            "witnesses": self.witnesses,
        }


def silting_closure(a: FinDimAlgebra, budget: int = 10**6) -> dict:
    """All two-term silting complexes reachable by mutation, started from the shifted regular complex."""
    start = shifted_regular_silting(a)
    seen = {gkey(start): start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for k in range(len(summands(x))):
            y = silt_mutate(x, k)
            g = gkey(y)
            if g not in seen:
                seen[g] = y
                queue.append(y)
                if len(seen) > budget:
                    raise PossiblyInfinite(f"silting closure exceeded {budget} nodes", partial=None)
    return seen


def verify_square(a: FinDimAlgebra, budget: int = 10**6) -> SquareReport:
    from ..tautilt.pair import from_pair, geq, mutate, same_pair, to_pair
    from ..tautilt.poset import enumerate_pairs

    poset = enumerate_pairs(a, budget=budget)
    pairs = poset.nodes
    silt = silting_closure(a, budget)
    witnesses = []

    images = [from_pair(p) for p in pairs]
    keys = [gkey(c) for c in images]
    bijective = len(set(keys)) == len(keys) and set(keys) == set(silt)
    if not bijective:
        witnesses.append({"pair_keys_only": sorted(map(list, set(keys) - set(silt)))[:3]})

    round_trip = True
    for i, (p, c) in enumerate(zip(pairs, images)):
        if c is not None and not same_pair(to_pair(c), p):
            round_trip = False
            witnesses.append({"round_trip_fails": i})
            break

    order_ok = True
    for i, p in enumerate(pairs):
        for j, q in enumerate(pairs):
            if geq(p, q) != silt_geq(images[i], images[j]):
                order_ok = False
                witnesses.append({"order_mismatch": [i, j]})
                break
        if not order_ok:
            break

    mut_ok = True
    for i, p in enumerate(pairs):
        for k in range(len(p.summands)):
            via_pairs = gkey(from_pair(mutate(p, k)))
            via_complexes = gkey(silt_mutate(images[i], k))
            if via_pairs != via_complexes:
                mut_ok = False
                witnesses.append({"mutation_mismatch": [i, k]})
                break
        if not mut_ok:
            break
    return SquareReport(len(pairs), len(silt), bijective, round_trip, order_ok, mut_ok, witnesses)
