"""Support tau-tilting pairs, mutation and the Hasse poset."""

from .pair import (
    PairVerdict,
    SupportPair,
    from_pair,
    geq,
    is_support_tau_tilting,
    is_tau_rigid,
    mutate,
    regular_pair,
    same_pair,
    support_pair,
    to_pair,
    zero_pair,
)
from .poset import (
    EmbeddingReport,
    TauPoset,
    brute_force_stautilt,
    enumerate_pairs,
    pairs_match,
    poset_isomorphic,
    verify_order_embedding,
)

enumerate = enumerate_pairs  # noqa: A001
