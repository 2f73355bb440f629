"""Two-term complexes of projectives and two-term silting theory."""

from .complex import (
    ChainSpace,
    HomK,
    TwoTermComplex,
    chain_maps,
    direct_sum,
    hom_k,
    is_presilting,
    is_reduced,
    reduced,
    stalk,
)
from .silting import (
    SiltingVerdict,
    from_summands,
    gkey,
    homology,
    is_silting,
    presentation_complex,
    regular_silting,
    shifted_regular_silting,
    silt_geq,
    silt_mutate,
    silt_mutate_ex,
    summands,
)
from .square import SquareReport, silting_closure, verify_square


def from_pair(pair):
    from ..tautilt.pair import from_pair as _from_pair

    return _from_pair(pair)


def to_pair(x):
    from ..tautilt.pair import to_pair as _to_pair

    return _to_pair(x)
