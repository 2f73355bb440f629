"""Finite-dimensional algebras: constructors and structure."""

from .core import (
    FinDimAlgebra,
    corner_basis,
    from_structure_constants,
    group_algebra,
    quotient_algebra,
    subalgebra,
    tensor_algebra,
    two_sided_ideal,
)
from .quiver import (
    BrauerTreeSpec,
    QuiverPresentation,
    brauer_line,
    brauer_star,
    brauer_tree_algebra,
    brauer_tree_presentation,
    from_quiver,
    linear_quiver,
    truncated_polynomial,
)
from .structure import (
    BlockIdempotent,
    Condensation,
    Quiver,
    block_algebra,
    cartan_matrix,
    center,
    central_blocks,
    condense_basic,
    gabriel_quiver,
    idempotent_classes,
    is_basic,
    is_split,
    is_symmetric,
    num_simples,
    primitive_idempotents,
    radical,
    radical_power,
    simple_dimensions,
)

__all__ = [name for name in dir() if not name.startswith("_")]
