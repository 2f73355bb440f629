"""Modules over finite-dimensional algebras."""

from .hom import (
    HomBasis,
    end_algebra_mats,
    generates,
    hom_dim,
    hom_space,
    is_indecomposable,
    module_generators,
    radical_and_top,
    radical_rows,
    socle_rows,
    top_multiplicities,
    trace_in,
)
from .module import (
    ModuleRep,
    change_basis,
    direct_sum,
    dual_of_right,
    from_generator_matrices,
    image_module,
    quotient,
    regular_module,
    spin,
    submodule,
    zero_module,
)
from .presentation import (
    ProjCover,
    ProjPresentation,
    cokernel,
    compose,
    is_projective,
    min_presentation,
    proj_map_matrix,
    proj_sum_module,
    projective,
    projective_cover,
    projective_indecomposables,
    simple,
    simples,
    syzygy,
    tau,
)
from .decompose import (
    basic_part,
    condense_module,
    decompose,
    decompose_with_embeddings,
    expand_module,
    invariant_key,
    is_basic_module,
    is_isomorphic,
    num_summands,
)
