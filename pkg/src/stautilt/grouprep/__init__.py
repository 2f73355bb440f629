"""Finite groups, group modules, induction and the verification harness."""

from .groups import (
    FiniteGroup,
    Subgroup,
    aut_group_small,
    cyclic,
    dihedral,
    direct_product,
    group_from_permutations,
    group_from_table,
    inner_automorphism,
    semidirect,
    symmetric,
)
from .modules import (
    block_inertia_group,
    block_of,
    conjugate_module,
    conjugate_to,
    covering_blocks,
    double_coset_reps,
    from_block_module,
    group_module,
    induce,
    inertia_group,
    kG,
    lies_in_block,
    module_inertia_group,
    principal_block,
    regular_group_module,
    restrict,
    to_block_module,
    trivial_module,
)
from .verify import CHECKS, Instance, VerifyReport, verify

__all__ = [name for name in dir() if not name.startswith("_")]
