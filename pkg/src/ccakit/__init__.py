"""Edge-coloured Cayley graphs of small groups and their colour-permuting automorphisms."""

from .groups import (
    AffineWitness,
    AutomorphismSet,
    DicyclicWitness,
    FiniteGroup,
    GroupMap,
    GroupSpecError,
    Ham2Decomposition,
    OrderCapError,
    build_group,
    centralizer,
    decompose_hamiltonian_2group,
    enumerate_automorphisms,
    is_affine,
    is_dicyclic_type,
    subgroup_generated,
)

__version__ = "0.1.0"
