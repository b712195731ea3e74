"""Built-in species: bipartite graphs, binary functions, magic squares and
set-of-components species with their operators."""

from .binary import binary_function_species
from .bipartite import bipartite_connected, bipartite_species, graph_components
from .magic import (
    enumerate_2magic_birkhoff,
    enumerate_magic,
    indecomposable_2magic_count,
    magic_species,
)
from .sets import (
    SpeciesIso,
    build_psi,
    complement_iso,
    identity_iso,
    sets_of,
    swap_iso,
    transport_operator,
    twist,
    twisted_binary_species,
    two_point_species,
)
