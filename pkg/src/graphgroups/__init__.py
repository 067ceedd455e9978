"""Centraliser dimension and word algorithms for graph groups."""

from .centralisers import (
    A_of,
    BlockDecomposition,
    CentraliserDescription,
    block_decomposition,
    block_root_exponent,
    centraliser_of_element,
    commutes,
    root,
)
from .extension import (
    ExtensionReport,
    LockTieReport,
    ParameterSystem,
    build_S,
    classify_extension,
    enumerate_maximal_parameter_systems,
    enumerate_parameter_systems,
    is_parameter_system,
    lock_status,
    partition_yw,
    quick_checks,
    tie_status,
)
from .graph import (
    CapacityError,
    CommutationGraph,
    GeneratorSet,
    GraphError,
    GraphParseError,
    center,
    delete_vertex,
    family,
    join_free,
    non_commutation_components,
    orthogonal,
    parse_graph,
)
from .lattice import CanonicalLattice, ClosedSet, brute_force_cdim, build_lattice, cdim, max_chain
from .words import (
    NormalForm,
    WordError,
    conjugate,
    cyclic_permutations,
    cyclic_reduce,
    gcd_left,
    gcd_right,
    invert,
    is_cyclically_minimal,
    multiply,
    normalize,
    power,
)

__version__ = "0.1.0"
