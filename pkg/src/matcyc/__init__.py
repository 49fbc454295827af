"""matcyc: matroid analysis through the lattice of cyclic flats.

Represent matroids of linear codes over small prime fields (and uniform
/ rank-table / basis-list matroids), enumerate their cyclic flats,
detect uniform minors, test binary representability, and derive locally
repairable code parameters (n, k, d, r, delta).
"""

from .errors import (
    DegenerateCodeError,
    InapplicableTheoremError,
    IncompatibleMatricesError,
    InputFormatError,
    InvalidArgumentError,
    InvalidEdgeError,
    InvalidMinorSpecError,
    InvalidSubsetError,
    MatcycError,
    NoLocalityError,
    ResourceLimitError,
)
from .fields import (
    DEFAULT_CODEWORD_CAP,
    FieldMatrix,
    enumerate_codewords,
    format_matrix,
    is_prime,
    min_distance_bruteforce,
    parse_matrix,
    rank_of_columns,
    reduced_row_basis,
    row_space_equal,
)
from .matroid import (
    Matroid,
    MinorSpec,
    UniformWitness,
    find_uniform_minor,
    parse_bases,
    parse_rank_table,
    parse_uniform_spec,
    uniform_contains,
    uniform_parameters,
)
from .lattice import (
    Configuration,
    CyclicFlatLattice,
    EdgeLabel,
    LatticeEdge,
    LatticeNode,
    classify_edge,
    configuration,
    enumerate_cyclic_flats,
    enumerate_flats,
    label_edges,
    lattice_join,
    lattice_meet,
    minor_cyclic_flats,
    to_dot,
)
from .detect import (
    FieldCheckReport,
    combined_uniform,
    contraction_uniform,
    edge_minor,
    field_necessary_check,
    forbidden_uniform_ranks,
    hasse_violations,
    restriction_uniform,
    tutte_binary_test,
)
from .lrc import (
    BinaryStructureResult,
    ConditionResult,
    ElementLocality,
    LrcReport,
    binary_structure_check,
    global_distance,
    is_nondegenerate,
    locality_of_element,
    locality_profile,
    mds_check,
    punctured_params,
    s_value,
    verify_lrc,
)

__version__ = "0.1.0"

__all__ = [
    "MatcycError",
    "InvalidSubsetError",
    "InvalidArgumentError",
    "IncompatibleMatricesError",
    "InvalidMinorSpecError",
    "InvalidEdgeError",
    "DegenerateCodeError",
    "NoLocalityError",
    "InapplicableTheoremError",
    "ResourceLimitError",
    "InputFormatError",
    "FieldMatrix",
    "DEFAULT_CODEWORD_CAP",
    "is_prime",
    "rank_of_columns",
    "reduced_row_basis",
    "row_space_equal",
    "enumerate_codewords",
    "min_distance_bruteforce",
    "parse_matrix",
    "format_matrix",
    "Matroid",
    "MinorSpec",
    "UniformWitness",
    "uniform_parameters",
    "find_uniform_minor",
    "uniform_contains",
    "parse_uniform_spec",
    "parse_rank_table",
    "parse_bases",
    "CyclicFlatLattice",
    "LatticeNode",
    "LatticeEdge",
    "EdgeLabel",
    "classify_edge",
    "enumerate_flats",
    "enumerate_cyclic_flats",
    "label_edges",
    "lattice_join",
    "lattice_meet",
    "minor_cyclic_flats",
    "Configuration",
    "configuration",
    "to_dot",
    "edge_minor",
    "hasse_violations",
    "restriction_uniform",
    "contraction_uniform",
    "combined_uniform",
    "tutte_binary_test",
    "forbidden_uniform_ranks",
    "FieldCheckReport",
    "field_necessary_check",
    "is_nondegenerate",
    "global_distance",
    "punctured_params",
    "s_value",
    "ElementLocality",
    "locality_of_element",
    "locality_profile",
    "LrcReport",
    "verify_lrc",
    "ConditionResult",
    "BinaryStructureResult",
    "binary_structure_check",
    "mds_check",
]
