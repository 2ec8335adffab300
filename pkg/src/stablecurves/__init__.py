"""Exact combinatorics of leaf-labelled trees and stable rational curves.

The package has four computational layers and an operational shell:

- ``delta``: the face-map contract shared by the graded families, with a
  compatibility check and a brute-force filling oracle.
- ``trees``: leaf-labelled trees without bivalent vertices; faces,
  enumeration, and unique filling from dimension five up.
- ``proj``: exact projective-line arithmetic (reduced integer pairs,
  cross-ratios, fractional-linear maps).
- ``moduli``: stable curves as decorated trees; forgetful maps, quad
  coordinates, five-mark verification/reconstruction, and filling.
- ``equations``: generation, evaluation and export of the defining
  polynomial systems.
- ``plotting`` / ``cli``: figure rendering and the command-line front end.
"""

from .delta import DeltaFamily, FillTuple, check_all_identities, check_identity, is_compatible, fill_oracle
from .errors import (
    BudgetExceededError,
    DegenerateInputError,
    InconsistencyError,
    InvalidCoordinateError,
    MultipleFillError,
    NoFillError,
    ParseError,
    StableCurvesError,
    UnsupportedOperationError,
    ValidationError,
)
from .proj import INFINITY, ONE, ZERO, Mobius, ProjPoint, Rat, cross_ratio, cross_ratio_solve, mobius_from_triple
from .trees import (
    TREE_FAMILY,
    AttachSite,
    MarkedTree,
    adjacent,
    attach,
    attach_sites,
    bipartition_tree,
    enumerate_trees,
    erase,
    face,
    fill,
    fill_labelled,
    reconstruct_pair,
    relabel,
    sample_tree,
    star,
)
from .moduli import (
    MODULI_FAMILY,
    Configuration,
    StableCurve,
    fill_moduli,
    forget,
    from_points,
    m05_vector,
    quad_coordinate,
    reconstruct_m05,
    sample_curve,
    sample_smooth_curve,
    to_coordinates,
    verify_m05,
)
from .equations import (
    ChainIndex,
    EqSystem,
    Equation,
    SubsetIndex,
    assignment_from_quads,
    chain_to_subset,
    evaluate,
    export,
    generate_m05,
    generate_redundant,
    generate_reduced,
)

__version__ = "0.1.0"
