"""Generators and extremals of the supereigenvector cone ``{x : A ⊗ x >= x}`` in max algebra."""

from .core import (
    EXACT,
    Arith,
    DimensionError,
    DivergenceError,
    MaxMatrix,
    MaxVector,
    NotAnEdge,
    Walk,
    kleene_star,
    matrix_power,
    max_cycle_weight,
    oplus,
    otimes,
    otimes_vec,
    simple_cycles,
    walk_weight,
)
from .extremals import (
    BasisResult,
    ExtremalityVerdict,
    criterion_eq1_germ,
    criterion_gt1,
    criterion_unit_cycle,
    criterion_verdict,
    is_extremal_oracle,
    leq_i,
    scaled_basis,
)
from .generators import (
    Generator,
    GeneratingSet,
    generating_set,
    generator_vector,
    strategy_from_vector,
    subeigenvector_generators,
)
from .oracle import (
    Decomposition,
    InstanceSpec,
    decompose,
    is_supereigenvector,
    random_instance,
    sample_supereigenvectors,
    verify_paper_properties,
)
from .strategy import (
    EnumerationLimitExceeded,
    GermInfo,
    Strategy,
    StrategyClass,
    classify,
    end_node,
    enumerate_admissible_germs,
    enumerate_cycles_geq1,
    inverse_matrix,
    restrict_matrix,
    unique_walk,
)

__version__ = "0.1.0"
