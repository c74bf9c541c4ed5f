"""Common complementary Lagrangian subspaces with numerical certificates."""

from .chart import (
    GraphChart,
    SymmetricOperator,
    chart_decode,
    chart_encode,
    make_chart,
    standard_chart,
    transversal_in_chart,
)
from .engine import (
    ComplementConfig,
    ShiftResult,
    TransversalityCertificate,
    family_complement,
    pair_complement_general,
    pair_complement_transverse,
    randomized_complement,
    refine_against,
    spectral_shift,
    stream_complements,
)
from .lagrangian import (
    Isotropic,
    Lagrangian,
    ReductionSplit,
    gap_distance,
    horizontal,
    intersect,
    is_complementary,
    is_lagrangian,
    projection_matrix,
    random_lagrangian,
    reduction_split,
    vertical,
)
from .symplectic import RawSymplecticForm, SymplecticSpace, normalize, omega, standard_space

__version__ = "0.1.0"
