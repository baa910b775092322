"""Dirichlet eigenvalues of unit-volume boxes by exact lattice counting,
counting-identity and inequality verification, and eigenvalue-minimising
box search."""

from .bounds import (
    BoundQuery,
    BoundReport,
    a1_lower_bound,
    cube_eigenvalue_bound,
    delta_from_am_gm,
    lemma31_rhs,
    lemma32_rhs,
    lemma41_rhs,
    lemma_sum,
    polya_lower_bound,
)
from .lattice import (
    CountBundle,
    RemainderExponents,
    count_bundle,
    count_full,
    count_plane,
    cube_multiplicity,
    divisor_count,
    gauss_circle_count,
    gauss_sphere_count,
    r2,
    r2_batch,
    r3,
    sphere_counts_upto,
)
from .optimize import (
    InsufficientSpanError,
    OptimalRecord,
    OptimizerConfig,
    SearchBox,
    objective,
    optimize_k,
    rate_fit,
    sweep,
)
from .spectrum import (
    Cuboid,
    EllipsoidSpec,
    ResourceLimitError,
    SpectralPoint,
    UNIT_CUBE,
    count_upto,
    cube_spectrum_table,
    cube_upper_bound,
    eigenvalue_of_index,
    kth_eigenvalue,
    spectrum_points,
)

__version__ = "0.1.0"
