"""Noncommutative values of observables on truncated Hilbert spaces.

The value of an observable at a state is its symmetry data: the expectation
function together with its first and second derivatives. Kähler products
on these function representations reproduce the operator product.
"""

from .errors import (
    ChartUndefined,
    ConvergenceFailure,
    DimensionMismatch,
    DimensionTooLarge,
    InconsistentData,
    MomentOrderTooLarge,
    NCValueError,
    NotHermitian,
    ParseError,
    SingularOperator,
    StateMismatch,
    ZeroVector,
)
from .evaluation import (
    MomentReport,
    evaluation_map,
    moments,
    reconstruct_from_symdata,
    reconstruct_state,
    sample_moments,
)
from .hilbert import PhysicalState, StateVector, fidelity, normalize_ray, random_state, ray_equal, to_affine
from .kahler import (
    Chart,
    H_function,
    MetricChart,
    f_function,
    metric_chart,
    star_K,
    star_kappa_affine,
    star_kappa_homogeneous,
    star_product,
)
from .operators import (
    Observable,
    anticommutator,
    build,
    commutator,
    eigendecompose,
    hermitian_split,
    identity,
    ladder,
    number,
    position_momentum,
    power,
    product,
    random_observable,
    tensor,
)
from .symdata import (
    SymmetryData,
    sd_product,
    sd_product_H,
    sd_product_w,
    sd_product_z,
    symdata,
    symdata_H,
    symdata_w,
    symdata_z,
)

__version__ = "0.1.0"
