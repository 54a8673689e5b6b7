"""Orlicz and weak Orlicz norms on R^n, and inclusion between the spaces.

Set ``ORLICZ_DISABLE_NUMBA=1`` before import to run the pure-numpy kernels.
"""

from ._kernels import BACKEND
from .config import DEFAULT, SATURATION, ToleranceConfig
from .funcspace import (
    Ball,
    Partition,
    RadialPowerFunction,
    SampleSpec,
    SimpleFunction,
    ball_volume,
    char_function,
    distribution,
    pointwise_product,
    scale,
    unit_ball_volume,
)
from .inclusion import (
    DominationCertificate,
    InclusionVerdict,
    InconclusiveError,
    PreconditionError,
    bounded_domain_inclusion,
    dominates,
    empirical_norm_inequality,
    eventually_dominates,
    find_min_constant,
    holder_triple_check,
    inclusion_verdict,
    inverse_cross_check,
    lebesgue_triple,
    product_norm_bound,
)
from .norms import NormResult, char_norm_closed_form, luxemburg_norm, modular, weak_norm, weak_sup
from .quadrature import QuadratureError
from .young import (
    ArgScale,
    ExpMinusOne,
    InverseError,
    Max,
    PiecewiseLinearConvex,
    Power,
    PowerLog,
    SchemaError,
    Sum,
    ValScale,
    YoungFunction,
    evaluate,
    generalized_inverse,
    inverse_product,
    validate_young,
    young_from_json,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
