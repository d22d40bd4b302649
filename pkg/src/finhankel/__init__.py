"""Finite Hankel transforms of radial profiles with endpoint singularities:
high-accuracy quadrature, large-argument asymptotic predictions, and
invertibility classification of the corresponding compactly supported
radial distributions."""

from .errors import (
    DomainError,
    EmptyPredictionError,
    ExponentCollisionError,
    FinHankelError,
    HypothesisError,
    IncompatibleLadderError,
    NotApplicableError,
    PoleError,
    ProfileFormatError,
    RuleViolationError,
    SmoothnessBudgetError,
    ZeroLadderError,
)
from .specfun import bessel_j, bessel_j_leading, gamma, reciprocal_gamma
from .profiles import (
    BoundaryExpansion,
    OriginExpansion,
    ProfileTerm,
    RadialProfile,
    boundary_expansion,
    boundary_function,
    evaluate,
    origin_expansion,
    profile_from_dict,
    profile_from_json,
    profile_to_dict,
)
from .quadrature import (
    QuadratureConfig,
    QuadratureResult,
    finite_hankel,
    hankel_sweep,
    iterated_transform,
    radial_fourier,
)
from .asymptotics import (
    AsymptoticTerm,
    Dominance,
    DominanceReport,
    KSet,
    Prediction,
    boundary_term,
    dominance,
    evaluate_prediction,
    fit_loglog_slope,
    k_set,
    origin_term,
    predict,
)
from .invertibility import (
    Certificate,
    CheckReport,
    SlowDecreaseParams,
    Verdict,
    classify,
    combine,
    point_mass_certificate,
    profile_certificate,
    slow_decrease_check,
    verify_profile_slow_decrease,
)

__version__ = "0.1.0"
