"""Mittag-Leffler functions, extended Bessel asymptotics, and the radial
Fourier transform of Mittag-Leffler profiles, with asymptotic-law and
L^p-region verification tools."""

from .errors import (
    AccuracyError,
    ConvergenceError,
    DegenerateFitError,
    DomainError,
    FitError,
    LawMismatchError,
    MLFourierError,
    PoleError,
)
from .special_core import (
    Complex,
    QuadratureConfig,
    complex_gamma,
    integrate_finite,
    integrate_semi_infinite,
    principal_pow,
    reciprocal_gamma,
)
from .mittag_leffler import (
    ContourSpec,
    MLParams,
    default_contour,
    hankel_reciprocal_gamma,
    ml_contour,
    ml_eval,
    ml_on_ray,
    ml_sector_asymptotic,
    ml_series,
)
from .bessel import (
    BesselExpansion,
    BesselOrder,
    DecayCertificate,
    bessel_asymptotic,
    bessel_j_half_identity,
    bessel_j_poisson,
    bessel_j_reference,
    bessel_j_series,
    build_expansion,
    jbar,
    remainder_decay_certificate,
    small_argument_leading,
    small_argument_remainder_constant,
)
from .radial_fourier import (
    TailStrategy,
    TransformProblem,
    compute_M,
    compute_N,
    cutoff_derivative,
    cutoff_phi,
    cutoff_psi,
    default_strategy,
    fourier_radial_reference,
    ibp_identity_check,
    min_ibp_order,
    ml_transform,
    q_kernel,
    transform_direct,
)
from .asymptotics import (
    AsymptoticReport,
    ExponentFit,
    LpRegion,
    fit_exponent,
    lp_numerical_check,
    lp_region,
    small_xi_law,
    verify_large_xi,
    verify_small_xi,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "AsymptoticReport",
    "BesselExpansion",
    "BesselOrder",
    "Complex",
    "ContourSpec",
    "ConvergenceError",
    "DecayCertificate",
    "DegenerateFitError",
    "DomainError",
    "ExponentFit",
    "FitError",
    "LawMismatchError",
    "LpRegion",
    "MLFourierError",
    "MLParams",
    "PoleError",
    "QuadratureConfig",
    "TailStrategy",
    "TransformProblem",
    "bessel_asymptotic",
    "bessel_j_half_identity",
    "bessel_j_poisson",
    "bessel_j_reference",
    "bessel_j_series",
    "build_expansion",
    "complex_gamma",
    "compute_M",
    "compute_N",
    "cutoff_derivative",
    "cutoff_phi",
    "cutoff_psi",
    "default_contour",
    "default_strategy",
    "fit_exponent",
    "fourier_radial_reference",
    "hankel_reciprocal_gamma",
    "ibp_identity_check",
    "integrate_finite",
    "integrate_semi_infinite",
    "jbar",
    "lp_numerical_check",
    "lp_region",
    "ml_contour",
    "ml_eval",
    "ml_on_ray",
    "ml_sector_asymptotic",
    "ml_series",
    "min_ibp_order",
    "ml_transform",
    "principal_pow",
    "q_kernel",
    "reciprocal_gamma",
    "remainder_decay_certificate",
    "small_argument_leading",
    "small_argument_remainder_constant",
    "small_xi_law",
    "transform_direct",
    "verify_large_xi",
    "verify_small_xi",
    "__version__",
]
