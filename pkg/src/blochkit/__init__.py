"""Numerical toolkit for the Bloch space of the unit disk.

Analytic functions are expression trees with exact derivatives; suprema over
the disk come from a polar grid plus local refinement.  On top of that sit
norm bounds for weighted composition operators, isometry checks and spectra.
"""
from .analysis import (
    SupremumEstimate,
    bloch_norm,
    bloch_seminorm,
    growth_bound_check,
    little_bloch_check,
    schwarz_pick_check,
    sigma_infty,
    sup_norm,
    tau_infty,
)
from .errors import (
    BlochkitError,
    DomainError,
    NumericalOverflow,
    PoleError,
    PreconditionError,
    SingularMatrix,
)
from .functions import (
    AnalyticFn,
    Automorphism,
    BlaschkeProduct,
    Compose,
    Const,
    Identity,
    LogTest,
    Monomial,
    Polynomial,
    Product,
    ReciprocalShift,
    Scale,
    Sum,
    compose,
    eval_with_derivative,
    evaluate,
    power,
    rotation,
)
from .grid import DiskGrid
from .isometry import (
    build_thin_blaschke,
    comp_isometry_check,
    mult_isometry_check,
    power_norm_bound,
)
from .operators import (
    OperatorSpec,
    composition_bounds,
    default_family,
    empirical_norm_lower,
    mult_bounds,
    wco_bounds,
)
from .spectra import (
    RotationSpec,
    mult_spectrum,
    mult_spectrum_membership,
    rotation_comp_spectrum,
    rotation_resolvent_solve,
    weighted_iso_spectrum,
)

__version__ = "0.1.0"

__all__ = [
    "AnalyticFn",
    "Automorphism",
    "BlaschkeProduct",
    "BlochkitError",
    "Compose",
    "DiskGrid",
    "Const",
    "DomainError",
    "Identity",
    "LogTest",
    "Monomial",
    "NumericalOverflow",
    "OperatorSpec",
    "PoleError",
    "Polynomial",
    "PreconditionError",
    "Product",
    "ReciprocalShift",
    "RotationSpec",
    "Scale",
    "SingularMatrix",
    "Sum",
    "SupremumEstimate",
    "bloch_norm",
    "bloch_seminorm",
    "build_thin_blaschke",
    "comp_isometry_check",
    "compose",
    "composition_bounds",
    "default_family",
    "empirical_norm_lower",
    "eval_with_derivative",
    "evaluate",
    "growth_bound_check",
    "little_bloch_check",
    "mult_bounds",
    "mult_isometry_check",
    "mult_spectrum",
    "mult_spectrum_membership",
    "power",
    "power_norm_bound",
    "rotation",
    "rotation_comp_spectrum",
    "rotation_resolvent_solve",
    "schwarz_pick_check",
    "sigma_infty",
    "sup_norm",
    "tau_infty",
    "wco_bounds",
    "weighted_iso_spectrum",
]
