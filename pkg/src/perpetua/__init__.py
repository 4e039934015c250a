"""Numerics for the perpetuity and remainder of a subordinator.

Given a Bernstein exponent Phi, the perpetuity I = integral exp(-xi_l) dl
and the remainder R (the independent factor with I * R standard exponential)
are handled through four interlocking routes: exact integer moments, limit
products, kappa-measure integral representations, and Monte Carlo path
simulation.  The ``verification`` module cross-checks all of them against
each other and against the catalog's closed forms.
"""

from .bernstein import (
    BernsteinFunction,
    LevyTriple,
    conjugate,
    eval_phi,
    eval_phi_from_levy,
    power_subordinate,
)
from .families import CatalogEntry, catalog, get_entry
from .kappa import (
    ClassificationReport,
    KappaMeasure,
    I_integral,
    R_integral,
    classify,
    kappa_for,
    mid_check_I,
    sd_check_logI,
    sd_check_logR,
    sm_le_pi,
)
from .mellin import (
    MellinResult,
    I_product,
    R_product,
    check_logconvex,
    gamma_fn,
    moments_I,
    moments_R,
)
from .montecarlo import (
    PerpetuityEstimate,
    SubordinatorModel,
    estimate_mellin_I,
    factorization_test,
    model_for,
    sample_increment,
    sample_perpetuity,
)

__version__ = "0.1.0"

__all__ = [
    "BernsteinFunction",
    "LevyTriple",
    "CatalogEntry",
    "KappaMeasure",
    "MellinResult",
    "ClassificationReport",
    "PerpetuityEstimate",
    "SubordinatorModel",
    "catalog",
    "get_entry",
    "eval_phi",
    "eval_phi_from_levy",
    "conjugate",
    "power_subordinate",
    "gamma_fn",
    "moments_I",
    "moments_R",
    "R_product",
    "I_product",
    "check_logconvex",
    "kappa_for",
    "R_integral",
    "I_integral",
    "classify",
    "mid_check_I",
    "sd_check_logR",
    "sd_check_logI",
    "sm_le_pi",
    "model_for",
    "sample_increment",
    "sample_perpetuity",
    "estimate_mellin_I",
    "factorization_test",
]
