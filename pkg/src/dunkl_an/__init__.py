"""Dunkl kernel, generalized Bessel function and intertwining operator for S_n."""

from ._backend import BACKEND
from .dunkl import (
    BesselSpec,
    Evaluation,
    KernelQuery,
    bessel,
    bessel_by_symmetrization,
    c_kappa,
    dunkl_kernel,
    intertwine,
    intertwine_monomial,
    intertwine_single,
    intertwine_symmetric,
    limit_check,
    shift_check_a2,
)
from .poly import (
    MultiPoly,
    Transposition,
    alternating_poly_a2,
    as_multiplicity,
    divided_difference,
    dunkl_apply,
    parse_poly,
    partial_derivative,
    transpose_action,
)
from .quadrature import SimplexRule, build_dirichlet_rule, build_rule, dirichlet_moment, integrate
from .report import VerifyReport
from .special import (
    HumbertSpec,
    LauricellaSpec,
    SeriesDivergenceError,
    SeriesParams,
    SeriesResult,
    SeriesToleranceError,
    degenerate_ho,
    humbert_phi2,
    lauricella_fd,
    phi2,
    pochhammer,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BesselSpec",
    "Evaluation",
    "HumbertSpec",
    "KernelQuery",
    "LauricellaSpec",
    "MultiPoly",
    "SeriesDivergenceError",
    "SeriesParams",
    "SeriesResult",
    "SeriesToleranceError",
    "SimplexRule",
    "Transposition",
    "VerifyReport",
    "alternating_poly_a2",
    "as_multiplicity",
    "bessel",
    "bessel_by_symmetrization",
    "build_dirichlet_rule",
    "build_rule",
    "c_kappa",
    "degenerate_ho",
    "dirichlet_moment",
    "divided_difference",
    "dunkl_apply",
    "dunkl_kernel",
    "humbert_phi2",
    "integrate",
    "intertwine",
    "intertwine_monomial",
    "intertwine_single",
    "intertwine_symmetric",
    "lauricella_fd",
    "limit_check",
    "parse_poly",
    "partial_derivative",
    "phi2",
    "pochhammer",
    "shift_check_a2",
    "transpose_action",
]
