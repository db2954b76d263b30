"""Exact local Whittle estimation of fractional integration."""

from ._errors import (
    DegenerateInputError,
    DegenerateInputWarning,
    EstimationFailedError,
    FracWhittleError,
    HarnessError,
    InvalidInputError,
    InvalidParameterError,
    NonEvaluableError,
)
from ._kernels import BACKEND
from .baselines import TaperKind, lw_estimate, tapered_estimate
from .elw import EstimateResult, EstimatorConfig, estimate
from .fracfilter import frac_coeffs, fracdiff, fracint
from .mc import McConfig, McReport, kde, run_mc
from .simulate import SimSpec, gen_fractional
from .spectrum import dft_grid, identity_residual, periodogram

__all__ = [
    "BACKEND",
    "DegenerateInputError",
    "DegenerateInputWarning",
    "EstimateResult",
    "EstimationFailedError",
    "EstimatorConfig",
    "FracWhittleError",
    "HarnessError",
    "InvalidInputError",
    "InvalidParameterError",
    "McConfig",
    "McReport",
    "NonEvaluableError",
    "SimSpec",
    "TaperKind",
    "dft_grid",
    "estimate",
    "frac_coeffs",
    "fracdiff",
    "fracint",
    "gen_fractional",
    "identity_residual",
    "kde",
    "lw_estimate",
    "periodogram",
    "run_mc",
    "tapered_estimate",
]
