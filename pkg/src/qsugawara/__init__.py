"""Exact machine checks for the Sugawara series of U_q(gl_n^) at the critical level."""

from .coeff import SYMBOLIC, DEFAULT_SAMPLES, NumericQ, RatFuncQ
from .rll import OPPOSITE, STANDARD, AlgElem, Algebra, Gen, TruncPolicy
from .sugawara import METHODS, ell_bar_series, ell_series
from .checks import CHECKS, RunConfig, run_check

__version__ = "0.1.0"

__all__ = [
    "SYMBOLIC",
    "DEFAULT_SAMPLES",
    "NumericQ",
    "RatFuncQ",
    "STANDARD",
    "OPPOSITE",
    "AlgElem",
    "Algebra",
    "Gen",
    "TruncPolicy",
    "METHODS",
    "ell_series",
    "ell_bar_series",
    "CHECKS",
    "RunConfig",
    "run_check",
    "__version__",
]
