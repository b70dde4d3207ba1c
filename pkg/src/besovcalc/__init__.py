"""Analytic Besov functions on the unit disc and the bounded B-calculus."""

import os as _os

# Honor BESOV_THREADS before any BLAS thread pools spin up.  This only
# takes effect when the package is imported before numpy initializes its
# backends, which is the case for the console script.
if "BESOV_THREADS" in _os.environ:
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        _os.environ.setdefault(_var, _os.environ["BESOV_THREADS"])

from .errors import (BesovCalcError, DomainError, EigensolverError,
                     FunctionParseError, OperatorSpecError, PreconditionError,
                     QuadratureConvergenceError, SingularResolventError,
                     UsageError)
from .expressions import (Add, Dilate, FunctionExpr, Mon, Mul, Poly, Rho,
                          Scale, TaylorSeries, derivative, evaluate,
                          taylor_coeffs, wiener_norm)
from .parsing import parse_function
from .quadrature import DEFAULT_CONFIG, QuadratureConfig
from .disc_functions import (BesovNorm, GrhFunction, besov_norm,
                             besov_seminorm, e_seminorm, g_rh, pairing,
                             q_transform, reproduce, sup_on_circle)

__all__ = [
    "Add", "BesovCalcError", "BesovNorm", "DEFAULT_CONFIG", "Dilate",
    "DomainError", "EigensolverError", "FunctionExpr", "FunctionParseError",
    "GrhFunction", "Mon", "Mul", "OperatorSpecError", "Poly",
    "PreconditionError", "QuadratureConfig", "QuadratureConvergenceError",
    "Rho", "Scale", "SingularResolventError", "TaylorSeries", "UsageError",
    "besov_norm", "besov_seminorm", "derivative", "e_seminorm", "evaluate",
    "g_rh", "pairing", "parse_function", "q_transform", "reproduce",
    "sup_on_circle", "taylor_coeffs", "wiener_norm",
]
