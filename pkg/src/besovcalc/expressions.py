"""Symbolic expressions for holomorphic functions on the closed unit disc.

The expression class is closed under differentiation, so no numerical
differentiation happens anywhere in the norm pipeline.  Supported nodes:

    Poly(coeffs)      a_0 + a_1 z + ... + a_d z^d
    Rho(w)            1 / (1 - w z), |w| < 1
    Mon(k)            z^k
    Add(lhs, rhs), Mul(lhs, rhs), Scale(c, inner)
    Dilate(r, inner)  z -> inner(r z), 0 < r <= 1

Every expression has a Taylor expansion sum a_n z^n with sum |a_n| finite,
and truncations carry an explicit bound on the dropped coefficient mass.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

_EVAL_SLACK = 1e-12  # tolerated overshoot of |z| past the closed disc


def _check_finite_complex(c: complex, what: str) -> complex:
    c = complex(c)
    if not (math.isfinite(c.real) and math.isfinite(c.imag)):
        raise DomainError(f"{what} must be finite, got {c!r}")
    return c


class FunctionExpr:
    """Base class for expression nodes."""

    __slots__ = ()

    def __call__(self, z):
        return evaluate(self, z)


@dataclass(frozen=True)
class Poly(FunctionExpr):
    coeffs: tuple

    def __post_init__(self):
        cs = tuple(_check_finite_complex(c, "polynomial coefficient") for c in self.coeffs)
        if len(cs) == 0:
            raise DomainError("polynomial needs at least one coefficient")
        object.__setattr__(self, "coeffs", cs)


def coeff_array(p: Poly) -> np.ndarray:
    """Coefficients of p as a cached complex ndarray (hot path helper)."""
    arr = getattr(p, "_arr", None)
    if arr is None:
        arr = np.asarray(p.coeffs, dtype=complex)
        object.__setattr__(p, "_arr", arr)
    return arr


@dataclass(frozen=True)
class Rho(FunctionExpr):
    """The resolvent-type kernel z -> 1/(1 - w z)."""

    w: complex

    def __post_init__(self):
        w = _check_finite_complex(self.w, "rho parameter")
        if abs(w) >= 1.0:
            raise DomainError(f"rho parameter must satisfy |w| < 1, got |w| = {abs(w)}")
        object.__setattr__(self, "w", w)


@dataclass(frozen=True)
class Mon(FunctionExpr):
    k: int

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 0:
            raise DomainError(f"monomial exponent must be a nonnegative integer, got {self.k}")
        object.__setattr__(self, "k", int(self.k))


@dataclass(frozen=True)
class Add(FunctionExpr):
    lhs: FunctionExpr
    rhs: FunctionExpr


@dataclass(frozen=True)
class Mul(FunctionExpr):
    lhs: FunctionExpr
    rhs: FunctionExpr


@dataclass(frozen=True)
class Scale(FunctionExpr):
    c: complex
    inner: FunctionExpr

    def __post_init__(self):
        object.__setattr__(self, "c", _check_finite_complex(self.c, "scale factor"))


@dataclass(frozen=True)
class Dilate(FunctionExpr):
    r: float
    inner: FunctionExpr

    def __post_init__(self):
        r = float(self.r)
        if not (0.0 < r <= 1.0):
            raise DomainError(f"dilation radius must lie in (0, 1], got {r}")
        object.__setattr__(self, "r", r)


def _eval(f: FunctionExpr, z):
    if isinstance(f, Poly):
        return np.polynomial.polynomial.polyval(z, coeff_array(f))
    if isinstance(f, Rho):
        return 1.0 / (1.0 - f.w * z)
    if isinstance(f, Mon):
        return z ** f.k if f.k > 0 else np.ones_like(z)
    if isinstance(f, Add):
        return _eval(f.lhs, z) + _eval(f.rhs, z)
    if isinstance(f, Mul):
        return _eval(f.lhs, z) * _eval(f.rhs, z)
    if isinstance(f, Scale):
        return f.c * _eval(f.inner, z)
    if isinstance(f, Dilate):
        return _eval(f.inner, f.r * z)
    raise TypeError(f"unknown expression node {type(f).__name__}")


def evaluate(f: FunctionExpr, z):
    """Evaluate f at a point or array of points with |z| <= 1."""
    scalar = np.isscalar(z) or isinstance(z, complex)
    zz = np.asarray(z, dtype=complex)
    if zz.size and float(np.max(np.abs(zz))) > 1.0 + _EVAL_SLACK:
        raise DomainError("evaluation point lies outside the closed unit disc")
    out = _eval(f, zz)
    if scalar:
        return complex(out)
    return out


def derivative(f: FunctionExpr) -> FunctionExpr:
    """Symbolic derivative, staying inside the expression class."""
    if isinstance(f, Poly):
        if len(f.coeffs) == 1:
            return Poly((0.0,))
        return Poly(tuple((n + 1) * c for n, c in enumerate(f.coeffs[1:])))
    if isinstance(f, Rho):
        # d/dz 1/(1-wz) = w/(1-wz)^2
        return Scale(f.w, Mul(Rho(f.w), Rho(f.w)))
    if isinstance(f, Mon):
        if f.k == 0:
            return Poly((0.0,))
        return Scale(f.k, Mon(f.k - 1))
    if isinstance(f, Add):
        return Add(derivative(f.lhs), derivative(f.rhs))
    if isinstance(f, Mul):
        return Add(Mul(derivative(f.lhs), f.rhs), Mul(f.lhs, derivative(f.rhs)))
    if isinstance(f, Scale):
        return Scale(f.c, derivative(f.inner))
    if isinstance(f, Dilate):
        return Scale(f.r, Dilate(f.r, derivative(f.inner)))
    raise TypeError(f"unknown expression node {type(f).__name__}")


@dataclass(frozen=True)
class TaylorSeries:
    """Truncated Taylor coefficients a_0..a_N with a tail-mass bound.

    tail_bound bounds sum_{n>N} |a_n| (math.inf when no bound is available;
    never the case for the supported expression class).
    """

    coeffs: np.ndarray
    tail_bound: float

    def __post_init__(self):
        cs = np.asarray(self.coeffs, dtype=complex)
        if not np.all(np.isfinite(cs)):
            raise DomainError("Taylor coefficients must be finite")
        if self.tail_bound < 0:
            raise DomainError("tail bound must be nonnegative")
        object.__setattr__(self, "coeffs", cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1


def _taylor(f: FunctionExpr, n: int):
    """Return (coeffs[0..n], tail_bound, abs_sum_upper) recursively."""
    if isinstance(f, Poly):
        cs = np.zeros(n + 1, dtype=complex)
        d = min(len(f.coeffs) - 1, n)
        cs[: d + 1] = f.coeffs[: d + 1]
        tail = float(sum(abs(c) for c in f.coeffs[n + 1:]))
        return cs, tail, float(np.sum(np.abs(f.coeffs)))
    if isinstance(f, Rho):
        cs = f.w ** np.arange(n + 1)
        aw = abs(f.w)
        tail = aw ** (n + 1) / (1.0 - aw)
        return cs, tail, 1.0 / (1.0 - aw)
    if isinstance(f, Mon):
        cs = np.zeros(n + 1, dtype=complex)
        if f.k <= n:
            cs[f.k] = 1.0
            return cs, 0.0, 1.0
        return cs, 1.0, 1.0
    if isinstance(f, Add):
        a, ta, wa = _taylor(f.lhs, n)
        b, tb, wb = _taylor(f.rhs, n)
        return a + b, ta + tb, wa + wb
    if isinstance(f, Mul):
        a, ta, wa = _taylor(f.lhs, n)
        b, tb, wb = _taylor(f.rhs, n)
        cs = np.convolve(a, b)[: n + 1]
        # any dropped product term has one factor index beyond n//2
        h = n // 2
        ta_h = ta + float(np.sum(np.abs(a[h + 1:])))
        tb_h = tb + float(np.sum(np.abs(b[h + 1:])))
        tail = ta_h * wb + wa * tb_h
        return cs, tail, wa * wb
    if isinstance(f, Scale):
        a, ta, wa = _taylor(f.inner, n)
        return f.c * a, abs(f.c) * ta, abs(f.c) * wa
    if isinstance(f, Dilate):
        a, ta, wa = _taylor(f.inner, n)
        return a * f.r ** np.arange(n + 1), (f.r ** (n + 1)) * ta, wa
    raise TypeError(f"unknown expression node {type(f).__name__}")


def taylor_coeffs(f: FunctionExpr, n: int) -> TaylorSeries:
    """Taylor coefficients a_0..a_n of f with a bound on the dropped mass."""
    if n < 0:
        raise DomainError("truncation order must be nonnegative")
    cs, tail, _ = _taylor(f, n)
    return TaylorSeries(cs, tail)


def wiener_norm(series: TaylorSeries) -> tuple[float, float]:
    """Enclosure [lower, upper] of the coefficient-sum norm sum |a_n|."""
    s = float(np.sum(np.abs(series.coeffs)))
    return s, s + series.tail_bound


def wiener_upper(f: FunctionExpr, n: int = 64) -> float:
    """Cheap upper bound on sum |a_n| over the full expansion of f."""
    return wiener_norm(taylor_coeffs(f, n))[1]


def poly_from_series(series: TaylorSeries) -> Poly:
    return Poly(tuple(series.coeffs))


# small constructors used in tests and the CLI
def constant(c) -> Poly:
    return Poly((complex(c),))


def one_minus_z() -> Poly:
    return Poly((1.0, -1.0))


def subtract(f: FunctionExpr, g: FunctionExpr) -> FunctionExpr:
    return Add(f, Scale(-1.0, g))


def evaluate_boundary(f: FunctionExpr, lam: complex) -> complex:
    """Evaluate f at a numerically-unitary point, projected onto the circle."""
    lam = complex(lam)
    a = abs(lam)
    if a > 1.0 + _EVAL_SLACK:
        lam = lam / a
    return evaluate(f, lam)
