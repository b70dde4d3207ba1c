"""Shared quadrature engines.

Three building blocks are used throughout the package:

* a periodic trapezoid rule on uniform angle grids, doubled until two
  successive estimates agree (spectrally accurate for integrands analytic
  in the angle),
* a locally adaptive Gauss-Legendre rule (7/15 point pair) for radial
  integrals of smooth integrands,
* a weighted radial integrator for integrals of the form
  int_0^1 r*log(1/r)*H(r) dr, split as [0, d] (closed-form weight moments
  against a quadratic interpolant of H), [d, 1-d] (adaptive Gauss) and
  [1-d, 1] (substitution r = 1 - exp(-s), integrated segment by segment).

All integrands may be scalar-, vector- or matrix-valued; errors are
measured entrywise in max-abs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import QuadratureConvergenceError


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and budgets for the quadrature engines.

    tol: target accuracy (relative once magnitudes exceed 1).
    max_theta_points: hard cap on angle-grid size, a power of two.
    r_grid_depth: number of dyadic radial levels r_k = 1 - 2^-k.
    boundary_cut: the split parameter d for the weighted radial integrator.
    """

    tol: float = 1e-9
    max_theta_points: int = 1 << 16
    r_grid_depth: int = 30
    boundary_cut: float = 1e-3

    def __post_init__(self):
        if not (self.tol > 0):
            raise ValueError("tol must be positive")
        m = self.max_theta_points
        if m < 16 or (m & (m - 1)) != 0:
            raise ValueError("max_theta_points must be a power of two >= 16")
        if not (0 < self.boundary_cut < 1):
            raise ValueError("boundary_cut must lie in (0, 1)")
        if self.r_grid_depth < 1:
            raise ValueError("r_grid_depth must be >= 1")


DEFAULT_CONFIG = QuadratureConfig()

_GL7 = np.polynomial.legendre.leggauss(7)
_GL15 = np.polynomial.legendre.leggauss(15)


def maxabs(x) -> float:
    return float(np.max(np.abs(x)))


def theta_grid(m: int) -> np.ndarray:
    """Uniform angle grid of m points on [-pi, pi), left endpoints."""
    return -np.pi + 2.0 * np.pi * np.arange(m) / m


def integrate_periodic(fn: Callable[[np.ndarray], np.ndarray], cfg: QuadratureConfig,
                       m0: int = 64):
    """Trapezoid rule over a full period, doubling the grid until stable.

    fn maps an array of angles to an array of values whose leading axis
    matches the angles.  Returns (integral, points_used).  Raises
    QuadratureConvergenceError once the doubled grid would exceed
    cfg.max_theta_points.
    """
    m = m0
    total = np.sum(fn(theta_grid(m)), axis=0)
    est = (2.0 * np.pi / m) * total
    while True:
        if 2 * m > cfg.max_theta_points:
            raise QuadratureConvergenceError(
                f"periodic trapezoid did not stabilize within {cfg.max_theta_points} points")
        odd = theta_grid(2 * m)[1::2]
        total = total + np.sum(fn(odd), axis=0)
        m *= 2
        new_est = (2.0 * np.pi / m) * total
        diff = maxabs(new_est - est)
        est = new_est
        if diff <= cfg.tol * max(1.0, maxabs(est)):
            return est, m


_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0


def golden_max(fn: Callable[[float], float], a: float, b: float,
               xtol: float = 1e-11, max_iter: int = 120) -> tuple[float, float]:
    """Golden-section maximization of fn on [a, b]; returns (x, fn(x))."""
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = fn(c), fn(d)
    for _ in range(max_iter):
        if b - a <= xtol:
            break
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = fn(d)
    if fc >= fd:
        return c, fc
    return d, fd


def adaptive_gauss(fn_vec: Callable[[np.ndarray], np.ndarray], a: float, b: float,
                   tol: float, max_depth: int = 48):
    """Adaptive Gauss-Legendre integration of fn_vec on [a, b].

    fn_vec maps an array of nodes to stacked values (leading axis = nodes).
    A 7/15 point pair estimates the local error; panels split until each
    meets its share tol*(width/(b-a)) of the budget.
    """
    x7, w7 = _GL7
    x15, w15 = _GL15
    total_width = b - a
    if total_width == 0:
        return 0.0 * np.asarray(fn_vec(np.array([a])))[0]
    stack = [(a, b, 0)]
    acc = None
    while stack:
        lo, hi, depth = stack.pop()
        mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
        v7 = fn_vec(mid + half * x7)
        v15 = fn_vec(mid + half * x15)
        i7 = half * np.tensordot(w7, v7, axes=(0, 0))
        i15 = half * np.tensordot(w15, v15, axes=(0, 0))
        err = maxabs(i15 - i7)
        if err <= tol * (hi - lo) / total_width or depth >= max_depth:
            if depth >= max_depth and err > 10 * tol:
                raise QuadratureConvergenceError(
                    f"adaptive Gauss rule stalled on [{lo}, {hi}] (error {err:.3e})")
            acc = i15 if acc is None else acc + i15
        else:
            stack.append((lo, mid, depth + 1))
            stack.append((mid, hi, depth + 1))
    return acc


def _loop_nodes(fn_scalar: Callable[[float], np.ndarray]):
    """Wrap a per-point function so adaptive_gauss can pass node arrays."""
    def fn_vec(xs: np.ndarray):
        return np.stack([np.asarray(fn_scalar(float(x))) for x in xs])
    return fn_vec


def _log_weight_moments(d: float) -> np.ndarray:
    # M_p = int_0^d r^(p+1) * log(1/r) dr for p = 0, 1, 2
    L = np.log(1.0 / d)
    return np.array([d ** (p + 2) * ((p + 2) * L + 1.0) / (p + 2) ** 2 for p in range(3)])


def radial_log_weighted(H: Callable[[float], np.ndarray], cfg: QuadratureConfig,
                        tol: float | None = None, segment: float = 1.0,
                        max_segments: int = 60):
    """Compute int_0^1 r*log(1/r)*H(r) dr for H continuous on [0, 1).

    Returns (value, tail_note) where tail_note bounds the truncation error
    of the substituted tail: the magnitude of the last integrated tail
    segment, and, when the angle budget inside H saturates near r = 1
    (spectrum touching the circle), the magnitude of the first segment that
    could not be resolved.  Callers fold tail_note into residuals.  H may
    be scalar-, vector- or matrix-valued.
    """
    if tol is None:
        tol = cfg.tol
    d = cfg.boundary_cut

    # [0, d]: quadratic interpolation of H against exact weight moments.
    nodes = np.array([0.0, d / 2.0, d])
    V = np.vander(nodes, 3, increasing=True)
    u = np.linalg.solve(V.T, _log_weight_moments(d))
    value = sum(u[i] * np.asarray(H(float(nodes[i]))) for i in range(3))

    # [d, 1-d]: adaptive Gauss on the weighted integrand.
    def weighted(r: float):
        return r * np.log(1.0 / r) * np.asarray(H(r))

    value = value + adaptive_gauss(_loop_nodes(weighted), d, 1.0 - d, tol)

    # [1-d, 1]: substitute r = 1 - exp(-s); integrate fixed-length segments
    # until a segment's contribution drops below the tolerance.
    def tail_integrand(s: float):
        es = np.exp(-s)
        r = 1.0 - es
        return r * (-np.log1p(-es)) * np.asarray(H(r)) * es

    s0 = -np.log(d)
    tail_note = 0.0
    prev_mag = np.inf
    for i in range(max_segments):
        try:
            piece = adaptive_gauss(_loop_nodes(tail_integrand), s0 + i * segment,
                                   s0 + (i + 1) * segment, tol)
        except QuadratureConvergenceError:
            if i == 0:
                raise
            # boundary layer narrower than the angle budget can resolve:
            # truncate here and report the unresolved mass via the last
            # completed segment (the weighted integrand decays in s)
            tail_note = max(tail_note, prev_mag)
            break
        value = value + piece
        prev_mag = maxabs(piece)
        tail_note = prev_mag
        if tail_note <= 0.05 * tol:
            break
    return value, tail_note
