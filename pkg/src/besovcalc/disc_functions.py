"""Norms, pairings and transforms for analytic functions on the unit disc.

The seminorm used throughout is int_0^1 sup_theta |f'(r e^{i theta})| dr,
and the full norm adds the sup of |f| on the unit circle.  Circle suprema
are computed on uniform angle grids, doubled until the (locally refined)
grid maximum stabilizes; refinement runs a golden-section search around the
strongest grid basins.  Polynomial expressions are evaluated on uniform
circle grids via the FFT, which is exact whenever the grid is larger than
the degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import DomainError, QuadratureConvergenceError
from .expressions import (FunctionExpr, Poly, Rho, coeff_array, derivative,
                          evaluate)
from .quadrature import (QuadratureConfig, adaptive_gauss, golden_max,
                         integrate_periodic, radial_log_weighted, theta_grid,
                         _loop_nodes)


class BesovNorm(NamedTuple):
    seminorm: float
    norm: float


def _poly_degree(f: FunctionExpr):
    if isinstance(f, Poly):
        return len(f.coeffs) - 1
    return None


def _polyval_scalar(coeffs: np.ndarray, z: complex) -> complex:
    powers = np.empty(len(coeffs), dtype=complex)
    powers[0] = 1.0
    if len(coeffs) > 1:
        np.cumprod(np.full(len(coeffs) - 1, z, dtype=complex), out=powers[1:])
    return complex(np.dot(coeffs, powers))


def _circle_values(f: FunctionExpr, r: float, m: int) -> np.ndarray:
    """Values of f on the uniform grid theta_j = -pi + 2*pi*j/m."""
    deg = _poly_degree(f)
    if deg is not None and deg < m:
        scaled = np.zeros(m, dtype=complex)
        cs = coeff_array(f)
        n = np.arange(deg + 1)
        scaled[: deg + 1] = cs * (r ** n) * ((-1.0) ** n)  # phase for theta_0 = -pi
        return m * np.fft.ifft(scaled)
    return evaluate(f, r * np.exp(1j * theta_grid(m)))


def _point_abs(f: FunctionExpr, r: float, theta: float) -> float:
    z = r * complex(np.cos(theta), np.sin(theta))
    if isinstance(f, Poly):
        return abs(_polyval_scalar(coeff_array(f), z))
    return abs(evaluate(f, z))


def _refined_grid_max(f: FunctionExpr, r: float, m: int, xtol: float,
                      n_basins: int = 3) -> float:
    vals = np.abs(_circle_values(f, r, m))
    best = float(vals.max())
    left, right = np.roll(vals, 1), np.roll(vals, -1)
    idx = np.nonzero((vals >= left) & (vals >= right))[0]
    if idx.size == 0:
        idx = np.array([int(np.argmax(vals))])
    top = idx[np.argsort(vals[idx])[::-1][:n_basins]]
    delta = 2.0 * np.pi / m
    for i in top:
        t0 = -np.pi + 2.0 * np.pi * i / m
        _, fx = golden_max(lambda t: _point_abs(f, r, t), t0 - delta, t0 + delta,
                           xtol=xtol)
        best = max(best, fx)
    return best


def sup_on_circle(f: FunctionExpr, r: float, cfg: QuadratureConfig) -> float:
    """sup over theta of |f(r e^{i theta})|.

    The grid is doubled until the refined maximum moves by less than
    cfg.tol (relative once above 1); fails once cfg.max_theta_points is
    reached without stabilizing.
    """
    if not (0.0 <= r <= 1.0):
        raise DomainError(f"circle radius must lie in [0, 1], got {r}")
    deg = _poly_degree(f)
    m = 1024
    if deg is not None:
        while m < 4 * (deg + 1) and 2 * m <= cfg.max_theta_points:
            m *= 2
    m = min(m, cfg.max_theta_points)
    # golden-section window sized so the quadratic value error stays below tol
    xtol = min(1e-3, max(1e-11, 0.03 * np.sqrt(cfg.tol)))
    prev = None
    while True:
        cur = _refined_grid_max(f, r, m, xtol)
        if prev is not None and abs(cur - prev) <= cfg.tol * max(1.0, cur):
            return cur
        prev = cur
        if 2 * m > cfg.max_theta_points:
            raise QuadratureConvergenceError(
                f"circle supremum did not stabilize within {cfg.max_theta_points} points")
        m *= 2


def besov_seminorm(f: FunctionExpr, cfg: QuadratureConfig) -> float:
    """int_0^1 sup_theta |f'(r e^{i theta})| dr by adaptive radial quadrature."""
    fp = derivative(f)

    def integrand(r: float):
        return sup_on_circle(fp, r, cfg)

    scale = max(integrand(0.0), integrand(0.5), integrand(1.0), 1.0)
    return float(adaptive_gauss(_loop_nodes(integrand), 0.0, 1.0, cfg.tol * scale))


def besov_norm(f: FunctionExpr, cfg: QuadratureConfig) -> BesovNorm:
    """(seminorm, norm) where norm = seminorm + sup of |f| on the unit circle."""
    semi = besov_seminorm(f, cfg)
    return BesovNorm(semi, semi + sup_on_circle(f, 1.0, cfg))


def e_seminorm(g: FunctionExpr, cfg: QuadratureConfig) -> float:
    """Grid maximum of (1-r) * int |g'(r e^{i theta})| dtheta over r_k = 1 - 2^-k.

    This is a lower estimate of the true supremum over r in (0, 1); the
    dyadic grid starts at r = 0 and accumulates toward the boundary.
    """
    gp = derivative(g)
    best = 0.0
    for k in range(cfg.r_grid_depth + 1):
        r = 1.0 - 0.5 ** k

        def fn(thetas: np.ndarray):
            return np.abs(evaluate(gp, r * np.exp(1j * thetas)))

        val, _ = integrate_periodic(fn, cfg)
        best = max(best, (1.0 - r) * float(val))
    return best


def pairing(g: FunctionExpr, f: FunctionExpr, cfg: QuadratureConfig) -> complex:
    """The duality integral int_0^1 r log(1/r) int f'(re^{i t}) g'(re^{-i t}) dt dr."""
    fp = derivative(f)
    gp = derivative(g)

    def H(r: float):
        def fn(thetas: np.ndarray):
            z = r * np.exp(1j * thetas)
            return evaluate(fp, z) * evaluate(gp, np.conj(z))

        val, _ = integrate_periodic(fn, cfg)
        return val

    value, _ = radial_log_weighted(H, cfg)
    return complex(value)


def reproduce(f: FunctionExpr, w: complex, cfg: QuadratureConfig) -> complex:
    """Recover f(w) from f(0) plus (2/pi) times the pairing against 1/(1-wz)."""
    w = complex(w)
    if abs(w) >= 1.0:
        raise DomainError(f"reproducing point must satisfy |w| < 1, got |w| = {abs(w)}")
    return evaluate(f, 0.0) + (2.0 / np.pi) * pairing(Rho(w), f, cfg)


def q_transform(g: FunctionExpr, w: complex, cfg: QuadratureConfig) -> complex:
    """(Qg)(w) = (2/pi) int_D log(1/|z|) w g(z) / (1 - w conj(z))^2 dA(z)."""
    w = complex(w)
    if abs(w) >= 1.0:
        raise DomainError(f"transform point must satisfy |w| < 1, got |w| = {abs(w)}")

    def H(r: float):
        def fn(thetas: np.ndarray):
            kern = w / (1.0 - w * r * np.exp(-1j * thetas)) ** 2
            return evaluate(g, r * np.exp(1j * thetas)) * kern

        val, _ = integrate_periodic(fn, cfg)
        return val

    value, _ = radial_log_weighted(H, cfg)
    return (2.0 / np.pi) * complex(value)


@dataclass
class GrhFunction:
    """Evaluator for w -> int h(theta) / (1 - w r e^{-i theta})^2 dtheta.

    h is the piecewise-linear interpolant of uniform samples on [-pi, pi].
    value() integrates by the doubling trapezoid rule; the power-series
    representation (from exact Fourier coefficients of the interpolant)
    backs the numerical norm estimate, where direct two-dimensional
    quadrature would be far too slow near r = 1.
    """

    r: float
    nodes: np.ndarray
    samples: np.ndarray
    _series: Poly | None = field(default=None, repr=False)

    def h_sup(self) -> float:
        return float(np.max(np.abs(self.samples)))

    def interp(self, thetas: np.ndarray) -> np.ndarray:
        re = np.interp(thetas, self.nodes, self.samples.real)
        im = np.interp(thetas, self.nodes, self.samples.imag)
        return re + 1j * im

    def value(self, w, cfg: QuadratureConfig):
        scalar = np.isscalar(w) or isinstance(w, complex)
        ww = np.atleast_1d(np.asarray(w, dtype=complex))
        if ww.size and float(np.max(np.abs(ww))) > 1.0 + 1e-12:
            raise DomainError("evaluation point lies outside the closed unit disc")

        def fn(thetas: np.ndarray):
            kern = 1.0 / (1.0 - ww[None, :] * self.r * np.exp(-1j * thetas[:, None])) ** 2
            return self.interp(thetas)[:, None] * kern

        val, _ = integrate_periodic(fn, cfg)
        if scalar:
            return complex(val[0])
        return val

    def fourier_coefficients(self, n_max: int) -> np.ndarray:
        """Exact int h(theta) e^{-i n theta} dtheta, n = 0..n_max, for the interpolant."""
        t = self.nodes
        h = self.samples
        dt = np.diff(t)
        B = np.diff(h) / dt           # segment slopes
        A = h[:-1] - B * t[:-1]       # segment intercepts
        out = np.empty(n_max + 1, dtype=complex)
        out[0] = np.sum(0.5 * dt * (h[:-1] + h[1:]))
        ns = np.arange(1, n_max + 1)
        for start in range(0, len(ns), 512):
            blk = ns[start:start + 512]
            c = -1j * blk[:, None]
            E0 = np.exp(c * t[None, :-1])
            E1 = np.exp(c * t[None, 1:])
            F1 = E1 * ((A[None, :] + B[None, :] * t[None, 1:]) / c - B[None, :] / c ** 2)
            F0 = E0 * ((A[None, :] + B[None, :] * t[None, :-1]) / c - B[None, :] / c ** 2)
            out[1 + start:1 + start + len(blk)] = np.sum(F1 - F0, axis=1)
        return out

    def series(self) -> Poly:
        """Power-series form sum (n+1) r^n hhat(n) w^n, truncated far below 1e-12."""
        if self._series is None:
            # tail of the coefficient mass is below 2*pi*||h||_inf * 1e-16/(1-r)
            n = 1
            while (n + 1) * self.r ** n > 1e-16 and n < 1 << 20:
                n += 1
            hhat = self.fourier_coefficients(n)
            coeffs = (np.arange(n + 1) + 1.0) * self.r ** np.arange(n + 1) * hhat
            self._series = Poly(tuple(coeffs))
        return self._series

    def besov_norm_estimate(self, cfg: QuadratureConfig) -> BesovNorm:
        return besov_norm(self.series(), cfg)


def g_rh(r: float, h_samples, cfg: QuadratureConfig) -> GrhFunction:
    """Build the kernel-average evaluator for radius r and sampled weight h.

    h_samples are uniform samples of h on [-pi, pi] (endpoints included),
    interpolated piecewise linearly.
    """
    if not (0.0 < r < 1.0):
        raise DomainError(f"kernel radius must lie in (0, 1), got {r}")
    samples = np.asarray(h_samples, dtype=complex)
    if samples.ndim != 1 or samples.size < 2:
        raise DomainError("h must be given as at least two uniform samples")
    if not np.all(np.isfinite(samples)):
        raise DomainError("h samples must be finite")
    nodes = np.linspace(-np.pi, np.pi, samples.size)
    return GrhFunction(r, nodes, samples)
