"""Evaluation of f(T) for matrices by three routes.

* Taylor: partial sums of sum a_n T^n for spectral radius strictly below 1,
  truncated once a certified geometric majorant of the tail drops under
  the tolerance.
* Abel: sums of sum a_n r^n T^n along r_j = 1 - 2^-j, stabilized in
  operator norm (applicable to any power-bounded matrix).
* Integral: the area integral of f'(z) against the squared-resolvent kernel
  with logarithmic weight, sharing the radial and angular machinery of the
  duality pairing.

The three routes agree wherever their preconditions overlap, which is the
correctness arbiter used by the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (PreconditionError, QuadratureConvergenceError,
                     SingularResolventError)
from .expressions import FunctionExpr, derivative, evaluate, taylor_coeffs
from .operators import as_matrix, matrix_to_dict, power_bound, spectrum
from .quadrature import QuadratureConfig, integrate_periodic, radial_log_weighted


@dataclass(frozen=True)
class CalculusResult:
    value: np.ndarray
    method: str
    residual: float
    terms_or_nodes: int

    def __post_init__(self):
        if self.residual < 0:
            raise ValueError("residual must be nonnegative")

    def to_dict(self) -> dict:
        d = matrix_to_dict(self.value)
        d["method"] = self.method
        d["residual"] = float(self.residual)
        return d


def _geometric_majorant(T: np.ndarray, cap: int = 20000) -> tuple[float, float]:
    """(K, sigma) with ||T^n|| <= K sigma^n for all n and sigma < 1."""
    norms = [1.0]
    power = np.eye(T.shape[0], dtype=complex)
    while True:
        power = power @ T
        norms.append(float(np.linalg.norm(power, 2)))
        if norms[-1] < 1.0:
            break
        if len(norms) > cap:
            raise QuadratureConvergenceError(
                "no power of T fell below norm 1; spectral radius too close to 1")
    m = len(norms) - 1
    sigma = norms[m] ** (1.0 / m)
    K = max(norms[j] / sigma ** j for j in range(m))
    return K, sigma


def _series_sum(T: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    n = T.shape[0]
    acc = coeffs[0] * np.eye(n, dtype=complex)
    power = np.eye(n, dtype=complex)
    for a in coeffs[1:]:
        power = power @ T
        if a != 0:
            acc = acc + a * power
    return acc


def fc_taylor(T, f: FunctionExpr, tol: float = 1e-10) -> CalculusResult:
    """f(T) = sum a_n T^n, requiring spectral radius strictly below 1."""
    T = as_matrix(T)
    info = spectrum(T)
    if info.spectral_radius >= 1.0 - 1e-10:
        raise PreconditionError(
            f"Taylor route needs spectral radius < 1, got {info.spectral_radius}")
    K, sigma = _geometric_majorant(T)
    n_terms = 64
    while True:
        series = taylor_coeffs(f, n_terms)
        residual = K * sigma ** (n_terms + 1) * series.tail_bound
        if residual < tol:
            break
        if n_terms > 1_000_000:
            raise QuadratureConvergenceError(
                f"Taylor truncation did not reach tolerance by {n_terms} terms")
        n_terms *= 2
    return CalculusResult(_series_sum(T, series.coeffs), "taylor", residual,
                          n_terms + 1)


def fc_abel(T, f: FunctionExpr, tol: float = 1e-8) -> CalculusResult:
    """f(T) as the operator-norm limit of sum a_n r^n T^n along r -> 1-."""
    T = as_matrix(T)
    pb = power_bound(T, 64)
    if pb.likely_unbounded:
        raise PreconditionError("Abel route needs a power-bounded matrix")
    kappa = max(1.0, pb.value)
    prev = None
    n_terms = 64
    for j in range(2, 41):
        r = 1.0 - 0.5 ** j
        while True:
            series = taylor_coeffs(f, n_terms)
            if kappa * r ** (n_terms + 1) * series.tail_bound < 0.1 * tol:
                break
            if n_terms > 1_000_000:
                raise QuadratureConvergenceError(
                    f"Abel inner series did not reach tolerance by {n_terms} terms")
            n_terms *= 2
        dilated = series.coeffs * r ** np.arange(len(series.coeffs))
        cur = _series_sum(T, dilated)
        if prev is not None:
            diff = float(np.linalg.norm(cur - prev, 2))
            if diff < tol:
                return CalculusResult(cur, "abel", diff, n_terms + 1)
        prev = cur
    raise QuadratureConvergenceError("Abel means did not stabilize within 40 levels")


def _resolvent_kernel(T: np.ndarray, r: float, thetas: np.ndarray) -> np.ndarray:
    """T (I - r e^{-i theta} T)^{-2} stacked over the angles."""
    n = T.shape[0]
    eye = np.eye(n, dtype=complex)
    lam = r * np.exp(-1j * thetas)
    M = eye[None] - lam[:, None, None] * T[None]
    try:
        inv = np.linalg.inv(M)
    except np.linalg.LinAlgError as exc:
        raise SingularResolventError(f"resolvent solve failed at r={r}: {exc}") from exc
    return T[None] @ inv @ inv


def fc_integral(T, f: FunctionExpr, cfg: QuadratureConfig) -> CalculusResult:
    """f(0) I plus (2/pi) int_D log(1/|z|) f'(z) T (I - conj(z) T)^{-2} dA(z).

    The residual combines the difference between two radial refinement
    levels with the reported tail truncation, so it stays honest when the
    spectrum touches the unit circle and the boundary layer exhausts the
    angle budget.
    """
    T = as_matrix(T)
    pb = power_bound(T, 64)
    if pb.likely_unbounded:
        raise PreconditionError("integral route needs a power-bounded matrix")
    fp = derivative(f)
    nodes_used = [0]

    def run(active: QuadratureConfig, tol: float):
        def H(r: float):
            def fn(thetas: np.ndarray):
                nodes_used[0] += len(thetas)
                vals = evaluate(fp, r * np.exp(1j * thetas))
                return vals[:, None, None] * _resolvent_kernel(T, r, thetas)

            val, _ = integrate_periodic(fn, active)
            return val

        return radial_log_weighted(H, active, tol=tol)

    last_exc = None
    for cut_shrink in (1.0, 0.25, 0.0625):
        active = QuadratureConfig(tol=cfg.tol,
                                  max_theta_points=cfg.max_theta_points,
                                  r_grid_depth=cfg.r_grid_depth,
                                  boundary_cut=cfg.boundary_cut * cut_shrink)
        try:
            coarse, _ = run(active, cfg.tol)
            fine, tail = run(active, 0.1 * cfg.tol)
            break
        except SingularResolventError as exc:
            last_exc = exc
    else:
        raise last_exc
    residual = float(np.linalg.norm(fine - coarse, 2)) + (2.0 / np.pi) * tail
    n = T.shape[0]
    value = evaluate(f, 0.0) * np.eye(n, dtype=complex) + (2.0 / np.pi) * fine
    return CalculusResult(value, "integral", residual, nodes_used[0])


def apply_calculus(T, f: FunctionExpr, method: str,
                   tol: float = 1e-10,
                   cfg: QuadratureConfig | None = None) -> CalculusResult:
    if method == "taylor":
        return fc_taylor(T, f, tol)
    if method == "abel":
        return fc_abel(T, f, max(tol, 1e-12))
    if method == "integral":
        return fc_integral(T, f, cfg if cfg is not None else QuadratureConfig(tol=tol))
    raise PreconditionError(f"unknown calculus method {method!r}")


def hausdorff_distance(a: np.ndarray, b: np.ndarray) -> float:
    a = np.atleast_1d(np.asarray(a, dtype=complex))
    b = np.atleast_1d(np.asarray(b, dtype=complex))
    d = np.abs(a[:, None] - b[None, :])
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def spectral_map_check(T, f: FunctionExpr, method: str = "taylor",
                       tol: float = 1e-10,
                       cfg: QuadratureConfig | None = None) -> float:
    """Hausdorff distance between the spectrum of f(T) and f applied to the
    spectrum of T; small whenever the calculus route is accurate."""
    T = as_matrix(T)
    result = apply_calculus(T, f, method, tol, cfg)
    image = spectrum(result.value).eigenvalues
    lam = spectrum(T).eigenvalues
    mapped = np.array([_eval_closed(f, z) for z in lam])
    return hausdorff_distance(image, mapped)


def _eval_closed(f: FunctionExpr, z: complex) -> complex:
    a = abs(z)
    if a > 1.0:
        z = z / a  # numerically-unitary eigenvalue, project onto the circle
    return evaluate(f, z)
