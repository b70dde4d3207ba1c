"""Dense complex matrices: spectra, resolvent estimates and the operator zoo.

Matrices are plain complex numpy arrays.  The spectral norm is the largest
singular value; eigendata comes from the dense nonsymmetric LAPACK solver.
Resolvent-condition estimates replace the functional form |<A x, x*>| by the
operator-norm majorant ||A||, so the reported constants are upper-bound
shaped, while the supremum over the radius is taken on a dyadic grid and is
therefore a lower estimate of the true supremum.  A sampled functional form
over random unit vector pairs gives a matching lower estimate.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Sequence

import numpy as np

from .errors import (EigensolverError, OperatorSpecError, PreconditionError,
                     SingularResolventError)
from .quadrature import QuadratureConfig, integrate_periodic


def as_matrix(data) -> np.ndarray:
    T = np.asarray(data, dtype=complex)
    if T.ndim != 2 or T.shape[0] != T.shape[1] or T.shape[0] < 1:
        raise OperatorSpecError(f"expected a square matrix, got shape {T.shape}")
    if not np.all(np.isfinite(T)):
        raise OperatorSpecError("matrix entries must be finite")
    return T


@dataclass(frozen=True)
class SpectrumInfo:
    eigenvalues: np.ndarray
    spectral_radius: float
    unitary_eigenvalues: np.ndarray


def spectrum(T, eps_u: float = 1e-8) -> SpectrumInfo:
    """Eigenvalues with multiplicity, spectral radius, and the circle band.

    eps_u is the relative tolerance for membership in the unitary spectrum:
    eigenvalues with ||lambda| - 1| <= eps_u count as lying on the circle.
    """
    if not (0.0 < eps_u <= 1e-4):
        raise PreconditionError(f"eps_u must lie in (0, 1e-4], got {eps_u}")
    T = as_matrix(T)
    try:
        eig = np.linalg.eigvals(T)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"dense eigensolver failed: {exc}") from exc
    radius = float(np.max(np.abs(eig))) if eig.size else 0.0
    unitary = eig[np.abs(np.abs(eig) - 1.0) <= eps_u]
    return SpectrumInfo(eig, radius, unitary)


def operator_norm(T) -> float:
    return float(np.linalg.norm(as_matrix(T), 2))


class PowerBound(NamedTuple):
    value: float
    likely_unbounded: bool


def power_bound(T, n_max: int) -> PowerBound:
    """max over 0 <= n <= n_max of ||T^n||, with a growth flag.

    likely_unbounded is set when the running maximum increased at every
    step over the last n_max//4 powers, or when a power norm exceeds 1e12
    (the iteration stops early in that case).
    """
    if n_max < 1:
        raise PreconditionError("n_max must be >= 1")
    T = as_matrix(T)
    n = T.shape[0]
    best = 1.0  # ||T^0||
    power = np.eye(n, dtype=complex)
    fresh = [False]
    for _ in range(n_max):
        power = power @ T
        nrm = float(np.linalg.norm(power, 2))
        fresh.append(nrm > best)
        if nrm > best:
            best = nrm
        if nrm > 1e12:
            return PowerBound(best, True)
    window = max(1, n_max // 4)
    return PowerBound(best, all(fresh[-window:]))


class DgsfForm(str, Enum):
    TIMES_T = "times_t"
    PLAIN = "plain"
    EXTERIOR = "exterior"


@dataclass(frozen=True)
class DgsfEstimate:
    form: DgsfForm
    value: float
    r_grid_depth: int
    theta_points: int
    bracket: tuple[float, float]


def _batch_spectral_norms(A: np.ndarray) -> np.ndarray:
    return np.linalg.svd(A, compute_uv=False)[:, 0]


def _dgsf_kernel_norms(T: np.ndarray, form: DgsfForm, r: float, thetas: np.ndarray):
    n = T.shape[0]
    eye = np.eye(n, dtype=complex)
    lam = r * np.exp(1j * thetas)
    if form is DgsfForm.EXTERIOR:
        M = lam[:, None, None] * eye[None] - T[None]
    else:
        M = eye[None] - lam[:, None, None] * T[None]
    try:
        inv = np.linalg.inv(M)
    except np.linalg.LinAlgError as exc:
        raise SingularResolventError(
            f"resolvent solve failed at r={r}: {exc}") from exc
    K = inv @ inv
    if form is DgsfForm.TIMES_T:
        K = T[None] @ K
    return _batch_spectral_norms(K)


def _dgsf_radius_value(T: np.ndarray, form: DgsfForm, r: float,
                       cfg: QuadratureConfig) -> tuple[float, int]:
    val, m = integrate_periodic(lambda th: _dgsf_kernel_norms(T, form, r, th), cfg)
    return abs(r - 1.0) * float(val), m


def dgsf_radius_profile(T, form: DgsfForm, radii: Sequence[float],
                        cfg: QuadratureConfig) -> list[float]:
    """|1-r| * int ||kernel|| dtheta at each given radius (for cross-checks)."""
    T = as_matrix(T)
    return [_dgsf_radius_value(T, form, r, cfg)[0] for r in radii]


def dgsf_constant(T, form: DgsfForm, cfg: QuadratureConfig) -> DgsfEstimate:
    """Operator-norm majorant form of the resolvent condition constant.

    The supremum over the radius is a grid maximum over r_k = 1 - 2^-k
    (interior forms) or 1 + 2^-k (exterior), k = 0..cfg.r_grid_depth.  The
    bracket pairs the maximum over the first half of the grid depth with the
    full-depth maximum.  Radii whose angle integral cannot be resolved
    within cfg.max_theta_points are skipped, keeping the estimate a valid
    lower bound of the grid supremum; this only happens when the spectrum
    touches the unit circle.
    """
    T = as_matrix(T)
    form = DgsfForm(form)
    info = spectrum(T)
    if info.spectral_radius > 1.0 + 1e-10:
        raise PreconditionError(
            f"spectral radius must be <= 1, got {info.spectral_radius}")
    best = 0.0
    coarse = 0.0
    max_m = 0
    half = cfg.r_grid_depth // 2
    for k in range(cfg.r_grid_depth + 1):
        r = 1.0 + 0.5 ** k if form is DgsfForm.EXTERIOR else 1.0 - 0.5 ** k
        try:
            val, m = _dgsf_radius_value(T, form, r, cfg)
        except Exception:
            if info.unitary_eigenvalues.size == 0:
                raise
            break
        best = max(best, val)
        max_m = max(max_m, m)
        if k <= half:
            coarse = max(coarse, val)
    return DgsfEstimate(form, best, cfg.r_grid_depth, max_m, (coarse, best))


def dgsf_functional_lower(T, form: DgsfForm, cfg: QuadratureConfig,
                          n_pairs: int = 32, seed: int = 0) -> float:
    """Sampled functional form: max over random unit pairs (x, x*) of the
    grid supremum of |1-r| * int |<kernel x, x*>| dtheta.  A lower estimate
    of the constant defined through functionals."""
    T = as_matrix(T)
    form = DgsfForm(form)
    n = T.shape[0]
    rng = np.random.default_rng(seed)

    def unit(k):
        v = rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
        return v / np.linalg.norm(v, axis=0, keepdims=True)

    X, Xs = unit(n_pairs), unit(n_pairs)
    eye = np.eye(n, dtype=complex)
    best = 0.0
    for k in range(cfg.r_grid_depth + 1):
        r = 1.0 + 0.5 ** k if form is DgsfForm.EXTERIOR else 1.0 - 0.5 ** k

        def pairings(thetas: np.ndarray):
            lam = r * np.exp(1j * thetas)
            if form is DgsfForm.EXTERIOR:
                M = lam[:, None, None] * eye[None] - T[None]
            else:
                M = eye[None] - lam[:, None, None] * T[None]
            inv = np.linalg.inv(M)
            K = inv @ inv
            if form is DgsfForm.TIMES_T:
                K = T[None] @ K
            return np.abs(np.einsum("ip,mij,jp->mp", Xs, K, X))

        try:
            vals, _ = integrate_periodic(pairings, cfg)
        except Exception:
            break
        best = max(best, abs(r - 1.0) * float(np.max(vals)))
    return best


@dataclass(frozen=True)
class RittGrid:
    """Sample layout for the exterior Ritt-constant supremum: dyadic radii
    1 + 2^-k accumulating at the circle plus a linear sweep out to r_max."""

    depth: int = 30
    n_theta: int = 1024
    r_max: float = 4.0
    n_linear: int = 7

    def radii(self) -> np.ndarray:
        dyadic = 1.0 + 0.5 ** np.arange(self.depth + 1)
        linear = np.linspace(2.0, self.r_max, self.n_linear)
        return np.unique(np.concatenate([dyadic, linear]))


def ritt_constant(T, grid: RittGrid = RittGrid()) -> float:
    """Grid supremum of |z-1| * ||(zI - T)^{-1}|| over 1 < |z| <= r_max."""
    T = as_matrix(T)
    info = spectrum(T)
    if info.spectral_radius > 1.0 + 1e-10:
        raise PreconditionError(
            f"spectral radius must be <= 1, got {info.spectral_radius}")
    n = T.shape[0]
    eye = np.eye(n, dtype=complex)
    thetas = np.linspace(-np.pi, np.pi, grid.n_theta, endpoint=False)
    best = 0.0
    for r in grid.radii():
        z = r * np.exp(1j * thetas)
        try:
            inv = np.linalg.inv(z[:, None, None] * eye[None] - T[None])
        except np.linalg.LinAlgError as exc:
            raise SingularResolventError(
                f"resolvent solve failed at |z|={r}: {exc}") from exc
        best = max(best, float(np.max(np.abs(z - 1.0) * _batch_spectral_norms(inv))))
    return best


# ---------------------------------------------------------------------------
# operator factories

def jordan(lam: complex, n: int) -> np.ndarray:
    if n < 1:
        raise OperatorSpecError("jordan block size must be >= 1")
    return np.diag(np.full(n, complex(lam))) + np.diag(np.ones(n - 1, dtype=complex), 1)


def diag_op(entries) -> np.ndarray:
    entries = np.asarray(entries, dtype=complex)
    if entries.ndim != 1 or entries.size < 1:
        raise OperatorSpecError("diagonal needs at least one entry")
    return np.diag(entries)


def unitary_diag(angles) -> np.ndarray:
    angles = np.asarray(angles, dtype=float)
    if angles.ndim != 1 or angles.size < 1:
        raise OperatorSpecError("unitary diagonal needs at least one angle")
    return np.diag(np.exp(1j * angles))


def random_contraction(n: int, seed: int) -> np.ndarray:
    """Random complex matrix scaled to spectral norm 1."""
    if n < 1:
        raise OperatorSpecError("dimension must be >= 1")
    rng = np.random.default_rng(seed)
    S = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return S / np.linalg.norm(S, 2)


def ritt_avg(S) -> np.ndarray:
    """(I + S)/2 for a contraction S; the averaged operator is Ritt."""
    S = as_matrix(S)
    if np.linalg.norm(S, 2) > 1.0 + 1e-10:
        raise OperatorSpecError("ritt_avg requires a contraction, ||S|| <= 1")
    return 0.5 * (np.eye(S.shape[0], dtype=complex) + S)


_SPEC_RE = re.compile(r"^\s*(jordan|diag|unitary|random|ritt)\[([^\]]*)\]\s*$")
_COMPLEX_RE = re.compile(
    r"^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"(?:\s*([+-])\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i)?\s*$")


def _parse_complex(tok: str) -> complex:
    m = _COMPLEX_RE.match(tok)
    if m is None:
        raise OperatorSpecError(f"bad numeric entry {tok!r}")
    re_part = float(m.group(1))
    if m.group(2) is None:
        return complex(re_part, 0.0)
    sign = 1.0 if m.group(2) == "+" else -1.0
    return complex(re_part, sign * float(m.group(3)))


def make_operator(spec: str) -> np.ndarray:
    """Build a matrix from a spec string.

    Accepted forms: "jordan[0.5,2]", "diag[1,0.5]" (complex entries such as
    0.3-0.2i allowed), "unitary[2.0944]" (angles in radians), "random[4,7]"
    (dimension, seed; scaled to spectral norm 1), and "ritt[4,7]" for
    (I + random_contraction(4, 7))/2.
    """
    m = _SPEC_RE.match(spec)
    if m is None:
        raise OperatorSpecError(
            f"unrecognized operator spec {spec!r}; expected "
            "jordan[lam,n], diag[...], unitary[...], random[n,seed] or ritt[n,seed]")
    kind, body = m.group(1), m.group(2)
    parts = [p for p in body.split(",") if p.strip() != ""]
    if not parts:
        raise OperatorSpecError(f"empty argument list in {spec!r}")
    if kind == "jordan":
        if len(parts) != 2:
            raise OperatorSpecError("jordan takes [lambda, n]")
        lam = _parse_complex(parts[0])
        try:
            n = int(parts[1])
        except ValueError as exc:
            raise OperatorSpecError("jordan size must be an integer") from exc
        return jordan(lam, n)
    if kind == "diag":
        return diag_op([_parse_complex(p) for p in parts])
    if kind == "unitary":
        try:
            return unitary_diag([float(p) for p in parts])
        except ValueError as exc:
            raise OperatorSpecError("unitary angles must be real") from exc
    try:
        n, seed = int(parts[0]), int(parts[1]) if len(parts) > 1 else 0
    except ValueError as exc:
        raise OperatorSpecError(f"{kind} takes [n, seed] integers") from exc
    S = random_contraction(n, seed)
    return S if kind == "random" else ritt_avg(S)


# ---------------------------------------------------------------------------
# matrix file format

def matrix_to_dict(T) -> dict:
    T = as_matrix(T)
    flat = T.reshape(-1)
    return {"n": int(T.shape[0]),
            "entries": [[float(c.real), float(c.imag)] for c in flat]}


def matrix_from_dict(d: dict) -> np.ndarray:
    try:
        n = int(d["n"])
        entries = d["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise OperatorSpecError(f"bad matrix dict: {exc}") from exc
    if len(entries) != n * n:
        raise OperatorSpecError(
            f"expected {n * n} entries for a {n}x{n} matrix, got {len(entries)}")
    flat = np.array([complex(re_, im_) for re_, im_ in entries], dtype=complex)
    return as_matrix(flat.reshape(n, n))


def save_matrix(T, path: str):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(matrix_to_dict(T), fh)
        fh.write("\n")


def load_matrix(path: str) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        return matrix_from_dict(json.load(fh))


# ---------------------------------------------------------------------------
# Wiener-algebra shift demonstration

def rudin_shapiro(n: int) -> np.ndarray:
    """Coefficients (+/-1) of the Rudin-Shapiro polynomial with n terms."""
    if n < 1 or (n & (n - 1)) != 0:
        raise OperatorSpecError("length must be a power of two")
    p = np.array([1.0])
    q = np.array([1.0])
    while len(p) < n:
        p, q = np.concatenate([p, q]), np.concatenate([p, -q])
    return p


def wiener_shift_growth(n: int) -> float:
    """Ratio ||p||_W / ||p||_inf for the Rudin-Shapiro polynomial, n terms.

    The coefficient norm is exactly n while the circle supremum stays below
    sqrt(2 n), so the ratio grows without bound; this witnesses the gap
    between the coefficient norm and the supremum norm that defeats
    polynomial boundedness of the bilateral shift on the Wiener algebra.
    """
    if n < 1 or (n & (n - 1)) != 0:
        raise PreconditionError("n must be a power of two >= 1")
    coeffs = rudin_shapiro(n)
    w_norm = float(np.sum(np.abs(coeffs)))
    m = max(4096, 8 * n)
    values = m * np.fft.ifft(np.concatenate([coeffs, np.zeros(m - n)]))
    return w_norm / float(np.max(np.abs(values)))
