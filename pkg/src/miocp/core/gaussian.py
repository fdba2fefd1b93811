"""Closed-form operations on multivariate Gaussians."""
import numpy as np
from scipy.linalg import solve_triangular

from ..errors import DimensionMismatchError, NotPositiveDefiniteError
from ..models.gaussian_model import Gaussian
from .linalg import spd_solve, symmetrize

SQRTM_TOLERANCE = 1e-10


def _check_same_dim(p: Gaussian, q: Gaussian):
    if p.dim != q.dim:
        raise DimensionMismatchError(
            f"Gaussians of different dimension: {p.dim} vs {q.dim}")


def kl_divergence(p: Gaussian, q: Gaussian) -> float:
    """D_KL[p || q] = 1/2 [log|S_q|/|S_p| - d + Tr(S_q^-1 S_p) + |m_q - m_p|^2_{S_q^-1}]."""
    _check_same_dim(p, q)
    whitened_cov = solve_triangular(q.chol, p.chol, lower=True,
                                    check_finite=False)
    whitened_diff = solve_triangular(q.chol, q.mean - p.mean, lower=True,
                                     check_finite=False)
    value = 0.5 * (q.logdet - p.logdet - p.dim +
                   float(np.sum(whitened_cov**2)) +
                   float(whitened_diff @ whitened_diff))
    return max(value, 0.0)


def product(p: Gaussian, q: Gaussian) -> Gaussian:
    """Normalized density proportional to p(u) q(u)."""
    _check_same_dim(p, q)
    S = p.cov + q.cov
    mean = q.cov @ spd_solve(S, p.mean) + p.cov @ spd_solve(S, q.mean)
    cov = p.cov @ spd_solve(S, q.cov)
    return Gaussian(mean, cov)


def sqrtm_psd(M: np.ndarray, tolerance: float = SQRTM_TOLERANCE) -> np.ndarray:
    """Principal square root of a symmetric PSD matrix.

    Negative eigenvalues down to -tolerance * max(1, |M|_2) are roundoff and
    clamped to zero.
    """
    M = np.atleast_2d(np.asarray(M, dtype=float))
    if M.shape[0] != M.shape[1]:
        raise DimensionMismatchError(f"sqrtm_psd needs a square matrix, got {M.shape}")
    w, V = np.linalg.eigh(symmetrize(M))
    scale = max(1.0, float(np.max(np.abs(w)))) if w.size else 1.0
    if w.size and w[0] < -tolerance * scale:
        raise NotPositiveDefiniteError(
            f"matrix is not PSD (eigenvalue {w[0]:.3e})")
    root = (V * np.sqrt(np.clip(w, 0.0, None))) @ V.T
    return symmetrize(root)


def wasserstein2_sq(p: Gaussian, q: Gaussian) -> float:
    _check_same_dim(p, q)
    if np.array_equal(p.mean, q.mean) and np.array_equal(p.cov, q.cov):
        return 0.0
    q_root = sqrtm_psd(q.cov)
    cross = sqrtm_psd(q_root @ p.cov @ q_root)
    diff = p.mean - q.mean
    value = float(diff @ diff) + float(
        np.trace(p.cov) + np.trace(q.cov) - 2.0 * np.trace(cross))
    return max(value, 0.0)


def sample(p: Gaussian, rng: np.random.Generator, count: int) -> np.ndarray:
    """Draw ``count`` samples as rows of a (count, d) array: x = mean + L z."""
    if count < 1:
        raise ValueError(f"count must be positive, got {count}")
    z = rng.standard_normal((count, p.dim))
    return p.mean + z @ p.chol.T


def log_density(p: Gaussian, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    X = np.atleast_2d(x)
    if X.shape[1] != p.dim:
        raise DimensionMismatchError(
            f"points of dimension {X.shape[1]} for a {p.dim}-dim Gaussian")
    z = solve_triangular(p.chol, (X - p.mean).T, lower=True,
                         check_finite=False)
    values = -0.5 * (np.sum(z**2, axis=0) + p.dim * np.log(2.0 * np.pi) +
                     p.logdet)
    return float(values[0]) if single else values


def entropy(p: Gaussian) -> float:
    return 0.5 * (p.dim * np.log(2.0 * np.pi * np.e) + p.logdet)
