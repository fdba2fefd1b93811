"""Small dense SPD helpers shared by the numerical modules."""
import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from ..errors import NotPositiveDefiniteError, NumericalError

PSD_TOLERANCE = 1e-9


def symmetrize(M: np.ndarray) -> np.ndarray:
    return 0.5 * (M + M.T)


def is_positive_definite(M: np.ndarray) -> bool:
    M = np.atleast_2d(np.asarray(M, dtype=float))
    if M.shape[0] != M.shape[1] or not np.all(np.isfinite(M)):
        return False
    try:
        np.linalg.cholesky(symmetrize(M))
    except np.linalg.LinAlgError:
        return False
    return True


def spd_solve(S: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Solve S X = rhs for symmetric positive definite S via Cholesky."""
    return factored_solve(spd_factor(S), rhs)


def clamp_psd(M: np.ndarray, tolerance: float = PSD_TOLERANCE) -> np.ndarray:
    """Symmetrize M and clamp eigenvalues in [-tolerance, 0) to zero.

    Eigenvalues below -tolerance mean the matrix was never PSD and raise.
    """
    S = symmetrize(M)
    w = np.linalg.eigvalsh(S)
    if w[0] >= 0.0:
        return S
    if w[0] < -tolerance:
        raise NumericalError(
            f"matrix expected PSD has eigenvalue {w[0]:.3e} below -{tolerance:g}")
    w, V = np.linalg.eigh(S)
    return symmetrize((V * np.clip(w, 0.0, None)) @ V.T)


def reciprocal_condition(M: np.ndarray) -> float:
    cond = np.linalg.cond(M)
    if not np.isfinite(cond) or cond == 0.0:
        return 0.0
    return float(1.0 / cond)


def spd_factor(S: np.ndarray):
    try:
        return cho_factor(S, lower=True, check_finite=False)
    except LinAlgError as e:
        raise NotPositiveDefiniteError(
            "matrix is not positive definite, Cholesky factorization failed") from e


def factored_solve(factor, rhs: np.ndarray) -> np.ndarray:
    return cho_solve(factor, rhs, check_finite=False)


def logdet_spd(S: np.ndarray) -> float:
    c, _ = spd_factor(S)
    return float(2.0 * np.sum(np.log(np.diag(c))))
