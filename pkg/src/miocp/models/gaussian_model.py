from dataclasses import dataclass, field
from typing import Any, Dict

import numpy as np

from ..errors import DimensionMismatchError, NotPositiveDefiniteError
from ..interfaces.iserializable import ISerializable


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Gaussian(ISerializable):
    """Multivariate normal N(mean, cov) with a strictly positive definite covariance.

    The covariance is symmetrized on construction and validated by a Cholesky
    factorization; the lower factor is kept for sampling and log-determinants.
    Instances are immutable (arrays are read-only).
    """

    mean: np.ndarray
    cov: np.ndarray
    chol: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        mean = np.atleast_1d(np.array(self.mean, dtype=float))
        if mean.ndim != 1:
            raise DimensionMismatchError(
                f"Gaussian mean must be a vector, got shape {mean.shape}")
        d = mean.shape[0]
        cov = np.atleast_2d(np.array(self.cov, dtype=float))
        if cov.shape != (d, d):
            raise DimensionMismatchError(
                f"Gaussian covariance must be {d}x{d}, got {cov.shape}")
        if not (np.all(np.isfinite(mean)) and np.all(np.isfinite(cov))):
            raise NotPositiveDefiniteError(
                "Gaussian parameters contain non-finite values")
        cov = 0.5 * (cov + cov.T)
        try:
            chol = np.linalg.cholesky(cov)
        except np.linalg.LinAlgError as e:
            raise NotPositiveDefiniteError(
                "Gaussian covariance is not positive definite") from e

        object.__setattr__(self, "mean", _frozen(mean))
        object.__setattr__(self, "cov", _frozen(cov))
        object.__setattr__(self, "chol", _frozen(chol))

    @classmethod
    def standard(cls, dim: int) -> "Gaussian":
        return cls(np.zeros(dim), np.eye(dim))

    @property
    def dim(self) -> int:
        return self.mean.shape[0]

    @property
    def logdet(self) -> float:
        return float(2.0 * np.sum(np.log(np.diag(self.chol))))

    def allclose(self, other: "Gaussian", atol: float = 1e-10) -> bool:
        return (self.dim == other.dim
                and np.allclose(self.mean, other.mean, rtol=0.0, atol=atol)
                and np.allclose(self.cov, other.cov, rtol=0.0, atol=atol))

    def to_dict(self) -> Dict[str, Any]:
        return {"mu": self.mean.tolist(), "sigma": self.cov.tolist()}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Gaussian":
        return cls(np.asarray(data["mu"], dtype=float),
                   np.asarray(data["sigma"], dtype=float))

    def __repr__(self) -> str:
        if self.dim == 1:
            return f"Gaussian(mean={self.mean[0]:.6g}, var={self.cov[0, 0]:.6g})"
        return f"Gaussian(dim={self.dim}, mean={np.array2string(self.mean, precision=4)})"
