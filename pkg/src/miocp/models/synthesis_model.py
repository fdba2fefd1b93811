from dataclasses import dataclass
from typing import Tuple

import numpy as np


@dataclass(frozen=True, eq=False)
class RiccatiSolution:
    """Backward recursion output. ``Pi`` and ``r`` have T+1 entries, ``Gamma`` has T."""

    Pi: Tuple[np.ndarray, ...]
    r: Tuple[np.ndarray, ...]
    Gamma: Tuple[np.ndarray, ...]

    @property
    def T(self) -> int:
        return len(self.Gamma)


@dataclass(frozen=True, eq=False)
class PolicyGaussianPieces:
    """mu_Q_k(x) = gain[k] @ x + offset[k]; sigma_Q[k] = eps (R_k + B_k' Pi_{k+1} B_k)^-1."""

    gain: Tuple[np.ndarray, ...]
    offset: Tuple[np.ndarray, ...]
    sigma_Q: Tuple[np.ndarray, ...]

    @property
    def T(self) -> int:
        return len(self.sigma_Q)

    @property
    def mu_Q_affine(self) -> Tuple[Tuple[np.ndarray, np.ndarray], ...]:
        return tuple(zip(self.gain, self.offset))
