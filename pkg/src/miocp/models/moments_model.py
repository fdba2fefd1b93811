from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .gaussian_model import Gaussian


@dataclass(frozen=True, eq=False)
class StateMoments:

    mu_x: Tuple[np.ndarray, ...]
    sigma_x: Tuple[np.ndarray, ...]

    @property
    def T(self) -> int:
        return len(self.mu_x) - 1

    def distribution(self, k: int) -> Gaussian:
        return Gaussian(self.mu_x[k], self.sigma_x[k])
