from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class RolloutBatch:
    """``paths`` is (num_paths, T+1, n); ``inputs`` is (num_paths, T, m)."""

    paths: np.ndarray
    inputs: np.ndarray
    seed: int

    @property
    def num_paths(self) -> int:
        return self.paths.shape[0]

    @property
    def T(self) -> int:
        return self.inputs.shape[1]

    @property
    def terminal_states(self) -> np.ndarray:
        return self.paths[:, -1, :]


@dataclass(frozen=True, eq=False)
class EmpiricalMoments:
    """Sample moments of a batch (covariances with ddof=1)."""

    state_mean: np.ndarray
    state_cov: np.ndarray
    input_mean: np.ndarray
    input_cov: np.ndarray
    num_paths: int
