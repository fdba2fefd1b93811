from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, Optional, Tuple

import numpy as np

from ..interfaces.iserializable import ISerializable
from .gaussian_model import Gaussian

Matrix = np.ndarray
Vector = np.ndarray


@dataclass(frozen=True, eq=False)
class ProblemSpec:
    """One MIOCP instance.

    Per-step quantities are tuples of length ``T`` indexed by k = 0..T-1.
    ``prior_init`` is the optional Gaussian the solver starts from at every k.
    """

    T: int
    A: Tuple[Matrix, ...]
    B: Tuple[Matrix, ...]
    sigma_w: Tuple[Matrix, ...]
    R: Tuple[Matrix, ...]
    F: Matrix
    epsilon: float
    mu_ini: Vector
    sigma_ini: Matrix
    mu_fin: Vector
    prior_init: Optional[Gaussian] = None
    name: str = ""
    validated: bool = field(default=False, init=False, compare=False)

    @property
    def n(self) -> int:
        return int(np.shape(self.mu_ini)[0])

    @property
    def m(self) -> int:
        return int(np.shape(self.B[0])[1])


@dataclass(frozen=True, eq=False)
class AffinePolicy(ISerializable):
    """pi_k(u | x) = N(P_k x + q_k, sigma_pi_k) for k = 0..T-1."""

    P: Tuple[Matrix, ...]
    q: Tuple[Vector, ...]
    sigma_pi: Tuple[Matrix, ...]

    @property
    def T(self) -> int:
        return len(self.P)

    def step(self, k: int) -> Tuple[Matrix, Vector, Matrix]:
        return self.P[k], self.q[k], self.sigma_pi[k]

    def conditional(self, k: int, x: Vector) -> Gaussian:
        return Gaussian(self.P[k] @ x + self.q[k], self.sigma_pi[k])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "T": self.T,
            "P": [p.tolist() for p in self.P],
            "q": [q.tolist() for q in self.q],
            "sigma_pi": [s.tolist() for s in self.sigma_pi],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "AffinePolicy":
        return cls(
            P=tuple(np.atleast_2d(np.asarray(p, dtype=float)) for p in data["P"]),
            q=tuple(np.atleast_1d(np.asarray(q, dtype=float)) for q in data["q"]),
            sigma_pi=tuple(
                np.atleast_2d(np.asarray(s, dtype=float))
                for s in data["sigma_pi"]),
        )


@dataclass(frozen=True, eq=False)
class PriorSequence(ISerializable):

    priors: Tuple[Gaussian, ...]

    @classmethod
    def constant(cls, prior: Gaussian, T: int) -> "PriorSequence":
        return cls(tuple(prior for _ in range(T)))

    @property
    def T(self) -> int:
        return len(self.priors)

    def __len__(self) -> int:
        return len(self.priors)

    def __getitem__(self, k: int) -> Gaussian:
        return self.priors[k]

    def __iter__(self) -> Iterator[Gaussian]:
        return iter(self.priors)

    def to_dict(self) -> Dict[str, Any]:
        return {"T": self.T, "priors": [g.to_dict() for g in self.priors]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "PriorSequence":
        return cls(tuple(Gaussian.from_dict(g) for g in data["priors"]))
