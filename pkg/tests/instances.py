"""Problem instances shared by the test suites."""
from typing import Optional

import numpy as np

from miocp.core.problem import validate
from miocp.models import Gaussian, PriorSequence, ProblemSpec


def scalar_spec(T=1, a=1.0, b=1.0, r=1.0, F=1.0, epsilon=1.0, mu_ini=0.0,
                sigma_ini=1.0, mu_fin=0.0, sigma_w=1e-12) -> ProblemSpec:
    return validate(
        ProblemSpec(
            T=T,
            A=tuple(np.array([[a]]) for _ in range(T)),
            B=tuple(np.array([[b]]) for _ in range(T)),
            sigma_w=tuple(np.array([[sigma_w]]) for _ in range(T)),
            R=tuple(np.array([[r]]) for _ in range(T)),
            F=np.array([[F]]),
            epsilon=epsilon,
            mu_ini=np.array([mu_ini]),
            sigma_ini=np.array([[sigma_ini]]),
            mu_fin=np.array([mu_fin]),
        ))


def scalar_prior(mean=0.0, var=1.0, T=1) -> PriorSequence:
    return PriorSequence.constant(Gaussian(np.array([mean]), np.array([[var]])), T)


def random_spd(rng: np.random.Generator, d: int, scale: float = 1.0) -> np.ndarray:
    X = rng.standard_normal((d, d))
    return scale * (X @ X.T / d + 0.5 * np.eye(d))


def random_invertible(rng: np.random.Generator, d: int) -> np.ndarray:
    Q, _ = np.linalg.qr(rng.standard_normal((d, d)))
    return Q @ np.diag(rng.uniform(0.6, 1.3, size=d))


def random_spec(rng: np.random.Generator, n: int, m: int, T: int,
                epsilon: Optional[float] = None) -> ProblemSpec:
    return validate(
        ProblemSpec(
            T=T,
            A=tuple(random_invertible(rng, n) for _ in range(T)),
            B=tuple(rng.standard_normal((n, m)) for _ in range(T)),
            sigma_w=tuple(random_spd(rng, n, 0.05) for _ in range(T)),
            R=tuple(random_spd(rng, m) for _ in range(T)),
            F=random_spd(rng, n, 2.0),
            epsilon=float(rng.uniform(0.1, 5.0)) if epsilon is None else epsilon,
            mu_ini=rng.standard_normal(n),
            sigma_ini=random_spd(rng, n, 0.5),
            mu_fin=rng.standard_normal(n),
        ))


def random_prior(rng: np.random.Generator, m: int, T: int) -> PriorSequence:
    return PriorSequence(
        tuple(Gaussian(rng.standard_normal(m), random_spd(rng, m)) for _ in range(T)))


def two_state_spec(T: int = 5, epsilon: float = 0.5) -> ProblemSpec:
    """Small fixed two-input instance used by the Monte Carlo checks."""
    return validate(
        ProblemSpec(
            T=T,
            A=tuple(np.array([[0.95, 0.1], [-0.05, 1.02]]) for _ in range(T)),
            B=tuple(np.array([[0.5, 0.0], [0.1, 0.4]]) for _ in range(T)),
            sigma_w=tuple(0.01 * np.eye(2) for _ in range(T)),
            R=tuple(np.eye(2) for _ in range(T)),
            F=2.0 * np.eye(2),
            epsilon=epsilon,
            mu_ini=np.array([1.0, -1.0]),
            sigma_ini=0.5 * np.eye(2),
            mu_fin=np.array([0.5, 0.5]),
        ))
