"""Seeded closed-loop rollouts and empirical statistics of the resulting paths.

Path p draws all of its noise from its own stream
``default_rng(SeedSequence(seed, spawn_key=(p,)))`` in the fixed order
x_0, then (u_k, w_k) for k = 0..T-1, so a batch depends only on
``(seed, num_paths)`` and never on how the paths are split across threads.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Tuple

import numpy as np
from scipy.linalg import solve_triangular

from ..config import Settings
from ..errors import DimensionMismatchError, RegressionError
from ..interfaces.ievent_bus import IEventBus
from ..models.event_model import RolloutFinished
from ..models.gaussian_model import Gaussian
from ..models.problem_model import AffinePolicy, PriorSequence, ProblemSpec
from ..models.rollout_model import EmpiricalMoments, RolloutBatch
from .gaussian import kl_divergence
from .prior_update import check_policy
from .problem import check_prior, ensure_validated

logger = logging.getLogger(__name__)

MIN_CHUNK = 256


def path_stream(seed: int, path_id: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(path_id, )))


def _draw_noise(seed: int, num_paths: int, width: int, threads: int) -> np.ndarray:
    noise = np.empty((num_paths, width))

    def fill(start: int, stop: int):
        for p in range(start, stop):
            noise[p] = path_stream(seed, p).standard_normal(width)

    chunk = max(MIN_CHUNK, -(-num_paths // max(threads, 1)))
    bounds = [(s, min(s + chunk, num_paths)) for s in range(0, num_paths, chunk)]
    if threads <= 1 or len(bounds) == 1:
        for start, stop in bounds:
            fill(start, stop)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for future in [pool.submit(fill, s, e) for s, e in bounds]:
                future.result()
    return noise


def rollout(spec: ProblemSpec,
            policy: AffinePolicy,
            num_paths: int,
            seed: int,
            threads: Optional[int] = None,
            event_bus: Optional[IEventBus] = None) -> RolloutBatch:
    """Simulate x_{k+1} = A_k x_k + B_k u_k + w_k with u_k ~ pi_k(.|x_k)."""
    spec = ensure_validated(spec)
    check_policy(spec, policy)
    if num_paths < 1:
        raise ValueError(f"num_paths must be positive, got {num_paths}")
    if seed < 0:
        raise ValueError(f"seed must be nonnegative, got {seed}")
    if threads is None:
        threads = Settings.from_env().threads

    T, n, m = spec.T, spec.n, spec.m
    noise = _draw_noise(seed, num_paths, n + T * (m + n), threads)

    paths = np.empty((num_paths, T + 1, n))
    inputs = np.empty((num_paths, T, m))
    x = spec.mu_ini + noise[:, :n] @ np.linalg.cholesky(spec.sigma_ini).T
    paths[:, 0] = x
    offset = n
    for k in range(T):
        P, q, s_pi = policy.step(k)
        z_u = noise[:, offset:offset + m]
        z_w = noise[:, offset + m:offset + m + n]
        offset += m + n
        u = x @ P.T + q + z_u @ np.linalg.cholesky(s_pi).T
        w = z_w @ np.linalg.cholesky(spec.sigma_w[k]).T
        x = x @ spec.A[k].T + u @ spec.B[k].T + w
        inputs[:, k] = u
        paths[:, k + 1] = x

    for array in (paths, inputs):
        array.setflags(write=False)
    logger.info("Rollout: %d paths, seed=%d, threads=%d", num_paths, seed, threads)
    if event_bus:
        event_bus.publish(RolloutFinished(num_paths=num_paths, seed=seed))
    return RolloutBatch(paths=paths, inputs=inputs, seed=seed)


def terminal_regression(batch: RolloutBatch,
                        coord_x: int = 0,
                        coord_y: int = 1) -> Tuple[float, float]:
    """Ordinary least squares of terminal coordinate ``coord_y`` on ``coord_x``."""
    n = batch.paths.shape[2]
    for coord in (coord_x, coord_y):
        if not 0 <= coord < n:
            raise DimensionMismatchError(
                f"coordinate {coord} out of range for {n}-dim states")
    if batch.num_paths < 2:
        raise RegressionError(
            f"terminal regression needs at least 2 paths, got {batch.num_paths}")
    x = batch.terminal_states[:, coord_x]
    y = batch.terminal_states[:, coord_y]
    if np.ptp(x) == 0.0:
        raise RegressionError(
            f"terminal coordinate {coord_x} has zero variance, slope undefined")
    xc = x - x.mean()
    slope = float(xc @ (y - y.mean()) / (xc @ xc))
    intercept = float(y.mean() - slope * x.mean())
    return slope, intercept


def empirical_moments(batch: RolloutBatch) -> EmpiricalMoments:
    if batch.num_paths < 2:
        raise ValueError("empirical covariances need at least 2 paths")

    def covariances(samples: np.ndarray) -> np.ndarray:
        centered = samples - samples.mean(axis=0)
        return np.einsum("pki,pkj->kij", centered, centered) / (samples.shape[0] - 1)

    return EmpiricalMoments(
        state_mean=batch.paths.mean(axis=0),
        state_cov=covariances(batch.paths),
        input_mean=batch.inputs.mean(axis=0),
        input_cov=covariances(batch.inputs),
        num_paths=batch.num_paths,
    )


def rollout_objective(spec: ProblemSpec, batch: RolloutBatch, policy: AffinePolicy,
                      prior: PriorSequence) -> Tuple[float, float]:
    """Monte Carlo estimate of J and its standard error.

    Per path: sampled quadratic and terminal costs plus eps times the exact
    KL(pi_k(.|x_k) || rho_k) at the sampled states.
    """
    spec = ensure_validated(spec)
    check_policy(spec, policy)
    check_prior(spec, prior)
    if batch.num_paths < 2:
        raise ValueError("a standard error needs at least 2 paths")

    cost = np.zeros(batch.num_paths)
    for k in range(spec.T):
        P, q, s_pi = policy.step(k)
        u = batch.inputs[:, k]
        cost += 0.5 * np.einsum("pi,ij,pj->p", u, spec.R[k], u)

        rho = prior[k]
        spread = kl_divergence(Gaussian(np.zeros(spec.m), s_pi),
                               Gaussian(np.zeros(spec.m), rho.cov))
        diff = rho.mean - (batch.paths[:, k] @ P.T + q)
        whitened = solve_triangular(rho.chol, diff.T, lower=True, check_finite=False)
        cost += spec.epsilon * (spread + 0.5 * np.sum(whitened**2, axis=0))

    terminal = batch.terminal_states - spec.mu_fin
    cost += 0.5 * np.einsum("pi,ij,pj->p", terminal, spec.F, terminal)
    return float(cost.mean()), float(cost.std(ddof=1) / np.sqrt(batch.num_paths))
