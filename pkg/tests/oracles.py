"""Brute-force references for scalar instances (n = m = 1, T <= 2).

Everything here is plain arithmetic on floats or numpy arrays broadcast over
search grids; nothing calls into the miocp numerics.
"""
import itertools
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from miocp.models import AffinePolicy, PriorSequence, ProblemSpec

MAX_GRID_POINTS = 10**6

StepPolicy = Tuple[float, float, float]
StepPrior = Tuple[float, float]


class GridBoundaryError(Exception):
    pass


@dataclass(frozen=True)
class ScalarInstance:

    a: Tuple[float, ...]
    b: Tuple[float, ...]
    sigma_w: Tuple[float, ...]
    r: Tuple[float, ...]
    F: float
    epsilon: float
    mu_ini: float
    sigma_ini: float
    mu_fin: float

    def __post_init__(self):
        if not 1 <= len(self.a) <= 2:
            raise ValueError("scalar oracles support T = 1 or 2")

    @property
    def T(self) -> int:
        return len(self.a)

    @classmethod
    def from_spec(cls, spec: ProblemSpec) -> "ScalarInstance":
        if spec.n != 1 or spec.m != 1:
            raise ValueError("scalar oracles need n = m = 1")
        return cls(
            a=tuple(float(A[0, 0]) for A in spec.A),
            b=tuple(float(B[0, 0]) for B in spec.B),
            sigma_w=tuple(float(S[0, 0]) for S in spec.sigma_w),
            r=tuple(float(R[0, 0]) for R in spec.R),
            F=float(spec.F[0, 0]),
            epsilon=float(spec.epsilon),
            mu_ini=float(spec.mu_ini[0]),
            sigma_ini=float(spec.sigma_ini[0, 0]),
            mu_fin=float(spec.mu_fin[0]),
        )


def policy_steps(policy: AffinePolicy) -> Tuple[StepPolicy, ...]:
    return tuple((float(P[0, 0]), float(q[0]), float(s[0, 0]))
                 for P, q, s in zip(policy.P, policy.q, policy.sigma_pi))


def prior_steps(prior: PriorSequence) -> Tuple[StepPrior, ...]:
    return tuple((float(g.mean[0]), float(g.cov[0, 0])) for g in prior)


def scalar_objective(inst: ScalarInstance, policy: Sequence[StepPolicy],
                     prior: Sequence[StepPrior]):
    """J for a scalar instance; entries may be numpy arrays (evaluated elementwise)."""
    mx, vx = inst.mu_ini, inst.sigma_ini
    total = 0.0
    for k in range(inst.T):
        p, q, s = policy[k]
        mr, sr = prior[k]
        mu_u = p * mx + q
        var_u = s + p * p * vx
        total = total + 0.5 * inst.r[k] * (mu_u * mu_u + var_u)
        kl = 0.5 * (np.log(sr / s) - 1.0 + s / sr + p * p * vx / sr +
                    (mr - mu_u)**2 / sr)
        total = total + inst.epsilon * kl
        closed = inst.a[k] + inst.b[k] * p
        mx = closed * mx + inst.b[k] * q
        vx = closed * closed * vx + inst.b[k]**2 * s + inst.sigma_w[k]
    return total + 0.5 * inst.F * ((mx - inst.mu_fin)**2 + vx)


def scalar_moments(inst: ScalarInstance, policy: Sequence[StepPolicy]):
    mx, vx = inst.mu_ini, inst.sigma_ini
    means, variances = [mx], [vx]
    for k in range(inst.T):
        p, q, s = policy[k]
        closed = inst.a[k] + inst.b[k] * p
        mx = closed * mx + inst.b[k] * q
        vx = closed * closed * vx + inst.b[k]**2 * s + inst.sigma_w[k]
        means.append(mx)
        variances.append(vx)
    return means, variances


def _axis(low: float, high: float, step: float) -> np.ndarray:
    count = int(round((high - low) / step)) + 1
    return low + step * np.arange(count)


def _grid_argmin(values: np.ndarray, axes: Sequence[np.ndarray]) -> Tuple[Tuple[int, ...], Tuple[float, ...]]:
    index = np.unravel_index(int(np.nanargmin(values)), values.shape)
    return tuple(int(i) for i in index), tuple(float(ax[i]) for ax, i in zip(axes, index))


def _search(objective, bounds: Sequence[Tuple[float, float]], resolution: float,
            coarse: float, floor_ok: Sequence[bool]) -> Tuple[float, ...]:
    """Coarse grid over ``bounds``, then a fine grid of spacing ``resolution``
    around the coarse minimizer. A coarse minimizer on the outer boundary raises,
    except on a lower bound flagged in ``floor_ok``."""
    axes = [_axis(lo, hi, coarse) for lo, hi in bounds]
    if np.prod([len(ax) for ax in axes]) > MAX_GRID_POINTS:
        raise ValueError("coarse grid too large")
    index, point = _grid_argmin(objective(*np.meshgrid(*axes, indexing="ij")), axes)
    for d, (i, ax) in enumerate(zip(index, axes)):
        if (i == 0 and not floor_ok[d]) or i == len(ax) - 1:
            raise GridBoundaryError(
                f"minimizer {point} on the boundary of axis {d} {bounds[d]}; widen the bounds")

    fine_axes = []
    for (lo, hi), centre in zip(bounds, point):
        span = 1.5 * coarse
        fine_axes.append(_axis(max(lo, centre - span), min(hi, centre + span), resolution))
    if np.prod([len(ax) for ax in fine_axes]) > MAX_GRID_POINTS:
        raise ValueError("fine grid too large")
    _, fine_point = _grid_argmin(
        objective(*np.meshgrid(*fine_axes, indexing="ij")), fine_axes)
    return fine_point


def brute_force_policy(inst: ScalarInstance,
                       prior: Sequence[StepPrior],
                       resolution: float = 0.01,
                       gain_bounds: Tuple[float, float] = (-2.0, 2.0),
                       offset_bounds: Tuple[float, float] = (-2.0, 2.0),
                       variance_bounds: Tuple[float, float] = (0.01, 2.01),
                       variance_floor_ok: bool = False,
                       cycles: int = 10) -> Tuple[StepPolicy, ...]:
    """Grid minimizer of J over (P_k, q_k, S_pi_k) with the prior held fixed.

    Two-step instances are searched one step at a time, cycling until the
    minimizer stops moving.
    """
    bounds = (gain_bounds, offset_bounds, variance_bounds)
    floor_ok = (False, False, variance_floor_ok)
    current = [(0.0, 0.0, 1.0) for _ in range(inst.T)]
    for _ in range(cycles):
        previous = list(current)
        for k in reversed(range(inst.T)):

            def objective(p, q, s, k=k):
                steps = list(current)
                steps[k] = (p, q, s)
                return scalar_objective(inst, steps, prior)

            current[k] = _search(objective, bounds, resolution, 0.1, floor_ok)
        if current == previous:
            break
    return tuple(current)


def brute_force_prior(inst: ScalarInstance,
                      policy: Sequence[StepPolicy],
                      resolution: float = 0.01,
                      mean_bounds: Tuple[float, float] = (-5.0, 5.0),
                      variance_bounds: Tuple[float, float] = (0.05, 10.05),
                      ) -> Tuple[StepPrior, ...]:
    """Grid minimizer of J over (mu_rho_k, S_rho_k) with the policy held fixed.

    J separates across k in the prior, so each step is searched on its own.
    """
    base: list = [(0.0, 1.0) for _ in range(inst.T)]
    result = []
    for k in range(inst.T):

        def objective(mr, sr, k=k):
            steps = list(base)
            steps[k] = (mr, sr)
            return scalar_objective(inst, policy, steps)

        result.append(
            _search(objective, (mean_bounds, variance_bounds), resolution, 0.1,
                    (False, False)))
    return tuple(result)


def local_perturbations(seed: int, count: int,
                        magnitudes: Sequence[float] = (1e-2, 1e-1)):
    """Random signed perturbations of a (P, q, S_pi) triple."""
    rng = np.random.default_rng(seed)
    for _, magnitude in zip(range(count), itertools.cycle(magnitudes)):
        yield magnitude * rng.choice([-1.0, 1.0], size=3) * rng.uniform(0.5, 1.0, size=3)

