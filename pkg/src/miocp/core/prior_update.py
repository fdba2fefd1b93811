"""State moments under an affine Gaussian policy and the prior that is optimal for it."""
from typing import List, Optional

import numpy as np
from scipy.linalg import solve_triangular

from ..errors import DimensionMismatchError, NotPositiveDefiniteError
from ..models.gaussian_model import Gaussian
from ..models.moments_model import StateMoments
from ..models.problem_model import AffinePolicy, PriorSequence, ProblemSpec
from .linalg import is_positive_definite, logdet_spd, symmetrize
from .problem import ensure_validated


def check_policy(spec: ProblemSpec, policy: AffinePolicy):
    if policy.T != spec.T:
        raise DimensionMismatchError(
            f"policy has {policy.T} steps, expected T={spec.T}")
    n, m = spec.n, spec.m
    for k, (P, q, s_pi) in enumerate(zip(policy.P, policy.q, policy.sigma_pi)):
        if P.shape != (m, n) or q.shape != (m, ) or s_pi.shape != (m, m):
            raise DimensionMismatchError(
                f"policy step k={k} has shapes P{P.shape} q{q.shape} "
                f"sigma_pi{s_pi.shape}, expected m={m}, n={n}")
        if not is_positive_definite(s_pi):
            raise NotPositiveDefiniteError(f"policy sigma_pi not PD at k={k}")


def propagate_moments(spec: ProblemSpec, policy: AffinePolicy) -> StateMoments:
    """mu_{k+1} = (A+BP) mu_k + B q,  S_{k+1} = (A+BP) S_k (A+BP)' + B S_pi B' + S_w."""
    spec = ensure_validated(spec)
    check_policy(spec, policy)
    mu: List[np.ndarray] = [np.array(spec.mu_ini, dtype=float)]
    sigma: List[np.ndarray] = [symmetrize(np.array(spec.sigma_ini, dtype=float))]
    for k in range(spec.T):
        A, B = spec.A[k], spec.B[k]
        P, q, s_pi = policy.step(k)
        closed = A + B @ P
        mu.append(closed @ mu[k] + B @ q)
        sigma.append(
            symmetrize(closed @ sigma[k] @ closed.T + B @ s_pi @ B.T +
                       spec.sigma_w[k]))
    return StateMoments(tuple(mu), tuple(sigma))


def input_marginals(spec: ProblemSpec, policy: AffinePolicy,
                    moments: StateMoments) -> PriorSequence:
    """Marginal law of u_k: N(P mu_x + q, S_pi + P S_x P')."""
    priors = []
    for k in range(spec.T):
        P, q, s_pi = policy.step(k)
        priors.append(
            Gaussian(P @ moments.mu_x[k] + q,
                     symmetrize(s_pi + P @ moments.sigma_x[k] @ P.T)))
    return PriorSequence(tuple(priors))


def optimal_prior(spec: ProblemSpec,
                  policy: AffinePolicy,
                  moments: Optional[StateMoments] = None) -> PriorSequence:
    if moments is None:
        moments = propagate_moments(spec, policy)
    return input_marginals(spec, policy, moments)


def expected_kl(policy: AffinePolicy, moments: StateMoments, prior: PriorSequence,
                k: int) -> float:
    """E_x[D_KL(pi_k(.|x) || rho_k)] for x ~ N(mu_x_k, S_x_k), in closed form:

    1/2 [log|S_rho|/|S_pi| - m + Tr(S_rho^-1 S_pi) + Tr(S_rho^-1 P S_x P')
         + |mu_rho - (P mu_x + q)|^2_{S_rho^-1}]
    """
    P, q, s_pi = policy.step(k)
    rho = prior[k]
    L = rho.chol
    Lx = np.linalg.cholesky(moments.sigma_x[k])
    whitened_pi = solve_triangular(L, np.linalg.cholesky(s_pi), lower=True,
                                   check_finite=False)
    whitened_spread = solve_triangular(L, P @ Lx, lower=True, check_finite=False)
    whitened_diff = solve_triangular(L, rho.mean - (P @ moments.mu_x[k] + q),
                                     lower=True, check_finite=False)
    value = 0.5 * (rho.logdet - logdet_spd(s_pi) - rho.dim +
                   float(np.sum(whitened_pi**2)) +
                   float(np.sum(whitened_spread**2)) +
                   float(whitened_diff @ whitened_diff))
    return max(value, 0.0)
