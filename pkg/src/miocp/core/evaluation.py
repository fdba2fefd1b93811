"""Exact evaluation of J(pi, rho) for Gaussian policies, priors and states."""
from typing import Optional

import numpy as np

from ..models.moments_model import StateMoments
from ..models.objective_model import ObjectiveBreakdown
from ..models.problem_model import AffinePolicy, PriorSequence, ProblemSpec
from .linalg import logdet_spd, symmetrize
from .prior_update import check_policy, expected_kl, propagate_moments
from .problem import check_prior, ensure_validated


def mutual_information(policy: AffinePolicy, moments: StateMoments, k: int) -> float:
    """I(x_k; u_k) = 1/2 log(|S_pi + P S_x P'| / |S_pi|)."""
    P, _, s_pi = policy.step(k)
    spread = symmetrize(s_pi + P @ moments.sigma_x[k] @ P.T)
    return max(0.5 * (logdet_spd(spread) - logdet_spd(s_pi)), 0.0)


def quadratic_step_cost(spec: ProblemSpec, policy: AffinePolicy,
                        moments: StateMoments, k: int) -> float:
    P, q, s_pi = policy.step(k)
    R = spec.R[k]
    mu_u = P @ moments.mu_x[k] + q
    sigma_u = s_pi + P @ moments.sigma_x[k] @ P.T
    return 0.5 * (float(mu_u @ R @ mu_u) + float(np.trace(R @ sigma_u)))


def terminal_cost(spec: ProblemSpec, moments: StateMoments) -> float:
    diff = moments.mu_x[-1] - spec.mu_fin
    return 0.5 * (float(diff @ spec.F @ diff) +
                  float(np.trace(spec.F @ moments.sigma_x[-1])))


def evaluate_objective(spec: ProblemSpec,
                       policy: AffinePolicy,
                       prior: PriorSequence,
                       moments: Optional[StateMoments] = None) -> ObjectiveBreakdown:
    """J(pi, rho) = sum_k E[1/2 |u_k|^2_R + eps KL(pi_k || rho_k)] + E[1/2 |x_T - mu_fin|^2_F].

    ``moments`` may be passed when already propagated for ``policy``.
    """
    spec = ensure_validated(spec)
    check_policy(spec, policy)
    check_prior(spec, prior)
    if moments is None:
        moments = propagate_moments(spec, policy)

    per_step = []
    information = []
    for k in range(spec.T):
        per_step.append((quadratic_step_cost(spec, policy, moments, k),
                         expected_kl(policy, moments, prior, k)))
        information.append(mutual_information(policy, moments, k))

    quadratic = float(sum(quad for quad, _ in per_step))
    kl = spec.epsilon * float(sum(div for _, div in per_step))
    terminal = terminal_cost(spec, moments)
    return ObjectiveBreakdown(
        quadratic_cost=quadratic,
        kl_cost=kl,
        terminal_cost=terminal,
        total=quadratic + kl + terminal,
        per_step=tuple(per_step),
        per_step_mutual_information=tuple(information),
    )
