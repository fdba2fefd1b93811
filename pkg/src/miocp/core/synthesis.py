"""Optimal policy for a fixed prior.

The backward pass runs the prior-regularized Riccati recursion

    M_k    = R_k + B_k' Pi_{k+1} B_k
    Pi_k   = A_k' Pi_{k+1} A_k - G_k (M_k + eps S_rho_k^-1)^-1 G_k'     G_k = A_k' Pi_{k+1} B_k
    r_k    = A_k^-1 r_{k+1} - eps Pi_k^-1 G_k M_k^-1 (S_rho_k + S_Q_k)^-1 mu_rho_k
    S_Q_k  = eps M_k^-1

with Pi_T = F and r_T = mu_fin. The policy is the normalized product of the
prior and N(mu_Q_k(x), S_Q_k), stored in affine form (P_k, q_k, S_pi_k).
"""
from typing import List, Optional, Tuple

import numpy as np

from ..errors import DimensionMismatchError, NotPositiveDefiniteError, NumericalError
from ..models.gaussian_model import Gaussian
from ..models.problem_model import AffinePolicy, PriorSequence, ProblemSpec
from ..models.synthesis_model import PolicyGaussianPieces, RiccatiSolution
from .gaussian import sqrtm_psd
from .linalg import (
    PSD_TOLERANCE,
    clamp_psd,
    factored_solve,
    is_positive_definite,
    spd_factor,
    spd_solve,
    symmetrize,
)
from .problem import check_prior, ensure_validated

RICCATI_FORMS = ("standard", "woodbury")


def woodbury_step_check(Pi_next: np.ndarray, spec: ProblemSpec, k: int,
                        prior_k: Gaussian) -> np.ndarray:
    """One Riccati step in the square-root form

        A' Pi^1/2 (I + Pi^1/2 B (eps S_rho^-1 + R)^-1 B' Pi^1/2)^-1 Pi^1/2 A

    which only needs Pi_{k+1} to be PSD.
    """
    A, B, R = spec.A[k], spec.B[k], spec.R[k]
    root = sqrtm_psd(Pi_next)
    rho_precision = spd_solve(prior_k.cov, np.eye(prior_k.dim))
    inner = symmetrize(spec.epsilon * rho_precision + R)
    X = root @ B
    middle = np.eye(root.shape[0]) + X @ spd_solve(inner, X.T)
    RA = root @ A
    return symmetrize(RA.T @ spd_solve(symmetrize(middle), RA))


def _backward_pass(spec: ProblemSpec,
                   prior: Optional[PriorSequence],
                   form: str = "standard"
                   ) -> Tuple[RiccatiSolution, PolicyGaussianPieces]:
    """Shared recursion. ``prior=None`` runs the plain Riccati equation
    (no eps S_rho^-1 term, r_k = A_k^-1 r_{k+1})."""
    if form not in RICCATI_FORMS:
        raise ValueError(f"unknown Riccati form '{form}', expected one of {RICCATI_FORMS}")
    T, eps = spec.T, spec.epsilon
    Pi: List[np.ndarray] = [np.empty(0)] * (T + 1)
    r: List[np.ndarray] = [np.empty(0)] * (T + 1)
    Gamma: List[np.ndarray] = [np.empty(0)] * T
    gain: List[np.ndarray] = [np.empty(0)] * T
    offset: List[np.ndarray] = [np.empty(0)] * T
    sigma_Q: List[np.ndarray] = [np.empty(0)] * T

    Pi[T] = np.array(spec.F, dtype=float)
    r[T] = np.array(spec.mu_fin, dtype=float)

    for k in reversed(range(T)):
        A, B, R = spec.A[k], spec.B[k], spec.R[k]
        Pi_next, r_next = Pi[k + 1], r[k + 1]
        m = B.shape[1]

        PB = Pi_next @ B
        G = A.T @ PB
        APA = A.T @ Pi_next @ A
        M = symmetrize(R + B.T @ PB)
        try:
            M_factor = spd_factor(M)
        except NotPositiveDefiniteError as e:
            raise NumericalError("R_k + B_k' Pi_{k+1} B_k not PD", k=k) from e

        gamma_k = clamp_psd(APA - G @ factored_solve(M_factor, G.T))
        Gamma[k] = gamma_k

        if prior is None:
            Pi_k = gamma_k
        elif form == "woodbury":
            Pi_k = clamp_psd(woodbury_step_check(Pi_next, spec, k, prior[k]))
        else:
            rho = prior[k]
            rho_precision = factored_solve((rho.chol, True), np.eye(m))
            inner = symmetrize(M + eps * rho_precision)
            try:
                correction = G @ spd_solve(inner, G.T)
            except NotPositiveDefiniteError as e:
                raise NumericalError(
                    "R_k + B_k' Pi_{k+1} B_k + eps S_rho_k^-1 not PD", k=k) from e
            Pi_k = clamp_psd(APA - correction, PSD_TOLERANCE)
        Pi[k] = Pi_k

        try:
            A_inv_r = np.linalg.solve(A, r_next)
        except np.linalg.LinAlgError as e:
            raise NumericalError("A_k is singular, r_k needs A_k invertible",
                                 k=k) from e

        sQ = symmetrize(eps * factored_solve(M_factor, np.eye(m)))
        sigma_Q[k] = sQ
        gain[k] = -factored_solve(M_factor, PB.T @ A)
        offset[k] = factored_solve(M_factor, PB.T @ r_next)

        r_k = A_inv_r
        if prior is not None and np.any(prior[k].mean):
            rho = prior[k]
            w = factored_solve(M_factor, spd_solve(symmetrize(rho.cov + sQ), rho.mean))
            try:
                r_k = A_inv_r - eps * spd_solve(Pi_k, G @ w)
            except NotPositiveDefiniteError as e:
                raise NumericalError(
                    "Pi_k is singular; invertible A_k guarantees Pi_k > 0", k=k) from e
        r[k] = r_k

    return (RiccatiSolution(tuple(Pi), tuple(r), tuple(Gamma)),
            PolicyGaussianPieces(tuple(gain), tuple(offset), tuple(sigma_Q)))


def solve_riccati(spec: ProblemSpec,
                  prior: PriorSequence,
                  form: str = "standard") -> RiccatiSolution:
    """Backward recursion for (Pi_k, r_k, Gamma_k) given the prior sequence.

    ``form="woodbury"`` evaluates Pi_k in the square-root form, usable when
    Pi_{k+1} is close to singular.
    """
    spec = ensure_validated(spec)
    check_prior(spec, prior)
    riccati, _ = _backward_pass(spec, prior, form)
    return riccati


def plain_riccati(spec: ProblemSpec) -> RiccatiSolution:
    """Riccati recursion of the uniform-prior limit; Gamma equals Pi[:T]."""
    spec = ensure_validated(spec)
    riccati, _ = _backward_pass(spec, None)
    return riccati


def policy_gaussian_pieces(spec: ProblemSpec,
                           riccati: RiccatiSolution) -> PolicyGaussianPieces:
    spec = ensure_validated(spec)
    if riccati.T != spec.T:
        raise DimensionMismatchError(
            f"Riccati solution has {riccati.T} steps, expected T={spec.T}")
    gain, offset, sigma_Q = [], [], []
    for k in range(spec.T):
        A, B, R = spec.A[k], spec.B[k], spec.R[k]
        PB = riccati.Pi[k + 1] @ B
        M_factor = spd_factor(symmetrize(R + B.T @ PB))
        gain.append(-factored_solve(M_factor, PB.T @ A))
        offset.append(factored_solve(M_factor, PB.T @ riccati.r[k + 1]))
        sigma_Q.append(
            symmetrize(spec.epsilon * factored_solve(M_factor, np.eye(B.shape[1]))))
    return PolicyGaussianPieces(tuple(gain), tuple(offset), tuple(sigma_Q))


def _combine(prior: PriorSequence, pieces: PolicyGaussianPieces) -> AffinePolicy:
    """Product of rho_k and N(gain x + offset, S_Q) in affine form.

    With S = S_rho + S_Q:  P = S_rho S^-1 gain,  q = S_Q S^-1 mu_rho + S_rho S^-1 offset,
    S_pi = S_rho S^-1 S_Q.
    """
    P, q, sigma_pi = [], [], []
    for k, (rho, (gain, offset)) in enumerate(zip(prior, pieces.mu_Q_affine)):
        sQ = pieces.sigma_Q[k]
        S_factor = spd_factor(symmetrize(rho.cov + sQ))
        # S^-1 S_rho, transposed gives S_rho S^-1
        W = factored_solve(S_factor, rho.cov).T
        V = factored_solve(S_factor, sQ).T
        P.append(W @ gain)
        q.append(V @ rho.mean + W @ offset)
        s_pi = symmetrize(W @ sQ)
        if not is_positive_definite(s_pi):
            raise NumericalError("policy covariance lost positive definiteness", k=k)
        sigma_pi.append(s_pi)
    return AffinePolicy(tuple(P), tuple(q), tuple(sigma_pi))


def optimal_policy(spec: ProblemSpec, prior: PriorSequence) -> AffinePolicy:
    spec = ensure_validated(spec)
    check_prior(spec, prior)
    _, pieces = _backward_pass(spec, prior)
    return _combine(prior, pieces)


def meocp_policy(spec: ProblemSpec) -> AffinePolicy:
    """Maximum entropy policy N(mu_Q_hat_k(x), S_Q_hat_k) of the plain Riccati recursion."""
    spec = ensure_validated(spec)
    _, pieces = _backward_pass(spec, None)
    for k, sQ in enumerate(pieces.sigma_Q):
        if not is_positive_definite(sQ):
            raise NumericalError("policy covariance lost positive definiteness", k=k)
    return AffinePolicy(pieces.gain, pieces.offset, pieces.sigma_Q)
