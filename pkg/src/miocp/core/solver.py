"""Alternating minimization of J over (policy, prior)."""
import logging
from typing import List, Optional, Sequence

from ..errors import MIOCPError, NumericalError
from ..interfaces.ievent_bus import IEventBus
from ..models.event_model import IterationCompleted, SolveFinished, SolveStarted
from ..models.objective_model import ObjectiveBreakdown
from ..models.problem_model import PriorSequence, ProblemSpec
from ..models.solver_model import SolveConfig, SolveTrace
from .evaluation import evaluate_objective
from .gaussian import wasserstein2_sq
from .prior_update import optimal_prior, propagate_moments
from .problem import check_prior, ensure_validated
from .synthesis import optimal_policy

logger = logging.getLogger(__name__)


def prior_distance(first: PriorSequence, second: PriorSequence) -> float:
    """sum_k W2^2(first_k, second_k)."""
    if len(first) != len(second):
        raise ValueError(
            f"prior sequences of different length: {len(first)} vs {len(second)}")
    return float(sum(wasserstein2_sq(p, q) for p, q in zip(first, second)))


def distance_to_final(prior_history: Sequence[PriorSequence]) -> List[float]:
    """sum_k W2^2(rho^(i), rho^(N)) for every visited prior, N the last one."""
    if not prior_history:
        return []
    final = prior_history[-1]
    return [prior_distance(prior, final) for prior in prior_history]


def solve(spec: ProblemSpec,
          initial_prior: PriorSequence,
          cfg: Optional[SolveConfig] = None,
          event_bus: Optional[IEventBus] = None) -> SolveTrace:
    """Alternate pi^(i) = optimal_policy(rho^(i)) and rho^(i+1) = optimal_prior(pi^(i)).

    Stops when sum_k W2^2(rho^(i+1), rho^(i)) < cfg.tol_prior_w2, when the
    decrease of J falls below cfg.tol_objective (if positive), or after
    cfg.max_iters iterations.
    """
    cfg = cfg or SolveConfig()
    spec = ensure_validated(spec)
    check_prior(spec, initial_prior)
    if event_bus:
        event_bus.publish(
            SolveStarted(horizon=spec.T, epsilon=spec.epsilon,
                         max_iters=cfg.max_iters))
    logger.debug("Solver: T=%d, epsilon=%g, max_iters=%d", spec.T,
                 spec.epsilon, cfg.max_iters)

    prior = initial_prior
    history: Optional[List[PriorSequence]] = [prior] if cfg.keep_history else None
    history_iterations: List[int] = [0] if cfg.keep_history else []
    objectives: List[ObjectiveBreakdown] = []
    steps: List[float] = []
    recorded: List[int] = []
    previous_total: Optional[float] = None
    converged = False
    iteration = 0

    for iteration in range(cfg.max_iters):
        try:
            policy = optimal_policy(spec, prior)
            moments = propagate_moments(spec, policy)
            objective = evaluate_objective(spec, policy, prior, moments)
            next_prior = optimal_prior(spec, policy, moments)
            step = prior_distance(next_prior, prior)
        except NumericalError as e:
            raise NumericalError(e.detail, iteration=iteration, k=e.k) from e
        except MIOCPError as e:
            raise NumericalError(str(e), iteration=iteration) from e

        if step < cfg.tol_prior_w2:
            converged = True
        elif (cfg.tol_objective > 0 and previous_total is not None
              and previous_total - objective.total < cfg.tol_objective):
            converged = True
        last = converged or iteration == cfg.max_iters - 1
        if history is not None and (last or (iteration + 1) % cfg.history_every == 0):
            history.append(next_prior)
            history_iterations.append(iteration + 1)

        if iteration % cfg.trace_every == 0 or last:
            objectives.append(objective)
            steps.append(step)
            recorded.append(iteration)
            if event_bus:
                event_bus.publish(
                    IterationCompleted(iteration=iteration,
                                       objective_total=objective.total,
                                       prior_step_w2=step))
        if last:
            break
        previous_total = objective.total
        prior = next_prior

    if converged:
        logger.info("Solver: ✓ converged after %d iterations (J=%.10g)",
                    iteration + 1, objective.total)
    else:
        logger.info("Solver: stopped at max_iters=%d (J=%.10g, last W2 step %.3e)",
                    cfg.max_iters, objective.total, step)
    if event_bus:
        event_bus.publish(
            SolveFinished(iterations_run=iteration + 1, converged=converged,
                          objective_total=objective.total))

    return SolveTrace(
        objective=tuple(objectives),
        prior_step_w2=tuple(steps),
        iterations_run=iteration + 1,
        converged=converged,
        final_policy=policy,
        final_prior=prior,
        next_prior=next_prior,
        iterations=tuple(recorded),
        history_iterations=tuple(history_iterations),
        prior_history=tuple(history) if history is not None else None,
    )
