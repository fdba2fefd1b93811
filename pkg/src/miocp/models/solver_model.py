from dataclasses import dataclass, field
from typing import Optional, Tuple

from .objective_model import ObjectiveBreakdown
from .problem_model import AffinePolicy, PriorSequence


@dataclass(frozen=True)
class SolveConfig:
    """Stopping rules for the alternating minimization.

    ``tol_prior_w2`` bounds sum_k W2^2 between consecutive priors; ``tol_objective``
    bounds the decrease of J between iterations and is disabled at 0.
    With ``keep_history`` the solver retains rho^(i) for every i divisible by
    ``history_every`` plus the last computed prior.
    """

    max_iters: int = 100_000
    tol_prior_w2: float = 1e-10
    tol_objective: float = 0.0
    trace_every: int = 1
    keep_history: bool = False
    history_every: int = 1

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if self.tol_prior_w2 < 0 or self.tol_objective < 0:
            raise ValueError("tolerances must be nonnegative")
        if self.trace_every < 1:
            raise ValueError("trace_every must be >= 1")
        if self.history_every < 1:
            raise ValueError("history_every must be >= 1")


@dataclass(frozen=True, eq=False)
class SolveTrace:
    """Per-iteration record of a solve.

    Row i holds J(pi^(i), rho^(i)) and sum_k W2^2(rho^(i+1), rho^(i)).
    ``iterations`` holds the iteration index of each recorded row (every
    ``trace_every``-th iteration plus the last). ``final_policy`` and
    ``final_prior`` are the pair of the last row; ``next_prior`` is the
    optimal prior of ``final_policy``.
    """

    objective: Tuple[ObjectiveBreakdown, ...]
    prior_step_w2: Tuple[float, ...]
    iterations_run: int
    converged: bool
    final_policy: AffinePolicy
    final_prior: PriorSequence
    next_prior: PriorSequence
    iterations: Tuple[int, ...] = ()
    history_iterations: Tuple[int, ...] = ()
    prior_history: Optional[Tuple[PriorSequence, ...]] = field(default=None,
                                                               repr=False)

    @property
    def final_objective(self) -> ObjectiveBreakdown:
        return self.objective[-1]

    @property
    def totals(self) -> Tuple[float, ...]:
        return tuple(o.total for o in self.objective)
