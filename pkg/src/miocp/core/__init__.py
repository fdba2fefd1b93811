from .evaluation import evaluate_objective, mutual_information
from .event_bus import EventBus
from .gaussian import (
    entropy,
    kl_divergence,
    log_density,
    product,
    sample,
    sqrtm_psd,
    wasserstein2_sq,
)
from .montecarlo import (
    empirical_moments,
    rollout,
    rollout_objective,
    terminal_regression,
)
from .persistence import RunDirectory, load_policy, load_prior
from .prior_update import (
    expected_kl,
    input_marginals,
    optimal_prior,
    propagate_moments,
)
from .problem import (
    default_initial_prior,
    dump_spec,
    load_spec,
    spec_from_dict,
    spec_to_dict,
    two_state_experiment_spec,
    validate,
    with_epsilon,
)
from .solver import distance_to_final, prior_distance, solve
from .synthesis import (
    meocp_policy,
    optimal_policy,
    plain_riccati,
    policy_gaussian_pieces,
    solve_riccati,
    woodbury_step_check,
)

__all__ = [
    "evaluate_objective",
    "mutual_information",
    "EventBus",
    "entropy",
    "kl_divergence",
    "log_density",
    "product",
    "sample",
    "sqrtm_psd",
    "wasserstein2_sq",
    "empirical_moments",
    "rollout",
    "rollout_objective",
    "terminal_regression",
    "RunDirectory",
    "load_policy",
    "load_prior",
    "expected_kl",
    "input_marginals",
    "optimal_prior",
    "propagate_moments",
    "default_initial_prior",
    "dump_spec",
    "load_spec",
    "spec_from_dict",
    "spec_to_dict",
    "two_state_experiment_spec",
    "validate",
    "with_epsilon",
    "distance_to_final",
    "prior_distance",
    "solve",
    "meocp_policy",
    "optimal_policy",
    "plain_riccati",
    "policy_gaussian_pieces",
    "solve_riccati",
    "woodbury_step_check",
]
