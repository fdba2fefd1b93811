from .api_model import ToolResponse
from .event_model import (
    BaseEvent,
    IterationCompleted,
    RolloutFinished,
    SolveFinished,
    SolveStarted,
)
from .gaussian_model import Gaussian
from .moments_model import StateMoments
from .objective_model import ObjectiveBreakdown
from .problem_model import AffinePolicy, PriorSequence, ProblemSpec
from .rollout_model import EmpiricalMoments, RolloutBatch
from .run_model import Command, RunManifest
from .solver_model import SolveConfig, SolveTrace
from .synthesis_model import PolicyGaussianPieces, RiccatiSolution

__all__ = [
    # api_model
    "ToolResponse",
    # event_model
    "BaseEvent",
    "IterationCompleted",
    "RolloutFinished",
    "SolveFinished",
    "SolveStarted",
    # gaussian_model
    "Gaussian",
    # moments_model
    "StateMoments",
    # objective_model
    "ObjectiveBreakdown",
    # problem_model
    "AffinePolicy",
    "PriorSequence",
    "ProblemSpec",
    # rollout_model
    "EmpiricalMoments",
    "RolloutBatch",
    # run_model
    "Command",
    "RunManifest",
    # solver_model
    "SolveConfig",
    "SolveTrace",
    # synthesis_model
    "PolicyGaussianPieces",
    "RiccatiSolution",
]
