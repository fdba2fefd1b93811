import uuid
from dataclasses import dataclass, field
from datetime import datetime


@dataclass
class BaseEvent:

    timestamp: datetime = field(default_factory=datetime.now)
    event_id: uuid.UUID = field(default_factory=uuid.uuid4)


@dataclass(kw_only=True)
class SolveStarted(BaseEvent):
    horizon: int
    epsilon: float
    max_iters: int


@dataclass(kw_only=True)
class IterationCompleted(BaseEvent):
    iteration: int
    objective_total: float
    prior_step_w2: float


@dataclass(kw_only=True)
class SolveFinished(BaseEvent):
    iterations_run: int
    converged: bool
    objective_total: float


@dataclass(kw_only=True)
class RolloutFinished(BaseEvent):
    num_paths: int
    seed: int
