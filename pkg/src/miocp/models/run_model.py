from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Optional, Tuple


class Command(Enum):

    SOLVE = "solve"
    SIMULATE = "simulate"
    EVALUATE = "evaluate"
    SWEEP = "sweep"


@dataclass(frozen=True)
class RunManifest:

    spec_path: Path
    command: Command
    output_dir: Path
    seed: int = 0
    num_paths: int = 1000
    max_iters: Optional[int] = None
    tol_prior_w2: Optional[float] = None
    tol_objective: Optional[float] = None
    epsilons: Tuple[float, ...] = field(default_factory=tuple)
    policy_path: Optional[Path] = None
    prior_path: Optional[Path] = None
