from .evaluation_service import EvaluationService
from .simulation_service import SimulationService
from .solve_service import SolveService
from .sweep_service import SweepService

__all__ = [
    "EvaluationService",
    "SimulationService",
    "SolveService",
    "SweepService",
]
