from .ibase_service import IService
from .ievaluation_service import IEvaluationService
from .isimulation_service import ISimulationService
from .isolve_service import ISolveService
from .isweep_service import ISweepService

__all__ = [
    "IService",
    "IEvaluationService",
    "ISimulationService",
    "ISolveService",
    "ISweepService",
]
