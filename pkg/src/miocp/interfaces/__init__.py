from .iserializable import ISerializable
from .ievent_bus import IEventBus
from .services import (
    IEvaluationService,
    IService,
    ISimulationService,
    ISolveService,
    ISweepService,
)

__all__ = [
    "ISerializable",
    "IEventBus",
    "IEvaluationService",
    "IService",
    "ISimulationService",
    "ISolveService",
    "ISweepService",
]
