import inspect
import logging
from typing import Dict, List, Optional

from .core.event_bus import EventBus
from .interfaces import IEventBus, IService
from .models import Command, RunManifest, ToolResponse
from .services import EvaluationService, SimulationService, SolveService, SweepService

logger = logging.getLogger(__name__)

# command -> (service name, method name)
ROUTES = {
    Command.SOLVE: ("solve", "solve"),
    Command.SIMULATE: ("simulate", "simulate"),
    Command.EVALUATE: ("evaluate", "evaluate"),
    Command.SWEEP: ("sweep", "sweep"),
}


class ExperimentFacade:
    """Single entry point dispatching a RunManifest to the service of its command."""

    def __init__(self, services: Dict[str, IService],
                 event_bus: Optional[IEventBus] = None):
        self._services = services
        self.event_bus = event_bus

        for name, service in self._services.items():
            if hasattr(self, name):
                raise AttributeError(
                    f"Service name '{name}' conflicts with an existing ExperimentFacade attribute."
                )
            setattr(self, name, service)

    @classmethod
    def create(cls, event_bus: Optional[IEventBus] = None) -> "ExperimentFacade":
        event_bus = event_bus or EventBus()
        solve = SolveService(event_bus)
        simulate = SimulationService(solve, event_bus)
        return cls(
            {
                "solve": solve,
                "simulate": simulate,
                "evaluate": EvaluationService(),
                "sweep": SweepService(solve, simulate),
            }, event_bus)

    def list_services(self) -> Dict[str, str]:
        descriptions = {}
        for name, service in self._services.items():
            doc = inspect.getdoc(service) or f"Runs the '{name}' command."
            descriptions[name] = doc.split('\n')[0]
        return descriptions

    def commands(self) -> List[str]:
        return [command.value for command in ROUTES if ROUTES[command][0] in self._services]

    def execute(self, manifest: RunManifest) -> ToolResponse:
        try:
            service_name, method = ROUTES[manifest.command]
            service = self._services.get(service_name)
            if not service:
                return ToolResponse.failure(
                    f"No service registered for '{manifest.command.value}'")
            return getattr(service, method)(manifest)
        except ValueError as e:
            return ToolResponse.failure(str(e))
        except TypeError as e:
            return ToolResponse.failure(
                f"Invalid arguments for {manifest.command.value}: {e}")
        except Exception as e:
            logger.exception("Facade: '%s' failed", manifest.command.value)
            return ToolResponse.failure(
                f"An unexpected error occurred while executing '{manifest.command.value}': {e}")

    def __repr__(self) -> str:
        return f"ExperimentFacade(services={list(self._services.keys())})"
