from abc import abstractmethod

from ...models.api_model import ToolResponse
from ...models.run_model import RunManifest
from .ibase_service import IService


class ISimulationService(IService):

    @abstractmethod
    def simulate(self, manifest: RunManifest) -> ToolResponse:
        pass
