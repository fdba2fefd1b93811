from abc import abstractmethod

from ...models.api_model import ToolResponse
from ...models.run_model import RunManifest
from .ibase_service import IService


class ISweepService(IService):

    @abstractmethod
    def sweep(self, manifest: RunManifest) -> ToolResponse:
        pass
