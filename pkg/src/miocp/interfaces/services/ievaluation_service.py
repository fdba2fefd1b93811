from abc import abstractmethod

from ...models.api_model import ToolResponse
from ...models.run_model import RunManifest
from .ibase_service import IService


class IEvaluationService(IService):

    @abstractmethod
    def evaluate(self, manifest: RunManifest) -> ToolResponse:
        pass
