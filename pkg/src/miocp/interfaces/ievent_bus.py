from abc import ABC, abstractmethod
from typing import Callable, Type

from ..models.event_model import BaseEvent


class IEventBus(ABC):

    @abstractmethod
    def subscribe(self, event_type: Type[BaseEvent], handler: Callable):
        pass

    @abstractmethod
    def unsubscribe(self, event_type: Type[BaseEvent], handler: Callable):
        pass

    @abstractmethod
    def publish(self, event: BaseEvent):
        pass

    @abstractmethod
    def clear(self):
        pass
