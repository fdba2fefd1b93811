import logging
from collections import defaultdict
from typing import Callable, Dict, List, Type

from ..interfaces.ievent_bus import IEventBus
from ..models.event_model import BaseEvent

logger = logging.getLogger(__name__)


def _handler_name(handler: Callable) -> str:
    return getattr(handler, "__name__", type(handler).__name__)


class EventBus(IEventBus):
    """Synchronous publish/subscribe for solver and rollout progress.

    Handlers subscribed to ``BaseEvent`` receive every event. A failing
    handler is logged and never interrupts the publisher.
    """

    def __init__(self):
        self._subscribers: Dict[Type[BaseEvent],
                                List[Callable]] = defaultdict(list)

    def subscribe(self, event_type: Type[BaseEvent], handler: Callable):
        self._subscribers[event_type].append(handler)
        logger.debug("EventBus: '%s' subscribed to '%s'",
                     _handler_name(handler), event_type.__name__)

    def unsubscribe(self, event_type: Type[BaseEvent], handler: Callable):
        if event_type in self._subscribers:
            try:
                self._subscribers[event_type].remove(handler)
            except ValueError:
                return
            logger.debug("EventBus: '%s' unsubscribed from '%s'",
                         _handler_name(handler), event_type.__name__)

    def publish(self, event: BaseEvent):
        event_type = type(event)
        handlers = list(self._subscribers.get(event_type, ()))
        if event_type is not BaseEvent:
            handlers.extend(self._subscribers.get(BaseEvent, ()))
        for handler in handlers:
            try:
                handler(event)
            except Exception as e:
                logger.error("EventBus: handler '%s' failed for %s: %s",
                             _handler_name(handler), event_type.__name__, e)

    def clear(self):
        self._subscribers.clear()
