from abc import ABC, abstractmethod
from typing import Any, Dict, Type, TypeVar

T = TypeVar('T', bound='ISerializable')


class ISerializable(ABC):

    @abstractmethod
    def to_dict(self) -> Dict[str, Any]:
        pass

    @classmethod
    @abstractmethod
    def from_dict(cls: Type[T], data: Dict[str, Any]) -> T:
        pass
