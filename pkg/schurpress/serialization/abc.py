from abc import ABC, abstractmethod
from typing import Any


class JSONSerializable(ABC):
    @abstractmethod
    def __json__(self) -> Any: ...
