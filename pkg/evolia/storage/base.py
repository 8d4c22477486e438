import abc
from typing import Iterable, Iterator, List, Union

from ..jobs import Report


class ReportStorage(abc.ABC):
    """Machine reports keyed by the hash of the algebra they describe."""

    @abc.abstractmethod
    def get(self, keys: Union[str, List[str]]) -> List[Report]:
        ...

    @abc.abstractmethod
    def put(self, reports: Iterable[Report]):
        pass

    @abc.abstractmethod
    def update(self, reports: Iterable[Report]):
        pass

    @abc.abstractmethod
    def delete(self, keys: List[str]):
        pass

    @abc.abstractmethod
    def clear(self):
        pass

    @abc.abstractmethod
    def keys(self) -> List[str]:
        ...

    @property
    @abc.abstractmethod
    def size(self) -> int:
        ...

    @abc.abstractmethod
    def batched_iterator(self, batch_size: int = 1) -> Iterator[List[Report]]:
        ...

    def close(self):
        pass
