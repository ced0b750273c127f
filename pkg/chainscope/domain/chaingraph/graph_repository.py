"""Graph repository interface."""

from abc import ABC, abstractmethod
from typing import List, Optional

from .chain_graph import ChainGraph, GraphKey


class GraphRepository(ABC):
    """Repository interface for built chain graphs."""

    @abstractmethod
    def find(self, key: GraphKey) -> Optional[ChainGraph]:
        """Find a graph by the inputs it was built from."""
        pass

    @abstractmethod
    def find_all(self) -> List[ChainGraph]:
        pass

    @abstractmethod
    def save(self, graph: ChainGraph) -> None:
        """Save a graph (create or replace)."""
        pass

    @abstractmethod
    def clear(self) -> None:
        pass
