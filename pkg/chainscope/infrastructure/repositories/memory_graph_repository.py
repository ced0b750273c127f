"""In-memory graph cache, shared by every analysis of one run."""

from typing import Dict, List, Optional

from ...domain.chaingraph.chain_graph import ChainGraph, GraphKey
from ...domain.chaingraph.graph_repository import GraphRepository


class InMemoryGraphRepository(GraphRepository):
    """In-memory implementation of GraphRepository."""

    def __init__(self):
        self._graphs: Dict[GraphKey, ChainGraph] = {}

    def find(self, key: GraphKey) -> Optional[ChainGraph]:
        return self._graphs.get(key)

    def find_all(self) -> List[ChainGraph]:
        return list(self._graphs.values())

    def save(self, graph: ChainGraph) -> None:
        self._graphs[graph.id] = graph

    def clear(self) -> None:
        self._graphs.clear()

    def __len__(self) -> int:
        return len(self._graphs)
