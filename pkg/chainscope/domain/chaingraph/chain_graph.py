"""The epsilon-transition graph of a system over a grid."""

from dataclasses import dataclass
from typing import Hashable, List, Sequence, Tuple

import numpy as np
from scipy import sparse

from ..ifs.system import IFSystem
from ..ifs.word import PseudoOrbit
from ..shared.base_entity import DomainEvent, Entity
from ..shared.errors import DomainError
from ..space.grid import Grid
from .events import EmptyGraphWarning, SparseGraphWarning
from .slack_mode import SlackMode


@dataclass(frozen=True)
class GraphKey:
    """Everything a graph is a pure function of."""

    system: IFSystem
    grid: Hashable
    epsilon: float
    mode: SlackMode


class ChainGraph(Entity):
    """Directed graph on boxes: ``i -> j`` iff some ``f_s(center(i))`` lies
    strictly within ``epsilon + slack_s`` of ``center(j)``.

    Adjacency is stored per symbol as boolean CSR matrices; the union
    matrix answers reachability questions.
    """

    def __init__(
        self,
        system: IFSystem,
        grid: Grid,
        epsilon: float,
        mode: SlackMode,
        symbol_adjacency: Sequence[sparse.csr_matrix],
        slacks: Sequence[float],
    ):
        super().__init__(GraphKey(system, grid.key, float(epsilon), mode))
        if len(symbol_adjacency) != system.n_symbols:
            raise DomainError("one adjacency matrix per symbol is required")
        self._system = system
        self._grid = grid
        self._epsilon = float(epsilon)
        self._mode = mode
        self._symbol_adjacency = tuple(m.tocsr() for m in symbol_adjacency)
        self._slacks = tuple(float(s) for s in slacks)
        union = self._symbol_adjacency[0].astype(np.int32)
        for m in self._symbol_adjacency[1:]:
            union = union + m.astype(np.int32)
        union = (union > 0).tocsr()
        union.sort_indices()
        self._adjacency = union

        if mode.is_strict and self._epsilon < grid.diameter:
            self._raise_event(SparseGraphWarning(
                f"epsilon {self._epsilon!r} is below the box diameter {grid.diameter!r}; "
                "the graph may miss chains and conclusions can be vacuous"
            ))
        if self.n_edges == 0:
            self._raise_event(EmptyGraphWarning(
                f"graph at epsilon {self._epsilon!r} on {grid.n_boxes} boxes has no edges"
            ))

    def record(self, event: DomainEvent) -> None:
        """Attach a warning found by a later analysis of this graph."""
        self._raise_event(event)

    @property
    def system(self) -> IFSystem:
        return self._system

    @property
    def grid(self) -> Grid:
        return self._grid

    @property
    def epsilon(self) -> float:
        return self._epsilon

    @property
    def mode(self) -> SlackMode:
        return self._mode

    @property
    def slacks(self) -> Tuple[float, ...]:
        return self._slacks

    @property
    def tolerance(self) -> float:
        """Chain tolerance every edge satisfies."""
        return self._epsilon + max(self._slacks)

    @property
    def adjacency(self) -> sparse.csr_matrix:
        return self._adjacency

    @property
    def symbol_adjacency(self) -> Tuple[sparse.csr_matrix, ...]:
        return self._symbol_adjacency

    @property
    def n_boxes(self) -> int:
        return self._grid.n_boxes

    @property
    def n_edges(self) -> int:
        return int(self._adjacency.nnz)

    def edges(self) -> Tuple[np.ndarray, np.ndarray]:
        """Sources and targets in row-major order."""
        coo = self._adjacency.tocoo()
        order = np.lexsort((coo.col, coo.row))
        return coo.row[order].astype(np.int64), coo.col[order].astype(np.int64)

    def edge_labels(self) -> List[Tuple[int, ...]]:
        """Realizing symbols for every edge, aligned with ``edges()``."""
        rows, cols = self.edges()
        if rows.size == 0:
            return []
        hits = np.stack([
            np.asarray(m[rows, cols]).ravel().astype(bool) for m in self._symbol_adjacency
        ], axis=1)
        return [tuple(int(s) for s in np.flatnonzero(row)) for row in hits]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adjacency[u, v])

    def labels(self, u: int, v: int) -> Tuple[int, ...]:
        return tuple(s for s, m in enumerate(self._symbol_adjacency) if m[u, v])

    def successors(self, u: int) -> np.ndarray:
        start, stop = self._adjacency.indptr[u], self._adjacency.indptr[u + 1]
        return self._adjacency.indices[start:stop].astype(np.int64)

    def restricted(self, boxes: Sequence[int]) -> sparse.csr_matrix:
        """Adjacency of the subgraph induced on ``boxes`` (in the given order)."""
        boxes = np.asarray(boxes, dtype=np.int64)
        return self._adjacency[boxes][:, boxes].tocsr()

    def path_to_chain(self, path: Sequence[int]) -> PseudoOrbit:
        """Decode a box path into the pseudo-orbit of its centers."""
        if len(path) == 0:
            raise DomainError("a path needs at least one box")
        for b in path:
            if not 0 <= int(b) < self.n_boxes:
                raise DomainError(f"box {b} outside 0..{self.n_boxes - 1}")
        for u, v in zip(path[:-1], path[1:]):
            if not self.has_edge(int(u), int(v)):
                raise DomainError(f"{u} -> {v} is not an edge of the graph")
        points = tuple(self._grid.center(int(b)) for b in path)
        return PseudoOrbit(points, self.tolerance)

    def describe(self) -> dict:
        return {
            "epsilon": self._epsilon,
            "mode": self._mode.describe(),
            "slack": max(self._slacks),
            "n_boxes": self.n_boxes,
            "n_edges": self.n_edges,
        }
