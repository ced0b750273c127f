"""Construction of chain graphs from a system and a grid."""

from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy import sparse

from ..ifs.system import IFSystem
from ..shared.errors import DomainError, ResourceCapError
from ..space.grid import BoxGrid, Grid, PointGrid
from ..space.space_kind import Product
from .chain_graph import ChainGraph, GraphKey
from .graph_repository import GraphRepository
from .slack_mode import SlackMode

DEFAULT_CHUNK_SIZE = 4096
DEFAULT_MAX_PRODUCT_NODES = 1_000_000

# distance evaluations per chunk on point grids
_POINT_GRID_BUDGET = 1_000_000

EdgeBlock = Tuple[np.ndarray, np.ndarray]


def _box_grid_edges(grid: BoxGrid, images: np.ndarray, sources: np.ndarray, radius: float) -> EdgeBlock:
    if not grid.is_product:
        cand, keep = grid.axes[0].candidates(images, radius)
        counts = keep.sum(axis=1)
        return np.repeat(sources, counts), cand[keep]
    left, right = grid.axes
    c1, k1 = left.candidates(images[:, 0], radius)
    c2, k2 = right.candidates(images[:, 1], radius)
    # max metric: a target qualifies iff both coordinates do
    index = c1[:, :, None] * right.n + c2[:, None, :]
    keep = k1[:, :, None] & k2[:, None, :]
    counts = keep.reshape(keep.shape[0], -1).sum(axis=1)
    return np.repeat(sources, counts), index[keep]


def _point_grid_edges(grid: PointGrid, images: np.ndarray, sources: np.ndarray, radius: float) -> EdgeBlock:
    targets = grid.centers()
    d = grid.space.distance(images[:, None], targets[None, :])
    rows, cols = np.nonzero(d < radius)
    return sources[rows], targets[cols]


class ChainGraphBuilder:
    """Builds ``ChainGraph`` instances, optionally over a thread pool.

    Sources are split into chunks; each chunk yields an edge block and the
    blocks are merged in box order, so the result does not depend on the
    thread count.
    """

    def __init__(
        self,
        threads: int = 1,
        chunk_size: int = DEFAULT_CHUNK_SIZE,
        repository: Optional[GraphRepository] = None,
    ):
        if threads < 1:
            raise DomainError(f"threads must be at least 1, got {threads}")
        self.threads = int(threads)
        self.chunk_size = max(1, int(chunk_size))
        self.repository = repository

    def _chunks(self, grid: Grid) -> List[np.ndarray]:
        size = self.chunk_size
        if isinstance(grid, PointGrid):
            size = max(1, min(size, _POINT_GRID_BUDGET // max(grid.n_boxes, 1)))
        return [np.arange(start, min(start + size, grid.n_boxes)) for start in range(0, grid.n_boxes, size)]

    def _edges_for_chunk(self, system: IFSystem, grid: Grid, symbol: int, sources: np.ndarray, radius: float) -> EdgeBlock:
        centers = grid.centers()[sources]
        images = system.space.reduce(system.apply_many(symbol, centers))
        if isinstance(grid, PointGrid):
            return _point_grid_edges(grid, images, sources, radius)
        return _box_grid_edges(grid, images, sources, radius)

    def _symbol_matrix(self, system: IFSystem, grid: Grid, symbol: int, radius: float) -> sparse.csr_matrix:
        chunks = self._chunks(grid)
        blocks: List[Optional[EdgeBlock]] = [None] * len(chunks)
        if self.threads == 1 or len(chunks) == 1:
            for i, chunk in enumerate(chunks):
                blocks[i] = self._edges_for_chunk(system, grid, symbol, chunk, radius)
        else:
            with ThreadPoolExecutor(max_workers=self.threads) as executor:
                futures: Dict = {
                    executor.submit(self._edges_for_chunk, system, grid, symbol, chunk, radius): i
                    for i, chunk in enumerate(chunks)
                }
                for future in as_completed(futures):
                    blocks[futures[future]] = future.result()
        rows = np.concatenate([b[0] for b in blocks]) if blocks else np.zeros(0, dtype=np.int64)
        cols = np.concatenate([b[1] for b in blocks]) if blocks else np.zeros(0, dtype=np.int64)
        n = grid.n_boxes
        matrix = sparse.coo_matrix((np.ones(rows.size, dtype=np.int8), (rows, cols)), shape=(n, n)).tocsr()
        matrix.sum_duplicates()
        matrix = (matrix > 0).tocsr()
        matrix.sort_indices()
        return matrix

    def build(
        self,
        system: IFSystem,
        grid: Grid,
        epsilon: float,
        mode: Optional[SlackMode] = None,
    ) -> ChainGraph:
        """Edge ``i -> j`` labelled ``s`` iff ``dist(f_s(c_i), c_j) < epsilon + slack_s``."""
        mode = mode or SlackMode.strict()
        if not epsilon > 0:
            raise DomainError(f"epsilon must be positive, got {epsilon}")
        if grid.space != system.space:
            raise DomainError("grid and system live on different spaces")

        key = GraphKey(system, grid.key, float(epsilon), mode)
        if self.repository is not None:
            cached = self.repository.find(key)
            if cached is not None:
                return cached

        slacks = [mode.slack_for(m, grid.diameter) for m in system.maps]
        matrices = [
            self._symbol_matrix(system, grid, symbol, epsilon + slacks[symbol])
            for symbol in range(system.n_symbols)
        ]
        graph = ChainGraph(system, grid, epsilon, mode, matrices, slacks)
        if self.repository is not None:
            self.repository.save(graph)
        return graph

    def product_graph(
        self,
        left: ChainGraph,
        right: ChainGraph,
        max_nodes: int = DEFAULT_MAX_PRODUCT_NODES,
    ) -> ChainGraph:
        """Graph of the product system on the product grid, by Kronecker products.

        Under the max metric an edge of the product exists iff both factor
        edges exist, so with one slack shared by every map this equals
        building the product graph directly. Per-map fattened slacks depend
        on the product map and grid, so that mode builds the product directly.
        """
        for g in (left, right):
            if not isinstance(g.grid, BoxGrid) or g.grid.is_product:
                raise DomainError("product graphs combine graphs over 1-D box grids")
        if left.epsilon != right.epsilon or left.mode != right.mode:
            raise DomainError("product graphs need equal epsilon and slack mode")
        nodes = left.n_boxes * right.n_boxes
        if nodes > max_nodes:
            raise ResourceCapError(f"product graph has {nodes} nodes, cap is {max_nodes}")

        system = left.system.product(right.system)
        grid = BoxGrid(Product(left.system.space, right.system.space), (left.grid.resolution, right.grid.resolution))
        if not left.mode.is_strict and left.mode.slack is None:
            return self.build(system, grid, left.epsilon, left.mode)
        matrices = []
        slacks = []
        for s, a in enumerate(left.symbol_adjacency):
            for t, b in enumerate(right.symbol_adjacency):
                matrices.append(sparse.kron(a, b, format="csr").astype(bool))
                slacks.append(max(left.slacks[s], right.slacks[t]))
        return ChainGraph(system, grid, left.epsilon, left.mode, matrices, slacks)
