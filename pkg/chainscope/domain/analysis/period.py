"""Recurrence, transitivity, period and mixing of a chain graph."""

from typing import Optional

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from ..chaingraph.chain_graph import ChainGraph
from ..chaingraph.events import MixingBoundExceeded
from ..shared.errors import PreconditionError, ResourceCapError
from .results import ChainAnalysis, MixingCertificate

DEFAULT_K_CHECK = 3
# dense reachability rows are kept for every box pair
MAX_CERTIFY_BOXES = 8192


def _canonical_labels(labels: np.ndarray) -> np.ndarray:
    """Renumber components in order of their smallest box."""
    # scipy numbers components 0..c-1, so np.unique returns them in order
    _, first = np.unique(labels, return_index=True)
    order = np.argsort(first)
    remap = np.empty_like(order)
    remap[order] = np.arange(order.size)
    return remap[labels]


def analyze_adjacency(adjacency: sparse.spmatrix) -> ChainAnalysis:
    """Components, recurrence and (when transitive) period of a digraph.

    The period is the gcd of ``level(u) + 1 - level(v)`` over all edges,
    with BFS levels from box 0; cyclic classes are the levels mod the period.
    """
    adjacency = sparse.csr_matrix(adjacency, dtype=bool)
    adjacency.eliminate_zeros()
    n = adjacency.shape[0]
    _, labels = csgraph.connected_components(adjacency, directed=True, connection="strong")
    labels = _canonical_labels(labels)
    sizes = np.bincount(labels)
    self_loops = adjacency.diagonal().astype(bool)
    recurrent = (sizes[labels] > 1) | self_loops

    order = np.argsort(labels, kind="stable")
    groups = [g.tolist() for g in np.split(order, np.cumsum(sizes)[:-1])]
    cycle_bearing = [g for g in groups if recurrent[g[0]]]

    result = ChainAnalysis(
        n_boxes=n,
        scc_labels=labels,
        recurrent=recurrent,
        recurrent_components=cycle_bearing,
    )
    if not result.is_chain_transitive:
        return result

    levels = csgraph.shortest_path(adjacency, directed=True, unweighted=True, indices=0)
    levels = levels.astype(np.int64)
    rows, cols = adjacency.nonzero()
    k = int(np.gcd.reduce(np.abs(levels[rows] + 1 - levels[cols])))
    result.k_epsilon = k
    result.class_labels = np.mod(levels, k)
    return result


def certify_mixing(
    graph: ChainGraph,
    analysis: ChainAnalysis,
    k_check: int = DEFAULT_K_CHECK,
    bound: Optional[int] = None,
) -> Optional[MixingCertificate]:
    """First length ``N`` at which every box reaches every box, confirmed at
    ``k_check`` consecutive lengths.

    Returns ``None`` (and records ``MixingBoundExceeded``) when no such
    length exists up to ``bound``, by default ``2 * n_boxes**2``.
    """
    if not analysis.is_chain_transitive or analysis.k_epsilon != 1:
        raise PreconditionError(
            f"mixing certificates need a transitive graph of period 1 "
            f"(transitive={analysis.is_chain_transitive}, k={analysis.k_epsilon})"
        )
    n = graph.n_boxes
    if n > MAX_CERTIFY_BOXES:
        raise ResourceCapError(f"mixing certificate on {n} boxes exceeds the cap of {MAX_CERTIFY_BOXES}")
    k_check = max(1, int(k_check))
    bound = int(bound) if bound is not None else 2 * n * n

    step = graph.adjacency.astype(np.int32).T.tocsr()
    reach = graph.adjacency.toarray()
    first_full = None
    for length in range(1, bound + 1):
        if reach.all():
            if first_full is None:
                first_full = length
            if length - first_full + 1 >= k_check:
                return MixingCertificate(N=first_full, k_check=k_check)
        else:
            first_full = None
        # rows of reach_{n+1} are rows of reach_n pushed one edge forward
        reach = (step @ reach.T.astype(np.int32)).T > 0

    graph.record(MixingBoundExceeded(
        f"no mixing certificate within path length {bound} on {n} boxes"
    ))
    return None


def analyze(graph: ChainGraph, certify: bool = True, k_check: int = DEFAULT_K_CHECK) -> ChainAnalysis:
    result = analyze_adjacency(graph.adjacency)
    if certify and result.is_chain_transitive and result.k_epsilon == 1:
        result.mixing = certify_mixing(graph, result, k_check)
    return result


def class_permutation_check(graph: ChainGraph, analysis: ChainAnalysis) -> bool:
    """True iff every labelled edge moves class ``c`` to ``c + 1 mod k``."""
    if analysis.k_epsilon is None or analysis.class_labels is None:
        raise PreconditionError("cyclic classes are only defined for chain-transitive graphs")
    k = analysis.k_epsilon
    classes = analysis.class_labels
    for matrix in graph.symbol_adjacency:
        rows, cols = matrix.nonzero()
        if np.any(np.mod(classes[rows] + 1, k) != classes[cols]):
            return False
    return True
