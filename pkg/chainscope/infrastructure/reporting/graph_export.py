"""DOT and CSV export of chain graphs."""

from pathlib import Path
from typing import Union

from ...domain.chaingraph.chain_graph import ChainGraph


def _symbols(labels) -> str:
    return ",".join(str(s) for s in labels)


def to_dot(graph: ChainGraph) -> str:
    """Digraph text; nodes are ``b<i>@<center>``, edges carry their symbol sets."""
    lines = []
    if graph.n_edges == 0:
        lines.append(f"// warning: no edges at epsilon {graph.epsilon!r}")
    lines.append("digraph chaingraph {")
    for i in range(graph.n_boxes):
        lines.append(f'  {i} [label="b{i}@{graph.grid.label(i)}"];')
    rows, cols = graph.edges()
    for u, v, labels in zip(rows, cols, graph.edge_labels()):
        lines.append(f'  {u} -> {v} [label="{{{_symbols(labels)}}}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_csv(graph: ChainGraph) -> str:
    """``src,dst,symbols`` rows; symbols are joined with ``;``."""
    lines = ["src,dst,symbols"]
    rows, cols = graph.edges()
    for u, v, labels in zip(rows, cols, graph.edge_labels()):
        lines.append(f"{u},{v},{';'.join(str(s) for s in labels)}")
    return "\n".join(lines) + "\n"


def export_dot(graph: ChainGraph, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(to_dot(graph), encoding="utf-8")
    return path


def export_csv(graph: ChainGraph, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(to_csv(graph), encoding="utf-8")
    return path
