"""Value objects produced by graph analysis and the epsilon scan."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..shared.errors import DomainError

CHAIN_MIXING = "ChainMixing"
CYCLIC_FACTOR = "CyclicFactor"
ODOMETER_LIKE = "OdometerLike"
INCONCLUSIVE = "Inconclusive"

VERDICT_KINDS = (CHAIN_MIXING, CYCLIC_FACTOR, ODOMETER_LIKE, INCONCLUSIVE)


@dataclass(frozen=True)
class MixingCertificate:
    """Every box reaches every box by a path of each length in ``N..N+k_check-1``.

    ``N`` is the first length at which the graph is full.
    """

    N: int
    k_check: int
    method: str = "ExplicitCheck"

    def to_dict(self) -> Dict[str, Any]:
        return {"N": self.N, "method": self.method, "k_check": self.k_check}


@dataclass(eq=False)
class ChainAnalysis:
    """Strongly connected components, recurrence, period and cyclic classes.

    ``k_epsilon`` and ``class_labels`` are ``None`` unless the graph is
    chain transitive.
    """

    n_boxes: int
    scc_labels: np.ndarray
    recurrent: np.ndarray
    k_epsilon: Optional[int] = None
    class_labels: Optional[np.ndarray] = None
    mixing: Optional[MixingCertificate] = None
    recurrent_components: List[List[int]] = field(default_factory=list)

    @property
    def n_sccs(self) -> int:
        return int(self.scc_labels.max()) + 1 if self.scc_labels.size else 0

    @property
    def sccs(self) -> List[List[int]]:
        """Components as sorted box lists, ordered by their smallest box."""
        groups: Dict[int, List[int]] = {}
        for box, label in enumerate(self.scc_labels):
            groups.setdefault(int(label), []).append(box)
        return sorted(groups.values(), key=lambda g: g[0])

    @property
    def is_chain_recurrent(self) -> bool:
        return bool(self.recurrent.all())

    @property
    def is_chain_transitive(self) -> bool:
        return self.n_sccs == 1 and self.is_chain_recurrent

    @property
    def cyclic_classes(self) -> List[List[int]]:
        if self.class_labels is None or self.k_epsilon is None:
            raise DomainError("cyclic classes exist only for chain-transitive graphs")
        return [np.flatnonzero(self.class_labels == c).tolist() for c in range(self.k_epsilon)]

    def to_dict(self, list_classes: bool = True) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "n_boxes": self.n_boxes,
            "n_sccs": self.n_sccs,
            "chain_recurrent": self.is_chain_recurrent,
            "chain_transitive": self.is_chain_transitive,
            "recurrent_boxes": int(self.recurrent.sum()),
            "recurrent_components": len(self.recurrent_components),
            "k_epsilon": self.k_epsilon,
            "mixing": self.mixing.to_dict() if self.mixing else None,
        }
        if list_classes and self.class_labels is not None:
            out["cyclic_classes"] = self.cyclic_classes
        return out


@dataclass(frozen=True)
class Verdict:
    kind: str
    k: Optional[int] = None
    alpha: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in VERDICT_KINDS:
            raise DomainError(f"unknown verdict {self.kind!r}")

    def describe(self) -> str:
        if self.kind == CYCLIC_FACTOR:
            return f"CyclicFactor({self.k})"
        if self.kind == ODOMETER_LIKE:
            return "OdometerLike(" + ",".join(str(j) for j in self.alpha) + ")"
        return self.kind


@dataclass(eq=False)
class ScanLevel:
    epsilon: float
    resolution: Any
    box_diameter: float
    k: int
    analysis: ChainAnalysis
    grid: Any = None
    graph: Any = None

    def to_dict(self, list_classes: bool = False) -> Dict[str, Any]:
        out = {
            "epsilon": self.epsilon,
            "resolution": self.resolution if not isinstance(self.resolution, tuple) else list(self.resolution),
            "box_diameter": self.box_diameter,
            "k": self.k,
            "n_edges": self.graph.n_edges if self.graph is not None else None,
        }
        if list_classes:
            out["cyclic_classes"] = self.analysis.cyclic_classes
        return out


@dataclass(eq=False)
class ScanResult:
    levels: List[ScanLevel]
    verdict: Verdict
    notes: List[str] = field(default_factory=list)

    @property
    def ks(self) -> Tuple[int, ...]:
        return tuple(level.k for level in self.levels)

    @property
    def epsilons(self) -> Tuple[float, ...]:
        return tuple(level.epsilon for level in self.levels)

    def to_dict(self, list_classes: bool = False) -> Dict[str, Any]:
        return {
            "levels": [level.to_dict(list_classes) for level in self.levels],
            "ks": list(self.ks),
            "verdict": self.verdict.describe(),
            "notes": list(self.notes),
        }


@dataclass(eq=False)
class FactorCoding:
    """Digits ``(d_1 .. d_M)`` of every box at the finest scan level."""

    alpha: Tuple[int, ...]
    level_indices: Tuple[int, ...]
    grid: Any
    codes: np.ndarray

    @property
    def depth(self) -> int:
        return len(self.alpha)

    def code_of_box(self, box: int) -> Tuple[int, ...]:
        return tuple(int(d) for d in self.codes[box])


@dataclass(frozen=True)
class SemiconjugacyReport:
    samples: int
    violations: int
    first_violation: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {"samples": self.samples, "violations": self.violations, "first_violation": self.first_violation}


@dataclass(frozen=True)
class EquivalenceReport:
    recurrent: bool
    transitive: bool
    totally_transitive: bool
    mixing: bool
    N: Optional[int] = None
    product: Optional["ProductReport"] = None

    @property
    def agree(self) -> bool:
        return self.recurrent == self.transitive == self.totally_transitive == self.mixing

    def to_dict(self) -> Dict[str, Any]:
        return {
            "recurrent": self.recurrent,
            "transitive": self.transitive,
            "totally_transitive": self.totally_transitive,
            "mixing": self.mixing,
            "N": self.N,
            "agree": self.agree,
            "product": self.product.to_dict() if self.product else None,
        }


@dataclass(frozen=True)
class ProductReport:
    """Transitivity of ``F^n`` for ``n = 1..n_max`` and of the product ``F x F``.

    The product graph is only built when every power is transitive.
    """

    n_max: int
    premise_holds: bool
    failed_order: Optional[int] = None
    product_transitive: Optional[bool] = None
    product_period: Optional[int] = None
    n_nodes: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n_max": self.n_max,
            "premise_holds": self.premise_holds,
            "failed_order": self.failed_order,
            "product_transitive": self.product_transitive,
            "product_period": self.product_period,
            "n_nodes": self.n_nodes,
        }
