"""From chain mixing to topological mixing, witnessed on box sets."""

from dataclasses import dataclass, field
from typing import Any, List, Optional, Sequence, Tuple

from ..analysis.results import MixingCertificate
from ..ifs.system import IFSystem
from ..shared.errors import ChainscopeError, PreconditionError
from ..space.grid import Grid
from .search import DEFAULT_MAX_PIECES, REPLAY_TOLERANCE, follow_regions
from .spot_check import SpotCheckReport

DEFAULT_WINDOW = 3

BoxSet = Sequence[int]


class ShadowingGateError(PreconditionError):
    """Mixing transfer refused: some sampled chain was not shadowed."""

    def __init__(self, report: SpotCheckReport):
        super().__init__(
            f"shadowing spot check failed on a {report.failing_kind} chain "
            f"after {report.chains_checked} chains; mixing transfer refused"
        )
        self.report = report


@dataclass(frozen=True)
class TransferWitness:
    pair: int
    n: int
    found: bool
    word: Optional[Tuple[int, ...]] = None
    start_point: Any = None
    start_box: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            "pair": self.pair,
            "n": self.n,
            "found": self.found,
            "word": list(self.word) if self.word is not None else None,
            "start_point": self.start_point,
            "start_box": self.start_box,
        }


@dataclass(frozen=True)
class TransferReport:
    N: int
    window: Tuple[int, ...]
    gate: SpotCheckReport
    witnesses: Tuple[TransferWitness, ...] = field(default_factory=tuple)

    @property
    def success_rate(self) -> float:
        if not self.witnesses:
            return 1.0
        return sum(w.found for w in self.witnesses) / len(self.witnesses)

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "window": list(self.window),
            "gate": self.gate.to_dict(),
            "success_rate": self.success_rate,
            "witnesses": [w.to_dict() for w in self.witnesses],
        }


def mixing_transfer_check(
    system: IFSystem,
    grid: Grid,
    pairs: Sequence[Tuple[BoxSet, BoxSet]],
    certificate: Optional[MixingCertificate],
    gate: SpotCheckReport,
    window: int = DEFAULT_WINDOW,
    max_pieces: int = DEFAULT_MAX_PIECES,
) -> TransferReport:
    """For every ``(U, V)`` and ``n`` in ``N+1 .. N+window``, a word of length
    ``n`` and a point of ``U`` whose exact orbit ends in ``V``.

    Refused unless the shadowing gate passed and a mixing certificate exists.
    """
    if not gate.passed:
        raise ShadowingGateError(gate)
    if certificate is None:
        raise PreconditionError("mixing transfer needs a chain-mixing certificate")

    space = system.space
    lengths = tuple(range(certificate.N + 1, certificate.N + window + 1))
    witnesses: List[TransferWitness] = []
    for index, (u_boxes, v_boxes) in enumerate(pairs):
        u_region = grid.boxes_region(u_boxes)
        v_region = grid.boxes_region(v_boxes)
        for n in lengths:
            targets = [u_region] + [space.whole()] * (n - 1) + [v_region]
            found = follow_regions(system, targets, max_pieces)
            if found is None:
                witnesses.append(TransferWitness(index, n, False))
                continue
            word, start = found
            end = system.apply_word(word, start)
            if not (u_region.contains(start, REPLAY_TOLERANCE) and v_region.contains(end, REPLAY_TOLERANCE)):
                raise ChainscopeError(f"transfer witness for pair {index} at length {n} does not replay")
            witnesses.append(TransferWitness(
                pair=index,
                n=n,
                found=True,
                word=word.symbols,
                start_point=space.to_output(start),
                start_box=grid.locate(start),
            ))
    return TransferReport(N=certificate.N, window=lengths, gate=gate, witnesses=tuple(witnesses))
