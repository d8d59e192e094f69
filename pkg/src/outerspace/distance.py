"""Asymmetric Lipschitz distance between points of Outer space."""
from dataclasses import dataclass
from math import log

from src.graphmap.marked_graph import MarkedGraph, Path
from src.outerspace.candidates import CandidateLoop, candidates
from src.outerspace.points import cyclic_path
from src.utils.errors import RankMismatch


@dataclass(frozen=True)
class DistanceResult:
    d_cv: float
    witness: CandidateLoop
    stretch: float

    def to_dict(self, graph: MarkedGraph) -> dict:
        return {"d_cv": self.d_cv, "stretch": self.stretch,
                "witness_loop": self.witness.name(graph),
                "witness_shape": self.witness.shape}


def stretch_factor(source: MarkedGraph, target: MarkedGraph,
                   loop: Path) -> float:
    """Length ratio of a loop of ``source`` and its image in ``target``."""
    word = source.loop_word(loop)
    return target.length_of(cyclic_path(target.realize(word))) / \
        source.length_of(loop)


def lipschitz_distance(source: MarkedGraph,
                       target: MarkedGraph) -> DistanceResult:
    """
    log of the largest candidate stretch from ``source`` to ``target``.

    :raises RankMismatch: If the ranks differ.
    """
    if source.rank != target.rank:
        raise RankMismatch(f"ranks {source.rank} and {target.rank} differ")
    loops = candidates(source)
    if source == target:
        return DistanceResult(0.0, loops[0], 1.0)
    best, position = max(
        ((stretch_factor(source, target, c.path), -i)
         for i, c in enumerate(loops)))
    return DistanceResult(max(0.0, log(best)), loops[-position], best)


def sym_distance(first: MarkedGraph, second: MarkedGraph) -> float:
    return lipschitz_distance(first, second).d_cv + \
        lipschitz_distance(second, first).d_cv
