"""
Train track recognition and the search for train track representatives.

The driver starts from the rose representative and alternates cleanup
(trivial images, valence one and two), invariant forest collapses and folds
of illegal turns until the map is a train track, an invariant subgraph with
nontrivial fundamental group shows up, or the move budget runs out.
"""
from dataclasses import dataclass, field
from enum import Enum

import networkx as nx
import numpy as np

from src.freegroup.automorphisms import FreeAutomorphism, same_outer_class
from src.freegroup.words import Word
from src.graphmap.graph_map import (
    GraphMap, induced_automorphism, rose_map, tighten,
)
from src.graphmap.matrices import (
    DEFAULT_MAX_ITERATIONS, DEFAULT_TOLERANCE, support_digraph, pf_data,
    primitivity_class, transition_matrix,
)
from src.trainfold.moves import collapse_forest, elementary_fold, normalize
from src.trainfold.sequence import FoldSequence
from src.utils.errors import NotFoldable, ValidationError
from src.utils.logger import setup_logging
from src.whitehead.turns import (
    Turn, direction_map, is_illegal, taken_turns_with_depth, turn_image,
    turns_in_path,
)

logger = setup_logging("trainfold")

DEFAULT_MAX_STEPS = 500


@dataclass(frozen=True)
class TrainTrackCertificate:
    """
    ``turns`` is the closed set of taken turns. When the map is not a train
    track, ``degenerate_turn`` appears first in the image g^iterate(e).
    """

    is_train_track: bool
    turns: frozenset[Turn]
    degenerate_turn: Turn | None = None
    iterate: int | None = None

    def __bool__(self) -> bool:
        return self.is_train_track


def is_train_track(g: GraphMap) -> TrainTrackCertificate:
    depths = taken_turns_with_depth(g)
    degenerate = sorted((depth, turn.sort_key(), turn)
                        for turn, depth in depths.items()
                        if turn.is_degenerate)
    if not degenerate:
        return TrainTrackCertificate(True, frozenset(depths))
    depth, _, turn = degenerate[0]
    return TrainTrackCertificate(False, frozenset(depths), turn, depth + 1)


class Outcome(Enum):
    TRAIN_TRACK = "TrainTrack"
    REDUCTION_WITNESS = "ReductionWitness"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class ReductionWitness:
    """An invariant proper subgraph and bases of its components."""

    edges: tuple[str, ...]
    component_bases: tuple[tuple[Word, ...], ...]
    rank: int

    @property
    def component_ranks(self) -> list[int]:
        return [len(basis) for basis in self.component_bases]

    @property
    def is_proper_free_factor(self) -> bool:
        return any(0 < k < self.rank for k in self.component_ranks)

    def to_dict(self) -> dict:
        return {
            "edges": list(self.edges),
            "component_ranks": self.component_ranks,
            "free_factors": [[str(w) for w in basis]
                             for basis in self.component_bases],
        }


@dataclass
class TrainTrackResult:
    outcome: Outcome
    steps: int
    trace: FoldSequence
    map: GraphMap | None = None
    eigenvalue: float | None = None
    eigenvector: np.ndarray | None = None
    witness: ReductionWitness | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.outcome is Outcome.TRAIN_TRACK

    def to_dict(self, include_trace: bool = False) -> dict:
        payload = {"outcome": self.outcome.value, "steps": self.steps}
        if self.map is not None:
            payload["graph"] = self.map.graph.to_dict()
            payload["map"] = self.map.describe()
        if self.eigenvalue is not None:
            payload["lambda"] = self.eigenvalue
        if self.witness is not None:
            payload["witness"] = self.witness.to_dict()
        if self.notes:
            payload["notes"] = list(self.notes)
        if include_trace:
            payload["trace"] = self.trace.to_dict()
        return payload


def _invariant_subgraphs(matrix: np.ndarray) -> list[frozenset[int]]:
    """
    Maximal proper invariant edge sets (0-based): complements of the source
    strongly connected components of the transition digraph, latest edges
    removed first.
    """
    digraph = support_digraph(matrix)
    condensed = nx.condensation(digraph)
    everything = frozenset(digraph.nodes)
    sources = sorted(
        (frozenset(condensed.nodes[c]["members"]) for c in condensed.nodes
         if condensed.in_degree(c) == 0),
        key=max, reverse=True)
    return [everything - source for source in sources
            if everything - source]


def _reduction(g: GraphMap, matrix: np.ndarray
               ) -> tuple[ReductionWitness | None, list[int] | None]:
    """A free factor witness, else an invariant forest to collapse."""
    graph = g.graph
    forest = None
    for subset in _invariant_subgraphs(matrix):
        edges = sorted(k + 1 for k in subset)
        bases = graph.subgraph_bases(edges)
        witness = ReductionWitness(
            tuple(graph.edges[k - 1].name for k in edges),
            tuple(bases), graph.rank)
        if witness.is_proper_free_factor:
            return witness, None
        if forest is None and all(len(b) == 0 for b in bases):
            forest = edges
    return None, forest


def fold_turn(g: GraphMap) -> Turn | None:
    """
    The first illegal turn crossed by an edge image, pushed forward by Dg
    until one more step would make it degenerate.
    """
    dg = direction_map(g)
    for path in g.edge_images:
        for turn in turns_in_path(path):
            if not is_illegal(turn, dg):
                continue
            while not (image := turn_image(turn, dg)).is_degenerate:
                turn = image
            return turn
    return None


def _check_outer_class(phi: FreeAutomorphism, g: GraphMap, move: str):
    if not same_outer_class(phi, induced_automorphism(g)):
        raise ValidationError(f"move '{move}' changed the outer class")


def find_train_track(phi: FreeAutomorphism,
                     max_steps: int = DEFAULT_MAX_STEPS,
                     tolerance: float = DEFAULT_TOLERANCE,
                     max_iterations: int = DEFAULT_MAX_ITERATIONS,
                     check_moves: bool = False) -> TrainTrackResult:
    """
    Search for a train track representative of ``phi``.

    :param max_steps: Budget of forest collapses and folds.
    :param check_moves: Recompute the outer class after every move.
    :return: TrainTrack, ReductionWitness or Inconclusive.
    """
    if max_steps < 0:
        raise ValueError("max_steps must be non-negative")
    g = tighten(rose_map(phi), allow_degenerate=True)
    trace = FoldSequence(g.graph)
    moves = 0
    while True:
        g = normalize(g, trace)
        if check_moves:
            _check_outer_class(phi, g, "cleanup")
        matrix = transition_matrix(g)
        if not primitivity_class(matrix).is_irreducible:
            witness, forest = _reduction(g, matrix)
            if witness is not None:
                logger.info(f"✅ Invariant subgraph {list(witness.edges)} "
                            f"with ranks {witness.component_ranks} after "
                            f"{moves} moves")
                return TrainTrackResult(Outcome.REDUCTION_WITNESS, moves,
                                        trace, map=g, witness=witness)
            if forest is None or moves >= max_steps:
                reason = "no invariant forest" if forest is None \
                    else "move budget exhausted"
                logger.warning(f"⚠️ Reducible map left unresolved: {reason}")
                return TrainTrackResult(Outcome.INCONCLUSIVE, moves, trace,
                                        map=g, notes=[reason])
            g = collapse_forest(g, forest, trace)
            moves += 1
            continue

        eigenvalue, eigenvector = pf_data(matrix, tolerance, max_iterations)
        if is_train_track(g):
            logger.info(f"✅ Train track found after {moves} moves, "
                        f"lambda = {eigenvalue:.12g}")
            return TrainTrackResult(Outcome.TRAIN_TRACK, moves, trace, map=g,
                                    eigenvalue=eigenvalue,
                                    eigenvector=eigenvector)
        if moves >= max_steps:
            logger.info(f"⚠️ Move budget of {max_steps} exhausted")
            return TrainTrackResult(Outcome.INCONCLUSIVE, moves, trace,
                                    map=g, notes=["move budget exhausted"])
        turn = fold_turn(g)
        logger.debug(f"🔍 Folding {turn.name(g.graph)} "
                     f"(lambda = {eigenvalue:.12g})")
        try:
            g = elementary_fold(g, turn.first, turn.second, trace)
        except NotFoldable as e:
            logger.warning(f"⚠️ Fold of {turn.name(g.graph)} failed: {e}")
            return TrainTrackResult(Outcome.INCONCLUSIVE, moves, trace,
                                    map=g, notes=[str(e)])
        moves += 1
        if check_moves:
            _check_outer_class(phi, g, "fold")
