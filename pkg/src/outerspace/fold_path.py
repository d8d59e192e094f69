"""
Periodic fold paths of train track maps.

With the eigenmetric on the codomain and lambda times it on the domain, the
Stallings folds of a train track map trace one fundamental domain of a fold
line; its last point is the first one with the marking twisted by the map.
"""
from dataclasses import dataclass
from math import log

from src.graphmap.graph_map import GraphMap
from src.graphmap.marked_graph import MarkedGraph
from src.outerspace.distance import lipschitz_distance
from src.outerspace.points import normalize_volume, smooth_valence_two
from src.trainfold.decomposition import fold_decomposition
from src.trainfold.sequence import FoldSequence
from src.whitehead.pnp import expanding_data


@dataclass
class FoldPath:
    points: list[MarkedGraph]
    eigenvalue: float
    sequence: FoldSequence

    def increments(self) -> list[float]:
        return [lipschitz_distance(a, b).d_cv
                for a, b in zip(self.points, self.points[1:])]

    @property
    def expected_length(self) -> float:
        return log(self.eigenvalue)


def fold_path(g: GraphMap, stages: int | None = None, **eigen) -> FoldPath:
    """
    :param stages: Number of folds to follow; all of them when omitted.
    :raises NotTrainTrack: If ``g`` is not an expanding train track.
    """
    eigenvalue, eigenvector = expanding_data(g, **eigen)
    start = g.graph.with_lengths(eigenvector)
    stretched = g.graph.with_lengths([eigenvalue * x for x in eigenvector])
    scaled = GraphMap(stretched, start, g.vertex_images, g.edge_images)
    sequence = fold_decomposition(scaled)
    folded = [step.graph for step in sequence.steps if step.kind == "fold"]
    if stages is not None:
        folded = folded[:stages]
    points = [normalize_volume(start)]
    points += [normalize_volume(smooth_valence_two(graph))
               for graph in folded]
    return FoldPath(points, eigenvalue, sequence)


def fold_path_points(g: GraphMap, stages: int | None = None,
                     **eigen) -> list[MarkedGraph]:
    return fold_path(g, stages, **eigen).points
