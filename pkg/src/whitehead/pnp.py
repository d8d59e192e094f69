"""
Bounded search for periodic Nielsen paths of expanding train track maps.

The map is raised to its rotationless power h and every interior
orientation-preserving fixed point is made a vertex. A Nielsen path of h
then reads ``R1 . inverse(R2)`` where R1, R2 are initial segments of the
h-invariant rays leaving fixed vertices in fixed directions, of equal
eigenlength, meeting at an illegal turn. Candidates are verified exactly by
tightening their image.
"""
from dataclasses import dataclass
from enum import Enum

from src.freegroup.words import inverse_letters, reduce_letters
from src.graphmap.graph_map import GraphMap, map_power
from src.graphmap.marked_graph import Edge, MarkedGraph, Path
from src.graphmap.matrices import pf_data, primitivity_class, transition_matrix
from src.trainfold.moves import fresh_edge_name, substitute
from src.trainfold.train_track import is_train_track
from src.utils.errors import NotTrainTrack
from src.utils.logger import setup_logging
from src.whitehead.turns import (
    Turn, direction_map, is_illegal, rotationless_power,
)

logger = setup_logging("whitehead")

EXPANSION_TOLERANCE = 1e-9


class PNPKind(Enum):
    NONE_FOUND_UP_TO_BOUND = "NoneFoundUpToBound"
    FOUND = "Found"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class PNPStatus:
    kind: PNPKind
    path: str | None = None
    candidates: int = 0
    bound: float = 0.0
    reason: str | None = None

    def to_dict(self) -> dict:
        payload = {"status": self.kind.value, "candidates": self.candidates,
                   "bound": self.bound}
        if self.path is not None:
            payload["path"] = self.path
        if self.reason is not None:
            payload["reason"] = self.reason
        return payload


def expanding_data(g: GraphMap, **eigen) -> tuple[float, list[float]]:
    """
    PF data of an expanding irreducible train track map.

    :raises NotTrainTrack: For any other map.
    """
    if not is_train_track(g):
        raise NotTrainTrack("map has an illegal turn in its taken turns")
    matrix = transition_matrix(g)
    if not primitivity_class(matrix).is_irreducible:
        raise NotTrainTrack("transition matrix is reducible")
    eigenvalue, eigenvector = pf_data(matrix, **eigen)
    if eigenvalue <= 1 + EXPANSION_TOLERANCE:
        raise NotTrainTrack(f"map is not expanding (lambda = {eigenvalue})")
    return eigenvalue, eigenvector.tolist()


def _interior_fixed_point(h: GraphMap, stretch: float
                          ) -> tuple[int, int, float] | None:
    """(edge, occurrence index, offset) of one interior fixed point."""
    graph = h.graph
    for e, image in enumerate(h.edge_images, start=1):
        length = graph.edges[e - 1].length
        for j, half_edge in enumerate(image):
            if half_edge != e or j == 0 or j == len(image) - 1:
                continue
            offset = graph.length_of(image[:j]) / (stretch - 1)
            if EXPANSION_TOLERANCE < offset < length - EXPANSION_TOLERANCE:
                return e, j, offset
    return None


def split_at_fixed_point(h: GraphMap, e: int, j: int,
                         offset: float) -> GraphMap:
    """Make the fixed point of edge e lying on copy j of e a vertex."""
    graph = h.graph
    image = h.edge_images[e - 1]
    old = graph.edges[e - 1]
    point = graph.num_vertices
    new_edge = graph.num_edges + 1
    mapping = {e: (e, new_edge), -e: (-new_edge, -e)}
    edges = list(graph.edges)
    edges[e - 1] = Edge(old.name, old.origin, point, offset)
    edges.append(Edge(fresh_edge_name(graph), point, old.terminus,
                      old.length - offset))
    images = [substitute(path, mapping) for path in h.edge_images]
    images[e - 1] = substitute(image[:j], mapping) + (e,)
    images.append((new_edge,) + substitute(image[j + 1:], mapping))
    marking = tuple(substitute(path, mapping) for path in graph.marking)
    split = MarkedGraph(graph.num_vertices + 1, tuple(edges),
                        graph.basepoint, marking)
    return GraphMap(split, split, h.vertex_images + (point,), tuple(images))


def _ray(h: GraphMap, direction: int, reach: float) -> Path:
    """Initial segment of the h-invariant ray in a fixed direction."""
    path: Path = (direction,)
    for _ in range(64):
        if h.graph.length_of(path) >= reach:
            break
        longer = h.image_of_path(path)
        if len(longer) <= len(path):
            break
        path = longer
    return path


def pnp_search(g: GraphMap, slack: float = 2.0,
               max_candidates: int = 200_000,
               max_subdivisions: int = 64,
               power: int | None = None,
               **eigen) -> PNPStatus:
    """
    Look for a periodic Nielsen path of eigenlength at most
    ``slack * 2 * lambda_h * L_max / (lambda_h - 1)``.

    :param g: An expanding irreducible train track map.
    :param power: Rotationless power to use; computed when omitted.
    :raises NotTrainTrack: If ``g`` is not an expanding train track.
    """
    if slack < 1:
        raise ValueError("slack must be at least 1")
    eigenvalue, eigenvector = expanding_data(g, **eigen)
    power = power or rotationless_power(g)
    stretch = eigenvalue ** power
    h = map_power(g, power)
    h = h.with_graph(h.graph.with_lengths(eigenvector))

    splits = 0
    while (point := _interior_fixed_point(h, stretch)) is not None:
        if splits >= max_subdivisions:
            return PNPStatus(PNPKind.INCONCLUSIVE,
                             reason="too many interior fixed points")
        h = split_at_fixed_point(h, *point)
        splits += 1

    graph = h.graph
    longest = max(graph.length_of(path) for path in h.edge_images)
    bound = slack * 2 * stretch * longest / (stretch - 1)
    dh = direction_map(h)
    rays = [_ray(h, d, bound / 2)
            for v in range(graph.num_vertices) if h.vertex_images[v] == v
            for d in graph.directions_at(v) if dh[d] == d]
    logger.debug(f"🔍 PNP search: power {power}, {splits} fixed-point "
                 f"splits, {len(rays)} rays, bound {bound:.6g}")

    prefixes: list[tuple[float, int, Path]] = []
    for ray in rays:
        for i in range(1, len(ray) + 1):
            length = graph.length_of(ray[:i])
            if length > bound / 2 + EXPANSION_TOLERANCE:
                break
            prefixes.append((length, graph.terminal(ray[i - 1]), ray[:i]))
    prefixes.sort(key=lambda item: item[0])

    tolerance = EXPANSION_TOLERANCE * max(1.0, bound)
    candidates = 0
    for a, (length, end, first) in enumerate(prefixes):
        for other_length, other_end, second in prefixes[a + 1:]:
            if other_length - length > tolerance:
                break
            if other_end != end:
                continue
            turn = Turn.of(-first[-1], -second[-1])
            if turn.is_degenerate or not is_illegal(turn, dh):
                continue
            candidates += 1
            if candidates > max_candidates:
                logger.warning(f"⚠️ PNP search gave up after "
                               f"{max_candidates} candidates")
                return PNPStatus(PNPKind.INCONCLUSIVE, candidates=candidates,
                                 bound=bound, reason="candidate cap reached")
            path = reduce_letters(first + inverse_letters(second))
            if path and h.image_of_path(path) == path:
                logger.info(f"✅ Nielsen path {graph.path_string(path)} "
                            f"found for power {power}")
                return PNPStatus(PNPKind.FOUND, graph.path_string(path),
                                 candidates, bound)
    return PNPStatus(PNPKind.NONE_FOUND_UP_TO_BOUND, candidates=candidates,
                     bound=bound)
