"""
Points of Outer space: volume-one marked metric graphs without vertices of
valence one or two.
"""
from dataclasses import replace

from src.freegroup.automorphisms import FreeAutomorphism
from src.freegroup.words import (
    Word, cyclic_reduce_letters, reduce_letters,
)
from src.graphmap.marked_graph import Edge, MarkedGraph, Path
from src.utils.errors import RankMismatch, ValidationError


def normalize_volume(graph: MarkedGraph) -> MarkedGraph:
    """Scale all lengths by 1/volume."""
    if any(edge.length <= 0 for edge in graph.edges):
        raise ValidationError("edge lengths must be positive")
    volume = graph.volume
    return graph.with_lengths([length / volume for length in graph.lengths()])


def outer_space_point(graph: MarkedGraph) -> MarkedGraph:
    """Validate ``graph`` as a point of Outer space."""
    return graph.validate(outer_space_point=True)


def _move_basepoint(graph: MarkedGraph, half_edge: int) -> MarkedGraph:
    """Conjugate the marking along ``half_edge`` leaving the basepoint."""
    marking = tuple(
        reduce_letters((-half_edge,) + path + (half_edge,))
        for path in graph.marking)
    return replace(graph, basepoint=graph.terminal(half_edge),
                   marking=marking)


def _smooth_once(graph: MarkedGraph, vertex: int) -> MarkedGraph:
    h1, h2 = graph.directions_at(vertex)
    if graph.basepoint == vertex:
        graph = _move_basepoint(graph, h2)
    e1, e2 = abs(h1), abs(h2)
    first, second = graph.edge(h1), graph.edge(h2)
    merged = Edge(first.name, graph.terminal(h1), graph.terminal(h2),
                  first.length + second.length)
    survivors = [k for k in range(1, graph.num_edges + 1) if k not in (e1, e2)]
    index = {k: i for i, k in enumerate(survivors, start=1)}
    new_edge = len(survivors) + 1
    mapping: dict[int, Path] = {}
    for k in survivors:
        mapping[k] = (index[k],)
        mapping[-k] = (-index[k],)
    mapping[-h1] = (new_edge,)
    mapping[h2] = ()
    mapping[-h2] = (-new_edge,)
    mapping[h1] = ()
    marking = tuple(
        tuple(x for h in path for x in mapping[h]) for path in graph.marking)
    vertex_map = {v: v - (v > vertex) for v in range(graph.num_vertices)}
    edges = [replace(graph.edges[k - 1],
                     origin=vertex_map[graph.edges[k - 1].origin],
                     terminus=vertex_map[graph.edges[k - 1].terminus])
             for k in survivors]
    edges.append(replace(merged, origin=vertex_map[merged.origin],
                         terminus=vertex_map[merged.terminus]))
    return MarkedGraph(graph.num_vertices - 1, tuple(edges),
                       vertex_map[graph.basepoint], marking)


def smooth_valence_two(graph: MarkedGraph) -> MarkedGraph:
    """Merge the two edges at every valence-two vertex into one."""
    while graph.num_vertices > 1:
        vertex = next(
            (v for v in range(graph.num_vertices)
             if len(dirs := graph.directions_at(v)) == 2
             and abs(dirs[0]) != abs(dirs[1])), None)
        if vertex is None:
            break
        graph = _smooth_once(graph, vertex)
    return graph


def twist_marking(graph: MarkedGraph, phi: FreeAutomorphism) -> MarkedGraph:
    """The same metric graph with the i-th marking loop spelling phi(x_i)."""
    if phi.rank != graph.rank:
        raise RankMismatch(f"rank {phi.rank} automorphism on a rank "
                           f"{graph.rank} graph")
    return replace(graph, marking=tuple(graph.realize(image)
                                        for image in phi.images))


def cyclic_path(path: Path) -> Path:
    return cyclic_reduce_letters(reduce_letters(path))


def loop_length(graph: MarkedGraph, word: Word) -> float:
    """Length of the immersed loop in the conjugacy class of ``word``."""
    return graph.length_of(cyclic_path(graph.realize(word)))
