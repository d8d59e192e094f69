"""
Elementary moves on self-maps of marked graphs.

Every move returns a new self-map representing the same outer automorphism:
subdivisions and folds push the marking forward, collapses of non-loop edges
use ``c o g o i`` where ``i`` is the homotopy inverse of the collapse ``c``.
"""
from dataclasses import replace
from typing import Callable

from src.freegroup.words import reduce_letters
from src.graphmap.graph_map import GraphMap
from src.graphmap.marked_graph import Edge, MarkedGraph, Path
from src.graphmap.matrices import (
    pf_data, primitivity_class, transition_matrix,
)
from src.trainfold.sequence import FoldSequence
from src.utils.errors import (
    DegenerateFold, NotFoldable, NotHomotopyEquivalence,
)


def substitute(path: Path, mapping: dict[int, Path]) -> Path:
    out: list[int] = []
    for half_edge in path:
        out.extend(mapping.get(half_edge, (half_edge,)))
    return tuple(out)


def fresh_edge_name(graph: MarkedGraph) -> str:
    used = {edge.name for edge in graph.edges}
    k = graph.num_edges + 1
    while f"e{k}" in used:
        k += 1
    return f"e{k}"


def common_prefix_length(first: Path, second: Path) -> int:
    count = 0
    for a, b in zip(first, second):
        if a != b:
            break
        count += 1
    return count


def _renumber(dropped_edge: int, dropped_vertex: int, merged_into: int
              ) -> tuple[Callable[[int], int], Callable[[int], int]]:
    def vertex_map(v: int) -> int:
        v = merged_into if v == dropped_vertex else v
        return v - 1 if v > dropped_vertex else v

    def edge_map(h: int) -> int:
        k = abs(h)
        k = k - 1 if k > dropped_edge else k
        return k if h > 0 else -k

    return vertex_map, edge_map


def subdivide(g: GraphMap, half_edge: int, position: int
              ) -> tuple[GraphMap, int]:
    """
    Cut the edge of ``half_edge`` so that the piece leaving its initial
    vertex maps onto the first ``position`` letters of ``g(half_edge)``.

    :return: The new map and the half-edge of that first piece.
    """
    graph = g.graph
    e = abs(half_edge)
    image = g.edge_images[e - 1]
    cut = position if half_edge > 0 else len(image) - position
    if not 0 < cut < len(image):
        raise NotFoldable(f"cannot cut {graph.direction_name(half_edge)} "
                          f"at {position} of {len(image)}")
    new_vertex = graph.num_vertices
    new_edge = graph.num_edges + 1
    old = graph.edges[e - 1]
    total = graph.length_of(image)
    ratio = graph.length_of(image[:cut]) / total if total > 0 \
        else cut / len(image)

    edges = list(graph.edges)
    edges[e - 1] = replace(old, terminus=new_vertex, length=old.length * ratio)
    edges.append(Edge(fresh_edge_name(graph), new_vertex, old.terminus,
                      old.length * (1 - ratio)))
    mapping = {e: (e, new_edge), -e: (-new_edge, -e)}
    images = [substitute(path, mapping) for path in g.edge_images]
    images[e - 1] = substitute(image[:cut], mapping)
    images.append(substitute(image[cut:], mapping))
    vertex_images = g.vertex_images + (graph.terminal(image[cut - 1]),)
    marking = tuple(substitute(path, mapping) for path in graph.marking)
    subdivided = MarkedGraph(graph.num_vertices + 1, tuple(edges),
                             graph.basepoint, marking)
    result = GraphMap(subdivided, subdivided, vertex_images, tuple(images))
    first = e if half_edge > 0 else -new_edge
    return result, first


def track_after_subdivision(half_edge: int, cut_edge: int,
                            new_edge: int) -> int:
    """Where a half-edge starts after its edge was cut into (e, new)."""
    return -new_edge if half_edge == -cut_edge else half_edge


def quotient_domain(graph: MarkedGraph, keep: int, drop: int):
    """
    Identify the half-edge ``drop`` with ``keep`` (same initial vertex).

    :return: ``(graph, half-edge substitution, vertex map)``.
    """
    t_keep, t_drop = graph.terminal(keep), graph.terminal(drop)
    if abs(keep) == abs(drop):
        raise NotFoldable("cannot fold an edge onto itself")
    if t_keep == t_drop:
        raise DegenerateFold(
            f"folding {graph.direction_name(keep)} with "
            f"{graph.direction_name(drop)} identifies parallel edges")
    vertex_map, edge_map = _renumber(abs(drop), t_drop, t_keep)
    mapping = {h: (edge_map(h),) for h in graph.half_edges()}
    mapping[drop] = (edge_map(keep),)
    mapping[-drop] = (edge_map(-keep),)
    edges = tuple(
        replace(edge, origin=vertex_map(edge.origin),
                terminus=vertex_map(edge.terminus))
        for index, edge in enumerate(graph.edges, start=1)
        if index != abs(drop))
    marking = tuple(reduce_letters(substitute(path, mapping))
                    for path in graph.marking)
    quotient = MarkedGraph(graph.num_vertices - 1, edges,
                           vertex_map(graph.basepoint), marking)
    return quotient, mapping, vertex_map


def full_fold(g: GraphMap, keep: int, drop: int) -> GraphMap:
    """Fold two directions whose images agree completely."""
    if g.image(keep) != g.image(drop):
        raise NotFoldable("full folds need identical images")
    graph = g.graph
    quotient, mapping, vertex_map = quotient_domain(graph, keep, drop)
    t_drop = graph.terminal(drop)
    images = tuple(
        reduce_letters(substitute(path, mapping))
        for index, path in enumerate(g.edge_images, start=1)
        if index != abs(drop))
    vertex_images = tuple(vertex_map(image)
                          for v, image in enumerate(g.vertex_images)
                          if v != t_drop)
    return GraphMap(quotient, quotient, vertex_images, images)


def elementary_fold(g: GraphMap, d1: int, d2: int,
                    sequence: FoldSequence | None = None) -> GraphMap:
    """
    Fold the maximal common initial segments of two directions at a vertex.

    :raises NotFoldable: If the directions differ in their first image edge.
    :raises DegenerateFold: If the fold would kill a loop.
    """
    graph = g.graph
    if d1 == d2 or graph.initial(d1) != graph.initial(d2):
        raise NotFoldable("directions must be distinct and share a vertex")
    first, second = g.image(d1), g.image(d2)
    if not first or not second or first[0] != second[0]:
        raise NotFoldable(
            f"{graph.direction_name(d1)} and {graph.direction_name(d2)} "
            "have different image directions")
    common = common_prefix_length(first, second)
    if abs(d1) == abs(d2) and 2 * common >= len(first):
        raise NotFoldable("fold segments of a loop would overlap")
    if common < len(first):
        cut_edge = abs(d1)
        g, d1 = subdivide(g, d1, common)
        d2 = track_after_subdivision(d2, cut_edge, g.graph.num_edges)
        _record_cut(sequence, g, cut_edge)
    # the cut rewrote every image in the new letters
    common = common_prefix_length(g.image(d1), g.image(d2))
    if common < len(g.image(d2)):
        cut_edge = abs(d2)
        g, d2 = subdivide(g, d2, common)
        d1 = track_after_subdivision(d1, cut_edge, g.graph.num_edges)
        _record_cut(sequence, g, cut_edge)
    names = [g.graph.direction_name(d1), g.graph.direction_name(d2)]
    g = full_fold(g, d1, d2)
    _record(sequence, "fold", g, directions=names)
    return g


def _record_cut(sequence: FoldSequence | None, g: GraphMap,
                cut_edge: int):
    """Log a subdivision whose new piece is the last edge of ``g``."""
    if sequence is None:
        return
    graph = g.graph
    head, tail = graph.edge(cut_edge), graph.edges[-1]
    sequence.record("subdivide", graph, edge=head.name, new_edge=tail.name,
                    ratio=head.length / (head.length + tail.length))


def collapse_edge(g: GraphMap, edge_number: int,
                  keep: int | None = None) -> GraphMap:
    """
    Collapse a non-loop edge to its endpoint ``keep`` (default origin).
    """
    graph = g.graph
    edge = graph.edges[edge_number - 1]
    if edge.origin == edge.terminus:
        raise NotHomotopyEquivalence(f"cannot collapse loop {edge.name}")
    keep = edge.origin if keep is None else keep
    removed = edge.terminus if keep == edge.origin else edge.origin
    to_removed = edge_number if keep == edge.origin else -edge_number
    vertex_map, edge_map = _renumber(edge_number, removed, keep)
    mapping = {h: (edge_map(h),) for h in graph.half_edges()}
    mapping[edge_number] = ()
    mapping[-edge_number] = ()

    images = []
    edges = []
    for index, other in enumerate(graph.edges, start=1):
        if index == edge_number:
            continue
        before = g.image(to_removed) if other.origin == removed else ()
        after = g.image(-to_removed) if other.terminus == removed else ()
        images.append(reduce_letters(substitute(
            before + g.edge_images[index - 1] + after, mapping)))
        edges.append(replace(other, origin=vertex_map(other.origin),
                             terminus=vertex_map(other.terminus)))
    vertex_images = tuple(vertex_map(image)
                          for v, image in enumerate(g.vertex_images)
                          if v != removed)
    marking = tuple(reduce_letters(substitute(path, mapping))
                    for path in graph.marking)
    collapsed = MarkedGraph(graph.num_vertices - 1, tuple(edges),
                            vertex_map(graph.basepoint), marking)
    return GraphMap(collapsed, collapsed, vertex_images, tuple(images))


def collapse_forest(g: GraphMap, edge_numbers,
                    sequence: FoldSequence | None = None) -> GraphMap:
    """Collapse a g-invariant forest, highest edge number first."""
    names = [g.graph.edges[k - 1].name for k in edge_numbers]
    for k in sorted(edge_numbers, reverse=True):
        g = collapse_edge(g, k)
    _record(sequence, "collapse", g, edges=names)
    return g


def _is_smoothable(graph: MarkedGraph, vertex: int) -> bool:
    directions = graph.directions_at(vertex)
    return len(directions) == 2 and abs(directions[0]) != abs(directions[1])


def _valence_two_choice(g: GraphMap, vertex: int) -> int:
    directions = g.graph.directions_at(vertex)
    matrix = transition_matrix(g)
    if primitivity_class(matrix).is_irreducible:
        weights = pf_data(matrix)[1].tolist()
    else:
        weights = [len(path) for path in g.edge_images]
    # the lighter edge is absorbed into the heavier one
    return min(directions,
               key=lambda h: (round(float(weights[abs(h) - 1]), 12), abs(h)))


def normalize(g: GraphMap, sequence: FoldSequence | None = None) -> GraphMap:
    """
    Collapse edges with trivial image and remove valence-one and
    valence-two vertices until none is left.
    """
    while True:
        graph = g.graph
        degenerate = [k for k, path in enumerate(g.edge_images, start=1)
                      if not path]
        if degenerate:
            k = degenerate[0]
            name = graph.edges[k - 1].name
            g = collapse_edge(g, k)
            _record(sequence, "collapse", g, edges=[name])
            continue
        leaf = next((v for v in range(graph.num_vertices)
                     if graph.valence(v) == 1), None)
        if leaf is not None:
            h = graph.directions_at(leaf)[0]
            g = collapse_edge(g, abs(h), keep=graph.terminal(h))
            _record(sequence, "remove_valence_one", g, vertex=leaf)
            continue
        if graph.num_vertices > 1:
            middle = next((v for v in range(graph.num_vertices)
                           if _is_smoothable(graph, v)), None)
            if middle is not None:
                h = _valence_two_choice(g, middle)
                g = collapse_edge(g, abs(h), keep=graph.terminal(h))
                _record(sequence, "remove_valence_two", g, vertex=middle)
                continue
        return g


def _record(sequence: FoldSequence | None, kind: str, g: GraphMap,
            **detail):
    if sequence is not None:
        sequence.record(kind, g.graph, **detail)
