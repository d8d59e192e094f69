"""
Stallings fold decompositions.

The map is first subdivided so that every edge crosses exactly one codomain
edge (its label); folds then identify equally labelled directions one pair
at a time until the labelling is an immersion, which for a homotopy
equivalence is an isomorphism onto the codomain.
"""
from dataclasses import replace

from src.graphmap.graph_map import GraphMap, tighten
from src.graphmap.marked_graph import Edge, MarkedGraph, direction_key
from src.trainfold.moves import fresh_edge_name, quotient_domain, substitute
from src.trainfold.sequence import FoldSequence
from src.utils.logger import setup_logging

logger = setup_logging("trainfold")


def _label(stage: GraphMap, half_edge: int) -> int:
    return stage.image(half_edge)[0]


def _split_edge(stage: GraphMap, edge_number: int) -> GraphMap:
    """Cut one edge into a chain of pieces, one per letter of its image."""
    graph, codomain = stage.domain, stage.codomain
    image = stage.edge_images[edge_number - 1]
    old = graph.edges[edge_number - 1]
    edges = list(graph.edges)
    images = list(stage.edge_images)
    vertex_images = list(stage.vertex_images)
    chain = [edge_number]
    start = old.origin
    for position, label in enumerate(image):
        last = position == len(image) - 1
        end = old.terminus if last else graph.num_vertices + position
        if not last:
            vertex_images.append(codomain.terminal(label))
        length = codomain.edge(label).length
        if position == 0:
            edges[edge_number - 1] = replace(old, terminus=end, length=length)
            images[edge_number - 1] = (label,)
        else:
            partial = replace(graph, edges=tuple(edges))
            edges.append(Edge(fresh_edge_name(partial), start, end, length))
            images.append((label,))
            chain.append(len(edges))
        start = end
    mapping = {edge_number: tuple(chain),
               -edge_number: tuple(-k for k in reversed(chain))}
    marking = tuple(substitute(path, mapping) for path in graph.marking)
    split = MarkedGraph(graph.num_vertices + len(image) - 1, tuple(edges),
                        graph.basepoint, marking)
    return GraphMap(split, codomain, tuple(vertex_images), tuple(images))


def _relabel_lengths(stage: GraphMap) -> GraphMap:
    codomain = stage.codomain
    lengths = [codomain.edge(path[0]).length for path in stage.edge_images]
    return replace(stage, domain=stage.domain.with_lengths(lengths))


def _foldable_pair(stage: GraphMap) -> tuple[int, int] | None:
    graph = stage.domain
    for vertex in range(graph.num_vertices):
        seen: dict[int, int] = {}
        for h in graph.directions_at(vertex):
            label = _label(stage, h)
            if label in seen:
                return seen[label], h
            seen[label] = h
    return None


def fold_stage(stage: GraphMap, keep: int, drop: int) -> GraphMap:
    """Identify two equally labelled directions of a stage."""
    graph = stage.domain
    t_drop = graph.terminal(drop)
    quotient, _, _ = quotient_domain(graph, keep, drop)
    images = tuple(path for index, path in
                   enumerate(stage.edge_images, start=1)
                   if index != abs(drop))
    vertex_images = tuple(image for v, image in
                          enumerate(stage.vertex_images) if v != t_drop)
    return GraphMap(quotient, stage.codomain, vertex_images, images)


def fold_decomposition(g: GraphMap) -> FoldSequence:
    """
    Factor ``g`` into subdivisions followed by single folds.

    :param g: A homotopy equivalence, surjective on edges.
    :return: The trace; ``final_map`` maps the last stage onto the codomain.
    :raises DegenerateFold: If ``g`` is not a homotopy equivalence.
    """
    sequence = FoldSequence(g.domain)
    tight = tighten(g)
    if tight.edge_images != g.edge_images:
        sequence.record("tighten", tight.domain)
    stage = tight

    for edge_number in range(1, g.domain.num_edges + 1):
        pieces = len(stage.edge_images[edge_number - 1])
        if pieces < 2:
            continue
        name = stage.domain.edges[edge_number - 1].name
        lengths = [stage.codomain.edge(label).length
                   for label in stage.edge_images[edge_number - 1]]
        stage = _relabel_lengths(_split_edge(stage, edge_number))
        sequence.record("subdivide", stage.domain, edge=name, pieces=pieces,
                        ratios=[x / sum(lengths) for x in lengths])
    stage = _relabel_lengths(stage)

    while (pair := _foldable_pair(stage)) is not None:
        keep, drop = sorted(pair, key=direction_key)
        names = [stage.domain.direction_name(keep),
                 stage.domain.direction_name(drop)]
        stage = fold_stage(stage, keep, drop)
        sequence.record("fold", stage.domain, directions=names)

    sequence.final_map = stage
    logger.debug(f"🔍 Fold decomposition: {sequence.count('subdivide')} "
                 f"subdivisions, {sequence.count('fold')} folds")
    return sequence
