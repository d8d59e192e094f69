"""Maps between marked graphs sending edges to edge paths."""
from dataclasses import dataclass, replace

from src.freegroup.automorphisms import FreeAutomorphism, is_basis
from src.freegroup.words import inverse_letters, reduce_letters
from src.graphmap.marked_graph import MarkedGraph, Path
from src.utils.errors import (
    DegenerateEdge, NotHomotopyEquivalence, ParseError, RankMismatch,
    ValidationError,
)


@dataclass(frozen=True)
class GraphMap:
    domain: MarkedGraph
    codomain: MarkedGraph
    vertex_images: tuple[int, ...]
    edge_images: tuple[Path, ...]

    @property
    def is_self_map(self) -> bool:
        return self.domain == self.codomain

    @property
    def graph(self) -> MarkedGraph:
        """The underlying graph of a self-map."""
        return self.domain

    def image(self, half_edge: int) -> Path:
        path = self.edge_images[abs(half_edge) - 1]
        return path if half_edge > 0 else inverse_letters(path)

    def image_of_path(self, path: Path) -> Path:
        out: list[int] = []
        for half_edge in path:
            out.extend(self.image(half_edge))
        return reduce_letters(out)

    def image_lengths(self) -> list[int]:
        return [len(path) for path in self.edge_images]

    def validate(self) -> "GraphMap":
        """
        Check endpoint compatibility of every edge image.

        :raises ValidationError: If an image does not run between the images
            of its edge's endpoints.
        """
        if len(self.edge_images) != self.domain.num_edges:
            raise ValidationError("one image per domain edge is required")
        for index, path in enumerate(self.edge_images, start=1):
            edge = self.domain.edges[index - 1]
            start = self.vertex_images[edge.origin]
            end = self.vertex_images[edge.terminus]
            if path:
                if not self.codomain.is_path(path) or \
                        self.codomain.initial(path[0]) != start or \
                        self.codomain.terminal(path[-1]) != end:
                    raise ValidationError(
                        f"image of edge {edge.name} does not run from "
                        f"{start} to {end}")
            elif start != end:
                raise ValidationError(
                    f"edge {edge.name} collapses between distinct vertices")
        return self

    def with_graph(self, graph: MarkedGraph) -> "GraphMap":
        """Replace both domain and codomain of a self-map (e.g. lengths)."""
        return replace(self, domain=graph, codomain=graph)

    def describe(self) -> dict:
        graph = self.codomain
        return {
            graph.half_edge_name(index): graph.path_string(path)
            for index, path in enumerate(self.edge_images, start=1)
        }

    def to_dict(self) -> dict:
        return {"graph": self.graph.to_dict(),
                "vertex_images": list(self.vertex_images),
                "edge_images": self.describe()}

    @classmethod
    def from_dict(cls, payload: dict) -> "GraphMap":
        """
        Parse a self-map written as::

            {"graph": {...graph JSON...}, "vertex_images": [2, 0, 1],
             "edge_images": {"a": "D", "b": "Da", ...}}

        :raises ParseError: On missing fields or unknown edges.
        :raises ValidationError: If an image does not fit its edge.
        """
        try:
            graph = MarkedGraph.from_dict(payload["graph"])
            vertex_images = tuple(int(v) for v in payload["vertex_images"])
            raw_images = payload["edge_images"]
            images = tuple(graph.parse_path(str(raw_images[edge.name]))
                           for edge in graph.edges)
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"malformed graph map: {e}") from e
        if len(vertex_images) != graph.num_vertices or \
                not all(0 <= v < graph.num_vertices for v in vertex_images):
            raise ValidationError("one vertex image per vertex is required")
        return cls(graph, graph, vertex_images, images).validate()


def rose_map(phi: FreeAutomorphism) -> GraphMap:
    """
    The standard representative of ``phi`` on the rose with lengths 1/r.
    """
    rose = MarkedGraph.rose(phi.rank)
    return GraphMap(rose, rose, (0,),
                    tuple(image.letters for image in phi.images))


def tighten(g: GraphMap, allow_degenerate: bool = False) -> GraphMap:
    """
    Freely reduce every edge image.

    :param allow_degenerate: Keep empty images instead of raising.
    :raises DegenerateEdge: If an edge image reduces to a point.
    """
    images = tuple(reduce_letters(path) for path in g.edge_images)
    if not allow_degenerate:
        for index, path in enumerate(images, start=1):
            if not path:
                raise DegenerateEdge(index)
    return replace(g, edge_images=images)


def compose_maps(outer: GraphMap, inner: GraphMap) -> GraphMap:
    """``outer o inner``, tightened (degenerate images allowed)."""
    if inner.codomain != outer.domain:
        raise RankMismatch("maps are not composable")
    return GraphMap(
        inner.domain, outer.codomain,
        tuple(outer.vertex_images[v] for v in inner.vertex_images),
        tuple(outer.image_of_path(path) for path in inner.edge_images))


def map_power(g: GraphMap, k: int) -> GraphMap:
    if k < 1:
        raise ValueError("powers start at 1")
    result = g
    for _ in range(k - 1):
        result = compose_maps(g, result)
    return result


def iterate_edge(g: GraphMap, half_edge: int, k: int) -> Path:
    """``g^k`` applied to one edge, reduced after every step."""
    path: Path = (half_edge,)
    for _ in range(k):
        path = g.image_of_path(path)
    return path


def induced_automorphism(g: GraphMap) -> FreeAutomorphism:
    """
    Read the outer class of ``g`` from the markings: each domain marking loop
    is pushed through ``g`` and expressed in the codomain marking.

    :raises NotHomotopyEquivalence: If the traced images are not a basis.
    """
    if g.domain.rank != g.codomain.rank:
        raise RankMismatch("domain and codomain ranks differ")
    words = tuple(g.codomain.loop_word(g.image_of_path(loop))
                  for loop in g.domain.marking)
    certificate = is_basis(words)
    if not certificate.is_basis:
        raise NotHomotopyEquivalence(
            f"traced marking images {[str(w) for w in words]} are not a "
            f"basis: {certificate.witness}")
    return FreeAutomorphism(g.domain.rank, words)
