"""
Finite marked metric graphs.

Edges are numbered from 1. A half-edge (direction) is a signed edge number:
``+k`` runs along edge k from its origin, ``-k`` runs backwards from its
terminus. Edge paths are tuples of half-edges, so the free reduction helpers
of ``src.freegroup.words`` apply to them unchanged.
"""
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Sequence

import networkx as nx

from src.freegroup.automorphisms import FreeAutomorphism, invert, is_basis
from src.freegroup.words import (
    Word, ALPHABET, inverse_letters, reduce_letters,
)
from src.utils.errors import ParseError, ValidationError

VOLUME_TOLERANCE = 1e-12

Path = tuple[int, ...]


@dataclass(frozen=True)
class Edge:
    name: str
    origin: int
    terminus: int
    length: float = 1.0


@dataclass(frozen=True)
class MarkedGraph:
    """
    A connected graph with edge lengths, a basepoint and a marking.

    ``marking[i]`` is a closed edge path at the basepoint realizing the
    i-th generator of F_r.
    """

    num_vertices: int
    edges: tuple[Edge, ...]
    basepoint: int
    marking: tuple[Path, ...]

    # -- combinatorics -----------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.marking)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def edge(self, half_edge: int) -> Edge:
        return self.edges[abs(half_edge) - 1]

    def initial(self, half_edge: int) -> int:
        edge = self.edge(half_edge)
        return edge.origin if half_edge > 0 else edge.terminus

    def terminal(self, half_edge: int) -> int:
        edge = self.edge(half_edge)
        return edge.terminus if half_edge > 0 else edge.origin

    def half_edges(self) -> list[int]:
        return [h for k in range(1, self.num_edges + 1) for h in (k, -k)]

    def directions_at(self, vertex: int) -> list[int]:
        return sorted((h for h in self.half_edges()
                       if self.initial(h) == vertex),
                      key=direction_key)

    def valence(self, vertex: int) -> int:
        return len(self.directions_at(vertex))

    def betti_number(self) -> int:
        return self.num_edges - self.num_vertices + 1

    def path_end(self, path: Path, start: int) -> int:
        return self.terminal(path[-1]) if path else start

    def is_path(self, path: Path) -> bool:
        return all(self.terminal(a) == self.initial(b)
                   for a, b in zip(path, path[1:]))

    def length_of(self, path: Path) -> float:
        return sum(self.edge(h).length for h in path)

    @property
    def volume(self) -> float:
        return sum(edge.length for edge in self.edges)

    def multigraph(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(self.num_vertices))
        for index, edge in enumerate(self.edges, start=1):
            graph.add_edge(edge.origin, edge.terminus, key=index)
        return graph

    def is_connected(self) -> bool:
        return self.num_vertices > 0 and nx.is_connected(self.multigraph())

    # -- names -------------------------------------------------------------

    def direction_name(self, half_edge: int) -> str:
        return self.edge(half_edge).name + ("+" if half_edge > 0 else "-")

    def half_edge_name(self, half_edge: int) -> str:
        name = self.edge(half_edge).name
        return name if half_edge > 0 else name.upper()

    def path_string(self, path: Path) -> str:
        names = [self.half_edge_name(h) for h in path]
        if all(len(edge.name) == 1 for edge in self.edges):
            return "".join(names)
        return " ".join(names)

    def parse_path(self, text: str) -> Path:
        lookup = {}
        for index, edge in enumerate(self.edges, start=1):
            lookup[edge.name] = index
            lookup[edge.name.upper()] = -index
        tokens = text.split()
        if len(tokens) == 1 and tokens[0] not in lookup:
            tokens = list(tokens[0])
        try:
            return tuple(lookup[token] for token in tokens)
        except KeyError as e:
            raise ParseError(f"unknown edge {e} in path '{text}'") from e

    # -- marking -----------------------------------------------------------

    @cached_property
    def _tree(self) -> tuple[frozenset, dict[int, Path]]:
        """Spanning tree edges and tree paths from the basepoint."""
        graph = self.multigraph()
        tree_edges = frozenset(
            key for _, _, key in nx.minimum_spanning_edges(
                graph, algorithm="kruskal", keys=True, data=False))
        paths = {self.basepoint: ()}
        frontier = [self.basepoint]
        while frontier:
            vertex = frontier.pop(0)
            for h in self.directions_at(vertex):
                end = self.terminal(h)
                if abs(h) in tree_edges and end not in paths:
                    paths[end] = paths[vertex] + (h,)
                    frontier.append(end)
        return tree_edges, paths

    def tree_path(self, vertex: int) -> Path:
        return self._tree[1][vertex]

    @cached_property
    def _generator_edges(self) -> dict[int, int]:
        """Non-tree edge number -> index of its tree-basis generator."""
        tree_edges = self._tree[0]
        others = [k for k in range(1, self.num_edges + 1)
                  if k not in tree_edges]
        return {k: i for i, k in enumerate(others, start=1)}

    def tree_word(self, closed_path: Path) -> Word:
        """Express a closed path at the basepoint in the tree basis."""
        generators = self._generator_edges
        letters = [generators[abs(h)] * (1 if h > 0 else -1)
                   for h in closed_path if abs(h) in generators]
        return Word(len(generators), reduce_letters(letters))

    @cached_property
    def marking_coordinates(self) -> FreeAutomorphism:
        """x_i -> tree-basis word of the i-th marking loop."""
        return FreeAutomorphism(self.rank, tuple(
            self.tree_word(path) for path in self.marking))

    @cached_property
    def _inverse_coordinates(self) -> FreeAutomorphism:
        return invert(self.marking_coordinates)

    def loop_word(self, closed_path: Path) -> Word:
        """
        The element of F_r represented by a closed path, conjugated to the
        basepoint along the spanning tree.
        """
        start = self.initial(closed_path[0]) if closed_path \
            else self.basepoint
        tail = self.tree_path(start)
        based = reduce_letters(tail + tuple(closed_path)
                               + inverse_letters(tail))
        word = self.tree_word(based)
        return self._inverse_coordinates(word)

    def realize(self, word: Word) -> Path:
        """Closed reduced path at the basepoint spelling ``word``."""
        path: list[int] = []
        for letter in word.letters:
            loop = self.marking[abs(letter) - 1]
            path.extend(loop if letter > 0 else inverse_letters(loop))
        return reduce_letters(path)

    def subgraph_bases(self, edge_numbers) -> list[tuple[Word, ...]]:
        """
        Free bases of the components spanned by some edges, each loop
        conjugated to the basepoint along the spanning tree.
        """
        sub = nx.MultiGraph()
        for k in edge_numbers:
            edge = self.edges[k - 1]
            sub.add_edge(edge.origin, edge.terminus, key=k)
        bases = []
        for nodes in sorted(nx.connected_components(sub), key=min):
            component = sub.subgraph(nodes)
            tree = {key for _, _, key in nx.minimum_spanning_edges(
                component, algorithm="kruskal", keys=True, data=False)}
            root = min(nodes)
            paths = {root: ()}
            frontier = [root]
            while frontier:
                vertex = frontier.pop(0)
                for h in self.directions_at(vertex):
                    if abs(h) in tree and self.terminal(h) not in paths:
                        paths[self.terminal(h)] = paths[vertex] + (h,)
                        frontier.append(self.terminal(h))
            loops = []
            for k in sorted(key for _, _, key in component.edges(keys=True)):
                if k in tree:
                    continue
                edge = self.edges[k - 1]
                loop = paths[edge.origin] + (k,) + \
                    inverse_letters(paths[edge.terminus])
                loops.append(self.loop_word(reduce_letters(loop)))
            bases.append(tuple(loops))
        return bases

    # -- validation --------------------------------------------------------

    def validate(self, outer_space_point: bool = False) -> "MarkedGraph":
        """
        Check connectivity, Betti number and the marking.

        :raises ValidationError: On the first violated invariant.
        """
        if not self.is_connected():
            raise ValidationError("graph is not connected")
        if self.betti_number() != self.rank:
            raise ValidationError(
                f"first Betti number {self.betti_number()} differs from the "
                f"marking rank {self.rank}")
        for index, path in enumerate(self.marking, start=1):
            if not path or not self.is_path(path):
                raise ValidationError(f"marking loop {index} is not a path")
            if self.initial(path[0]) != self.basepoint or \
                    self.terminal(path[-1]) != self.basepoint:
                raise ValidationError(
                    f"marking loop {index} is not closed at the basepoint")
            if reduce_letters(path) != tuple(path):
                raise ValidationError(f"marking loop {index} is not reduced")
        certificate = is_basis(self.marking_coordinates.images)
        if not certificate.is_basis:
            raise ValidationError(
                f"marking does not generate pi_1: {certificate.witness}")
        if any(edge.length <= 0 for edge in self.edges):
            raise ValidationError("edge lengths must be positive")
        if outer_space_point:
            low = [v for v in range(self.num_vertices) if self.valence(v) < 3]
            if low:
                raise ValidationError(f"vertices {low} have valence < 3")
            if abs(self.volume - 1.0) > VOLUME_TOLERANCE:
                raise ValidationError(f"volume {self.volume} is not 1")
        return self

    # -- construction ------------------------------------------------------

    def with_lengths(self, lengths: Sequence[float]) -> "MarkedGraph":
        edges = tuple(replace(edge, length=float(length))
                      for edge, length in zip(self.edges, lengths))
        return replace(self, edges=edges)

    def lengths(self) -> list[float]:
        return [edge.length for edge in self.edges]

    @classmethod
    def rose(cls, rank: int, lengths: Sequence[float] | None = None
             ) -> "MarkedGraph":
        if lengths is None:
            lengths = [1.0 / rank] * rank
        names = ALPHABET if rank <= len(ALPHABET) else None
        edges = tuple(
            Edge(names[i] if names else f"e{i + 1}", 0, 0, float(lengths[i]))
            for i in range(rank))
        return cls(1, edges, 0, tuple((i,) for i in range(1, rank + 1)))

    @classmethod
    def from_dict(cls, payload: dict) -> "MarkedGraph":
        """
        Parse the graph JSON format::

            {"vertices": 2, "edges": [{"id": "e1", "from": 0, "to": 1,
             "length": 0.25}, ...], "basepoint": 0, "marking": ["e1 E2"]}
        """
        try:
            num_vertices = int(payload["vertices"])
            raw_edges = payload["edges"]
            uniform = 1.0 / len(raw_edges)
            edges = tuple(
                Edge(str(item["id"]).lower(), int(item["from"]),
                     int(item["to"]), float(item.get("length", uniform)))
                for item in raw_edges)
            basepoint = int(payload.get("basepoint", 0))
            raw_marking = payload["marking"]
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
            raise ParseError(f"malformed graph JSON: {e}") from e
        for index, edge in enumerate(edges):
            for end in (edge.origin, edge.terminus):
                if not 0 <= end < num_vertices:
                    raise ParseError(
                        f"field 'edges[{index}]': vertex {end} out of range")
        skeleton = cls(num_vertices, edges, basepoint, ())
        marking = tuple(skeleton.parse_path(text) for text in raw_marking)
        return replace(skeleton, marking=marking).validate()

    def to_dict(self) -> dict:
        return {
            "vertices": self.num_vertices,
            "edges": [{"id": e.name, "from": e.origin, "to": e.terminus,
                       "length": e.length} for e in self.edges],
            "basepoint": self.basepoint,
            "marking": [" ".join(self.half_edge_name(h) for h in path)
                        for path in self.marking],
        }


def direction_key(half_edge: int) -> tuple[int, int]:
    """Order directions as e1+, e1-, e2+, ..."""
    return abs(half_edge), 0 if half_edge > 0 else 1
