"""
Directions, turns and the derivative map Dg.

A direction is a half-edge (signed edge number) read as a germ at its
initial vertex. A turn is an unordered pair of directions at one vertex,
stored in direction order.
"""
from dataclasses import dataclass
from math import lcm

import networkx as nx

from src.graphmap.graph_map import GraphMap
from src.graphmap.marked_graph import MarkedGraph, Path, direction_key


@dataclass(frozen=True)
class Turn:
    first: int
    second: int

    @classmethod
    def of(cls, d1: int, d2: int) -> "Turn":
        low, high = sorted((d1, d2), key=direction_key)
        return cls(low, high)

    @property
    def is_degenerate(self) -> bool:
        return self.first == self.second

    def name(self, graph: MarkedGraph) -> str:
        return (f"{{{graph.direction_name(self.first)},"
                f"{graph.direction_name(self.second)}}}")

    def sort_key(self) -> tuple:
        return direction_key(self.first), direction_key(self.second)


def direction_map(g: GraphMap) -> dict[int, int]:
    """Dg: each direction goes to the first direction of its image."""
    dg = {}
    for h in g.domain.half_edges():
        image = g.image(h)
        if not image:
            raise ValueError(
                f"direction {g.domain.direction_name(h)} has a trivial image")
        dg[h] = image[0]
    return dg


def turn_image(turn: Turn, dg: dict[int, int]) -> Turn:
    return Turn.of(dg[turn.first], dg[turn.second])


def turns_in_path(path: Path) -> list[Turn]:
    """Turns crossed at the interior vertices of an edge path."""
    return [Turn.of(-a, b) for a, b in zip(path, path[1:])]


def is_illegal(turn: Turn, dg: dict[int, int]) -> bool:
    """True when some iterate of Dg makes the turn degenerate."""
    seen = set()
    while turn not in seen:
        if turn.is_degenerate:
            return True
        seen.add(turn)
        turn = turn_image(turn, dg)
    return False


def taken_turns_with_depth(g: GraphMap) -> dict[Turn, int]:
    """
    Closure of the turns crossed by edge images under Dg.

    Depth 0 marks turns crossed by some g(e); a turn of depth k first
    appears in an image g^(k+1)(e).
    """
    dg = direction_map(g)
    depth: dict[Turn, int] = {}
    frontier = []
    for path in g.edge_images:
        for turn in turns_in_path(path):
            if turn not in depth:
                depth[turn] = 0
                frontier.append(turn)
    while frontier:
        turn = frontier.pop(0)
        image = turn_image(turn, dg)
        if image not in depth:
            depth[image] = depth[turn] + 1
            frontier.append(image)
    return depth


def taken_turns(g: GraphMap) -> frozenset[Turn]:
    return frozenset(taken_turns_with_depth(g))


def _functional_cycles(mapping: dict) -> list[list]:
    graph = nx.DiGraph()
    graph.add_edges_from(mapping.items())
    return list(nx.simple_cycles(graph))


def periodic_directions(g: GraphMap) -> frozenset[int]:
    return frozenset(d for cycle in _functional_cycles(direction_map(g))
                     for d in cycle)


def rotationless_power(g: GraphMap) -> int:
    """
    Smallest k such that g^k fixes every periodic direction and periodic
    vertex: the lcm of the cycle lengths of Dg and of the vertex map.
    """
    cycles = _functional_cycles(direction_map(g)) + \
        _functional_cycles(dict(enumerate(g.vertex_images)))
    return lcm(1, *(len(cycle) for cycle in cycles))
