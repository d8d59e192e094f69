"""
Candidate loops: embedded circles, figure-eights and barbells.

The Lipschitz distance out of a point is realized by the stretch of one of
these loops, and each of them crosses every edge at most twice.
"""
from dataclasses import dataclass
from itertools import combinations

from src.freegroup.words import inverse_letters
from src.graphmap.marked_graph import MarkedGraph, Path

CIRCLE = "circle"
FIGURE_EIGHT = "figure-eight"
BARBELL = "barbell"


@dataclass(frozen=True)
class CandidateLoop:
    path: Path
    shape: str

    def name(self, graph: MarkedGraph) -> str:
        return graph.path_string(self.path)


def _vertices(graph: MarkedGraph, cycle: Path) -> list[int]:
    return [graph.initial(h) for h in cycle]


def _rotate(graph: MarkedGraph, cycle: Path, vertex: int) -> Path:
    start = _vertices(graph, cycle).index(vertex)
    return cycle[start:] + cycle[:start]


def embedded_circles(graph: MarkedGraph) -> list[Path]:
    """Simple cycles, one closed path per edge set, from the lowest vertex."""
    seen: set[frozenset[int]] = set()
    circles: list[Path] = []

    def extend(start: int, vertex: int, path: Path, visited: set[int]):
        for h in graph.directions_at(vertex):
            if path and h == -path[-1]:
                continue
            end = graph.terminal(h)
            if end == start:
                cycle = path + (h,)
                key = frozenset(abs(x) for x in cycle)
                if key not in seen:
                    seen.add(key)
                    circles.append(cycle)
            elif end > start and end not in visited:
                extend(start, end, path + (h,), visited | {end})

    for start in range(graph.num_vertices):
        extend(start, start, (), {start})
    return circles


def _connecting_paths(graph: MarkedGraph, source: set[int],
                      target: set[int]) -> list[Path]:
    """Embedded paths from ``source`` to ``target`` meeting both only at
    their endpoints."""
    found = []

    def extend(vertex: int, path: Path, visited: set[int]):
        for h in graph.directions_at(vertex):
            if path and h == -path[-1]:
                continue
            end = graph.terminal(h)
            if end in target:
                found.append(path + (h,))
            elif end not in source and end not in visited:
                extend(end, path + (h,), visited | {end})

    for start in sorted(source):
        extend(start, (), {start})
    return found


def candidates(graph: MarkedGraph) -> list[CandidateLoop]:
    circles = embedded_circles(graph)
    loops = [CandidateLoop(c, CIRCLE) for c in circles]
    for c1, c2 in combinations(circles, 2):
        v1, v2 = set(_vertices(graph, c1)), set(_vertices(graph, c2))
        common = v1 & v2
        if len(common) == 1:
            v = common.pop()
            first, second = _rotate(graph, c1, v), _rotate(graph, c2, v)
            loops.append(CandidateLoop(first + second, FIGURE_EIGHT))
            loops.append(CandidateLoop(first + inverse_letters(second),
                                       FIGURE_EIGHT))
        elif not common:
            for bar in _connecting_paths(graph, v1, v2):
                first = _rotate(graph, c1, graph.initial(bar[0]))
                second = _rotate(graph, c2, graph.terminal(bar[-1]))
                back = inverse_letters(bar)
                loops.append(CandidateLoop(first + bar + second + back,
                                           BARBELL))
                loops.append(CandidateLoop(
                    first + bar + inverse_letters(second) + back, BARBELL))
    return loops
