"""Projection of a point to the free factors carried by its subgraphs."""
from dataclasses import dataclass
from itertools import combinations

import networkx as nx

from src.freegroup.stallings import fold_words
from src.freegroup.words import (
    Word, inverse_letters, reduce_letters, shortlex_key,
)
from src.graphmap.marked_graph import MarkedGraph


@dataclass(frozen=True, order=True)
class FreeFactor:
    """A conjugacy class of free factors, keyed by its core graph."""

    key: tuple
    basis: tuple[Word, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __str__(self) -> str:
        return "<" + ", ".join(str(w) for w in self.basis) + ">"


def _basis_from_code(rank: int, code: tuple) -> tuple[Word, ...]:
    """Read a free basis off the canonical core code (BFS numbering)."""
    paths = {0: ()}
    tree = set()
    for origin, label, end in code:
        if end not in paths:
            paths[end] = paths[origin] + (label,)
            tree.add((origin, label, end) if label > 0
                     else (end, -label, origin))
    words = []
    for origin, label, end in code:
        if label < 0 or (origin, label, end) in tree:
            continue
        words.append(Word(rank, reduce_letters(
            paths[origin] + (label,) + inverse_letters(paths[end]))))
    return tuple(sorted(words, key=shortlex_key))


def free_factor(rank: int, words) -> FreeFactor:
    core = fold_words(rank, [w.letters for w in words]).core()
    code, _ = core.canonical_form()
    return FreeFactor(code, _basis_from_code(rank, code))


def _connected(graph: MarkedGraph, edge_numbers) -> bool:
    sub = nx.MultiGraph()
    for k in edge_numbers:
        edge = graph.edges[k - 1]
        sub.add_edge(edge.origin, edge.terminus, key=k)
    return nx.is_connected(sub)


def free_factor_projection(graph: MarkedGraph) -> list[FreeFactor]:
    """
    Conjugacy classes of the fundamental groups of proper connected
    subgraphs with nontrivial fundamental group, sorted by rank.
    """
    factors: dict[tuple, FreeFactor] = {}
    edges = range(1, graph.num_edges + 1)
    for size in range(1, graph.num_edges + 1):
        for subset in combinations(edges, size):
            if not _connected(graph, subset):
                continue
            (basis,) = graph.subgraph_bases(subset)
            if not 0 < len(basis) < graph.rank:
                continue
            factor = free_factor(graph.rank, basis)
            factors.setdefault(factor.key, factor)
    return sorted(factors.values(), key=lambda f: (f.rank, f.key))
