"""
Stallings folding of labeled graphs.

A wedge of loops spelling a tuple of words is folded until no vertex carries
two half-edges with the same label. Each edge also carries a word in the
formal tuple generators ``y_1..y_k`` so that the product along every closed
path at the basepoint spells that path's label with ``y_i`` replaced by the
i-th word. When the folded graph is the rose, the edge labeled ``x_i`` spells
``x_i`` in terms of the tuple, which is how automorphisms are inverted.
"""
from dataclasses import dataclass, field

from src.freegroup.words import inverse_letters, reduce_letters


@dataclass
class _Edge:
    origin: int
    terminus: int
    label: int
    yword: tuple[int, ...] = ()


@dataclass(frozen=True)
class FoldCertificate:
    """Outcome of folding a word tuple."""

    is_basis: bool
    folds: int
    vertices: int
    edges: int
    witness: str = ""


@dataclass
class StallingsGraph:
    rank: int
    basepoint: int = 0
    edges: dict[int, _Edge] = field(default_factory=dict)
    folds: int = 0
    rank_lost: bool = False
    _next_vertex: int = 1
    _next_edge: int = 0

    @classmethod
    def wedge(cls, rank: int, words) -> "StallingsGraph":
        """Build the wedge of loops at vertex 0 spelling ``words``."""
        graph = cls(rank=rank)
        for index, letters in enumerate(words, start=1):
            letters = tuple(letters)
            previous = graph.basepoint
            for position, letter in enumerate(letters):
                last = position == len(letters) - 1
                target = graph.basepoint if last else graph._new_vertex()
                yword = ((index if letter > 0 else -index),) \
                    if position == 0 else ()
                if letter > 0:
                    graph._add_edge(previous, target, letter, yword)
                else:
                    graph._add_edge(target, previous, -letter, yword)
                previous = target
        return graph

    def _new_vertex(self) -> int:
        vertex = self._next_vertex
        self._next_vertex += 1
        return vertex

    def _add_edge(self, origin, terminus, label, yword=()):
        self.edges[self._next_edge] = _Edge(origin, terminus, label,
                                            tuple(yword))
        self._next_edge += 1

    def vertices(self) -> set[int]:
        found = {self.basepoint}
        for edge in self.edges.values():
            found.update((edge.origin, edge.terminus))
        return found

    def half_edges_at(self, vertex: int):
        """Yield ``(edge_id, forward, read_label)`` for half-edges at vertex."""
        for edge_id, edge in self.edges.items():
            if edge.origin == vertex:
                yield edge_id, True, edge.label
            if edge.terminus == vertex:
                yield edge_id, False, -edge.label

    def _read(self, edge_id: int, forward: bool):
        edge = self.edges[edge_id]
        if forward:
            return edge.terminus, edge.yword
        return edge.origin, inverse_letters(edge.yword)

    def _conjugate_vertex(self, vertex: int, by: tuple[int, ...]):
        """Move the y-coordinate of ``vertex``; closed paths elsewhere keep
        their values."""
        inverse = inverse_letters(by)
        for edge in self.edges.values():
            if edge.origin == vertex:
                edge.yword = reduce_letters(by + edge.yword)
            if edge.terminus == vertex:
                edge.yword = reduce_letters(edge.yword + inverse)

    def _merge_vertex(self, source: int, target: int):
        for edge in self.edges.values():
            if edge.origin == source:
                edge.origin = target
            if edge.terminus == source:
                edge.terminus = target

    def _find_fold(self):
        for vertex in sorted(self.vertices()):
            seen = {}
            for edge_id, forward, label in self.half_edges_at(vertex):
                if label in seen and seen[label][0] != edge_id:
                    return vertex, seen[label], (edge_id, forward)
                seen.setdefault(label, (edge_id, forward))
        return None

    def fold_once(self) -> bool:
        """Perform one fold; return False when the graph is folded."""
        found = self._find_fold()
        if found is None:
            return False
        vertex, (edge1, forward1), (edge2, forward2) = found
        end1, y1 = self._read(edge1, forward1)
        end2, y2 = self._read(edge2, forward2)
        self.folds += 1

        if end1 == end2:
            # parallel edges: the fold kills a loop of the graph
            self.rank_lost = True
            del self.edges[edge2]
            return True

        special = {vertex, self.basepoint}
        if end2 not in special:
            self._conjugate_vertex(
                end2, reduce_letters(inverse_letters(y1) + y2))
            merge, keep = end2, end1
        elif end1 not in special:
            self._conjugate_vertex(
                end1, reduce_letters(inverse_letters(y2) + y1))
            merge, keep = end1, end2
        else:
            # {end1, end2} = {vertex, basepoint} with vertex != basepoint
            if end1 == vertex:
                shift = reduce_letters(inverse_letters(y2) + y1)
            else:
                shift = reduce_letters(inverse_letters(y1) + y2)
            self._conjugate_vertex(vertex, shift)
            merge, keep = vertex, self.basepoint
        del self.edges[edge2]
        self._merge_vertex(merge, keep)
        return True

    def fold(self) -> "StallingsGraph":
        while self.fold_once():
            pass
        return self

    def core(self) -> "StallingsGraph":
        """Prune valence-one vertices (the basepoint included)."""
        changed = True
        while changed:
            changed = False
            valence: dict[int, int] = {}
            for edge in self.edges.values():
                valence[edge.origin] = valence.get(edge.origin, 0) + 1
                valence[edge.terminus] = valence.get(edge.terminus, 0) + 1
            for edge_id, edge in list(self.edges.items()):
                if valence[edge.origin] == 1 or valence[edge.terminus] == 1:
                    del self.edges[edge_id]
                    changed = True
                    break
        incident = {e.origin for e in self.edges.values()} | \
            {e.terminus for e in self.edges.values()}
        if incident and self.basepoint not in incident:
            self.basepoint = min(incident)
        return self

    def is_rose(self) -> bool:
        """True when the graph is the rose of the full rank."""
        labels = sorted(edge.label for edge in self.edges.values())
        return (self.vertices() == {self.basepoint}
                and labels == list(range(1, self.rank + 1)))

    def certificate(self) -> FoldCertificate:
        ok = not self.rank_lost and self.is_rose()
        if ok:
            witness = ""
        elif self.rank_lost:
            witness = "fold identified two parallel edges (rank drops)"
        else:
            witness = (f"folded graph has {len(self.vertices())} vertices "
                       f"and {len(self.edges)} edges, not the rose")
        return FoldCertificate(ok, self.folds, len(self.vertices()),
                               len(self.edges), witness)

    def generator_expressions(self) -> dict[int, tuple[int, ...]]:
        """For a rose, map each generator to its word in the tuple."""
        return {edge.label: edge.yword for edge in self.edges.values()}

    def canonical_form(self) -> tuple:
        """
        Labeled-isomorphism invariant of the graph, minimised over root
        vertices. Two core graphs share it iff their subgroups are conjugate.
        """
        best = None
        for root in sorted(self.vertices()):
            numbering = {root: 0}
            order = [root]
            code = []
            for current in order:
                outgoing = sorted(
                    ((label, edge_id, forward)
                     for edge_id, forward, label in self.half_edges_at(current)),
                    key=lambda item: (abs(item[0]), item[0] < 0))
                for label, edge_id, forward in outgoing:
                    end, _ = self._read(edge_id, forward)
                    if end not in numbering:
                        numbering[end] = len(numbering)
                        order.append(end)
                    code.append((numbering[current], label, numbering[end]))
            code = tuple(code)
            if best is None or code < best[0]:
                best = (code, root)
        return best if best else ((), self.basepoint)


def fold_words(rank: int, words) -> StallingsGraph:
    return StallingsGraph.wedge(rank, words).fold()
