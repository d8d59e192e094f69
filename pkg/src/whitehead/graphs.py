"""
Local, stable and ideal Whitehead graphs.

Local graphs have one node per direction at a vertex and one edge per taken
turn there. Stable graphs restrict a local graph to the directions fixed by
the rotationless power; the ideal graph is the disjoint union of the stable
graphs over principal vertices.
"""
from dataclasses import dataclass, field

import networkx as nx

from src.graphmap.graph_map import GraphMap
from src.graphmap.matrices import primitivity_class, transition_matrix
from src.utils.errors import IdealGraphUndefined, NotTrainTrack, PNPFound
from src.utils.logger import setup_logging
from src.whitehead.pnp import PNPKind, PNPStatus, expanding_data, pnp_search
from src.whitehead.turns import (
    Turn, direction_map, is_illegal, rotationless_power, taken_turns,
)

logger = setup_logging("whitehead")


def _iterate(mapping: dict, power: int) -> dict:
    result = {key: key for key in mapping}
    for _ in range(power):
        result = {key: mapping[value] for key, value in result.items()}
    return result


def fixed_directions(g: GraphMap, power: int | None = None
                     ) -> dict[int, frozenset[int]]:
    """Fixed vertices of g^power and the Dg^power-fixed directions there."""
    power = power or rotationless_power(g)
    dg = _iterate(direction_map(g), power)
    vertex_map = _iterate(dict(enumerate(g.vertex_images)), power)
    graph = g.graph
    return {
        v: frozenset(d for d in graph.directions_at(v) if dg[d] == d)
        for v in range(graph.num_vertices) if vertex_map[v] == v
    }


def principal_vertices(g: GraphMap, power: int | None = None
                       ) -> frozenset[int]:
    """Fixed vertices with at least three fixed directions."""
    return frozenset(v for v, dirs in fixed_directions(g, power).items()
                     if len(dirs) >= 3)


def gate_count(g: GraphMap, vertex: int) -> int:
    """Number of gates: classes of directions joined by illegal turns."""
    dg = direction_map(g)
    directions = g.graph.directions_at(vertex)
    classes = nx.Graph()
    classes.add_nodes_from(directions)
    for i, d1 in enumerate(directions):
        for d2 in directions[i + 1:]:
            if is_illegal(Turn.of(d1, d2), dg):
                classes.add_edge(d1, d2)
    return nx.number_connected_components(classes)


@dataclass
class WhiteheadGraphs:
    power: int
    local: dict[int, nx.Graph]
    stable: dict[int, nx.Graph]
    gates: dict[int, int] = field(default_factory=dict)

    def local_connected(self) -> bool:
        return all(nx.is_connected(lw) for lw in self.local.values()
                   if lw.number_of_nodes() > 0)

    def to_dict(self, g: GraphMap) -> dict:
        graph = g.graph

        def describe(w: nx.Graph) -> dict:
            return {
                "vertices": [graph.direction_name(d)
                             for d in sorted(w.nodes, key=abs)],
                "edges": sorted(
                    Turn.of(a, b).name(graph) for a, b in w.edges),
                "connected": w.number_of_nodes() > 0
                and nx.is_connected(w),
            }

        return {
            "rotationless_power": self.power,
            "local": {str(v): {**describe(w), "gates": self.gates.get(v)}
                      for v, w in self.local.items()},
            "stable": {str(v): describe(w) for v, w in self.stable.items()},
        }


def whitehead_graphs(g: GraphMap, power: int | None = None
                     ) -> WhiteheadGraphs:
    power = power or rotationless_power(g)
    graph = g.graph
    turns = [t for t in taken_turns(g) if not t.is_degenerate]
    local = {}
    for v in range(graph.num_vertices):
        lw = nx.Graph()
        lw.add_nodes_from(graph.directions_at(v))
        lw.add_edges_from((t.first, t.second) for t in turns
                          if graph.initial(t.first) == v)
        local[v] = lw
    fixed = fixed_directions(g, power)
    stable = {v: local[v].subgraph(fixed[v]).copy()
              for v in sorted(principal_vertices(g, power))}
    gates = {v: gate_count(g, v) for v in range(graph.num_vertices)}
    return WhiteheadGraphs(power, local, stable, gates)


@dataclass(frozen=True)
class IdealWhiteheadGraph:
    """Components of the disjoint union of stable Whitehead graphs."""

    components: tuple[nx.Graph, ...]
    power: int
    provisional: bool = False

    @property
    def sizes(self) -> list[int]:
        return [c.number_of_nodes() for c in self.components]

    @property
    def all_triangles(self) -> bool:
        return all(c.number_of_nodes() == 3 and c.number_of_edges() == 3
                   for c in self.components)


def ideal_whitehead_graph(g: GraphMap, pnp: PNPStatus | None = None,
                          power: int | None = None,
                          whitehead: WhiteheadGraphs | None = None,
                          **search) -> IdealWhiteheadGraph:
    """
    :param pnp: A previous search result; a fresh search runs when omitted.
    :raises IdealGraphUndefined: Unless g is an expanding irreducible train
        track map.
    :raises PNPFound: If the representative has a periodic Nielsen path.
    """
    if not primitivity_class(transition_matrix(g)).is_irreducible:
        raise IdealGraphUndefined("transition matrix is reducible")
    try:
        expanding_data(g)
    except NotTrainTrack as e:
        raise IdealGraphUndefined(str(e)) from e
    power = power or rotationless_power(g)
    if pnp is None:
        pnp = pnp_search(g, power=power, **search)
    if pnp.kind is PNPKind.FOUND:
        raise PNPFound(pnp.path)
    whitehead = whitehead or whitehead_graphs(g, power)
    components = []
    for sw in whitehead.stable.values():
        for nodes in sorted(nx.connected_components(sw),
                            key=lambda c: min(c, key=abs)):
            components.append(sw.subgraph(nodes).copy())
    ideal = IdealWhiteheadGraph(
        tuple(components), power,
        provisional=pnp.kind is PNPKind.INCONCLUSIVE)
    logger.debug(f"🔍 Ideal Whitehead graph sizes {ideal.sizes}")
    return ideal
