"""
Transition matrices and their Perron-Frobenius data.

Rows and columns are indexed by unoriented edges (0-based here, edge k+1 in
the graph); entry (e, f) counts the crossings of f in either direction by the
image of e.
"""
from dataclasses import dataclass
from enum import Enum

import networkx as nx
import numpy as np

from src.graphmap.graph_map import GraphMap
from src.utils.errors import Reducible
from src.utils.logger import setup_logging

logger = setup_logging("graphmap")

DEFAULT_TOLERANCE = 1e-10
DEFAULT_MAX_ITERATIONS = 100_000


class PrimitivityClass(Enum):
    PRIMITIVE = "Primitive"
    IRREDUCIBLE_NOT_PRIMITIVE = "IrreducibleNotPrimitive"
    REDUCIBLE = "Reducible"


@dataclass(frozen=True)
class PrimitivityResult:
    kind: PrimitivityClass
    witness: frozenset[int] = frozenset()

    @property
    def is_irreducible(self) -> bool:
        return self.kind is not PrimitivityClass.REDUCIBLE


def transition_matrix(g: GraphMap) -> np.ndarray:
    """Nonnegative integer matrix of edge crossings; needs a self-map."""
    if g.domain.num_edges != g.codomain.num_edges:
        raise ValueError("transition matrices need a self-map")
    n = g.domain.num_edges
    matrix = np.zeros((n, n), dtype=np.int64)
    for e, path in enumerate(g.edge_images):
        for half_edge in path:
            matrix[e, abs(half_edge) - 1] += 1
    return matrix


def support_digraph(matrix: np.ndarray) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(range(matrix.shape[0]))
    rows, cols = np.nonzero(matrix)
    graph.add_edges_from(zip(rows.tolist(), cols.tolist()))
    return graph


def invariant_witness(matrix: np.ndarray) -> frozenset[int] | None:
    """First proper, nonempty, reachability-closed edge set, if any."""
    n = matrix.shape[0]
    graph = support_digraph(matrix)
    for e in range(n):
        closure = nx.descendants(graph, e) | {e}
        if len(closure) < n:
            return frozenset(closure)
    if n == 1 and matrix[0, 0] == 0:
        return frozenset()
    return None


def primitivity_class(matrix: np.ndarray) -> PrimitivityResult:
    """
    Classify a square nonnegative matrix.

    Primitivity is decided by positivity of M^k for k up to the Wielandt
    bound n^2 - 2n + 2.
    """
    matrix = np.asarray(matrix)
    witness = invariant_witness(matrix)
    if witness is not None:
        return PrimitivityResult(PrimitivityClass.REDUCIBLE, witness)
    n = matrix.shape[0]
    support = (matrix > 0).astype(np.int64)
    power = support.copy()
    for _ in range(n * n - 2 * n + 2):
        if power.all():
            return PrimitivityResult(PrimitivityClass.PRIMITIVE)
        power = ((power @ support) > 0).astype(np.int64)
    return PrimitivityResult(PrimitivityClass.IRREDUCIBLE_NOT_PRIMITIVE)


def pf_data(matrix: np.ndarray,
            tolerance: float = DEFAULT_TOLERANCE,
            max_iterations: int = DEFAULT_MAX_ITERATIONS,
            require_irreducible: bool = True
            ) -> tuple[float, np.ndarray]:
    """
    Perron-Frobenius eigenvalue and right eigenvector (sum 1).

    Power iteration runs on M + I from the all-ones vector, which is
    primitive whenever M is irreducible; it stops when the Collatz-Wielandt
    bounds agree to ``tolerance`` relatively.

    :raises Reducible: If ``require_irreducible`` and M is reducible.
    """
    matrix = np.asarray(matrix, dtype=float)
    if require_irreducible:
        witness = invariant_witness(matrix)
        if witness is not None:
            raise Reducible(sorted(witness))
    n = matrix.shape[0]
    shifted = matrix + np.eye(n)
    vector = np.ones(n)
    low = high = 0.0
    for _ in range(max_iterations):
        image = shifted @ vector
        ratios = image / vector
        low, high = float(ratios.min()), float(ratios.max())
        vector = image / image.max()
        if high - low <= tolerance * high:
            break
    else:
        logger.warning(f"⚠️ Power iteration hit the cap of {max_iterations} "
                       f"iterations (bounds {low}, {high})")
    eigenvalue = (low + high) / 2 - 1.0
    return eigenvalue, vector / vector.sum()


def pf_eigenvalue(matrix: np.ndarray, **kwargs) -> float:
    """PF eigenvalue of an irreducible nonnegative matrix."""
    return pf_data(matrix, **kwargs)[0]


def pf_eigenvector(matrix: np.ndarray, **kwargs) -> np.ndarray:
    return pf_data(matrix, **kwargs)[1]


def characteristic_polynomial(matrix: np.ndarray) -> list[int]:
    """Integer coefficients of det(tI - M), leading coefficient first."""
    return [int(round(c)) for c in np.poly(np.asarray(matrix, dtype=float))]
