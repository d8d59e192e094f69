import os

import numpy as np
import pytest

# Keep test logs away from the application logs; set before src is imported
os.environ.setdefault("FREEWALK_LOG_DIR", os.path.join("logs", "tests"))

from src.freegroup.automorphisms import FreeAutomorphism  # noqa: E402
from src.freegroup.nielsen import random_nielsen_product  # noqa: E402
from src.graphmap.graph_map import GraphMap  # noqa: E402
from src.graphmap.marked_graph import MarkedGraph  # noqa: E402


@pytest.fixture
def phi3() -> FreeAutomorphism:
    """(a->b, b->c, c->ab): the worked rank-3 example."""
    return FreeAutomorphism.from_strings(["b", "c", "ab"])


@pytest.fixture
def fibonacci() -> FreeAutomorphism:
    return FreeAutomorphism.from_strings(["ab", "a"])


@pytest.fixture
def not_train_track() -> FreeAutomorphism:
    return FreeAutomorphism.from_strings(["ab", "A"])


@pytest.fixture
def rank2_pair() -> tuple[MarkedGraph, MarkedGraph]:
    """Roses with the identity marking, lengths (1/2, 1/2) and (1/3, 2/3)."""
    return MarkedGraph.rose(2, [0.5, 0.5]), \
        MarkedGraph.rose(2, [1 / 3, 2 / 3])


@pytest.fixture
def theta_graph() -> MarkedGraph:
    return MarkedGraph.from_dict({
        "vertices": 2,
        "edges": [{"id": "a", "from": 0, "to": 1, "length": 1 / 3},
                  {"id": "b", "from": 0, "to": 1, "length": 1 / 3},
                  {"id": "c", "from": 0, "to": 1, "length": 1 / 3}],
        "basepoint": 0,
        "marking": ["aB", "aC"],
    })


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240601)


@pytest.fixture
def random_automorphisms(rng):
    """Factory of random Nielsen products of a given rank."""
    def make(rank: int, count: int, max_length: int = 10,
             positive_only: bool = False) -> list[FreeAutomorphism]:
        return [random_nielsen_product(
            rank, int(rng.integers(1, max_length + 1)), rng, positive_only)
            for _ in range(count)]
    return make


@pytest.fixture
def principal_seed() -> FreeAutomorphism:
    """(a->c, b->A, c->bc): principal, index -3/2."""
    return FreeAutomorphism.from_strings(["c", "A", "bc"])


@pytest.fixture
def principal_map() -> GraphMap:
    """Train track representative of ``principal_seed`` on a three-vertex
    graph; each vertex carries one triangle of the ideal Whitehead graph."""
    return GraphMap.from_dict({
        "graph": {
            "vertices": 3,
            "edges": [{"id": "a", "from": 0, "to": 1, "length": 0.2},
                      {"id": "b", "from": 0, "to": 2, "length": 0.2},
                      {"id": "c", "from": 0, "to": 1, "length": 0.2},
                      {"id": "d", "from": 0, "to": 2, "length": 0.2},
                      {"id": "e", "from": 1, "to": 2, "length": 0.2}],
            "basepoint": 0,
            "marking": ["bD", "cA", "aeD"],
        },
        "vertex_images": [2, 0, 1],
        "edge_images": {"a": "D", "b": "Da", "c": "B", "d": "E", "e": "c"},
    })
