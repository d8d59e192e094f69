import math

import networkx as nx
import numpy as np
import pytest

from src.graphmap.graph_map import rose_map
from src.graphmap.matrices import (
    PrimitivityClass, characteristic_polynomial, pf_data, pf_eigenvalue,
    pf_eigenvector, primitivity_class, transition_matrix,
)
from src.utils.errors import Reducible

PHI3_MATRIX = [[0, 1, 0], [0, 0, 1], [1, 1, 0]]
PLASTIC = 1.3247179572447460


def test_transition_matrices(phi3, fibonacci):
    assert transition_matrix(rose_map(fibonacci)).tolist() == [[1, 1], [1, 0]]
    assert transition_matrix(rose_map(phi3)).tolist() == PHI3_MATRIX


def test_row_sums_are_image_lengths(random_automorphisms):
    for phi in random_automorphisms(3, 20):
        matrix = transition_matrix(rose_map(phi))
        assert matrix.sum(axis=1).tolist() == \
            [len(image) for image in phi.images]


def test_pf_eigenvalues():
    assert pf_eigenvalue(np.eye(2), require_irreducible=False) == \
        pytest.approx(1.0)
    golden = (1 + math.sqrt(5)) / 2
    assert pf_eigenvalue(np.array([[1, 1], [1, 0]])) == \
        pytest.approx(golden, abs=1e-9)
    assert pf_eigenvalue(np.array(PHI3_MATRIX)) == \
        pytest.approx(PLASTIC, abs=1e-9)


def test_pf_eigenvector_is_normalized_and_fixed():
    matrix = np.array(PHI3_MATRIX, dtype=float)
    eigenvalue, vector = pf_data(matrix)
    assert vector.sum() == pytest.approx(1.0)
    assert np.allclose(matrix @ vector, eigenvalue * vector, atol=1e-8)
    assert (pf_eigenvector(matrix) > 0).all()


def test_equal_row_sums_give_the_row_sum():
    matrix = np.array([[2, 1], [1, 2]])
    assert pf_eigenvalue(matrix) == pytest.approx(3.0)


def test_reducible_matrices_raise():
    with pytest.raises(Reducible):
        pf_eigenvalue(np.eye(2))


def test_primitivity_examples():
    reducible = primitivity_class(np.eye(2, dtype=int))
    assert reducible.kind is PrimitivityClass.REDUCIBLE
    assert reducible.witness == frozenset({0})
    assert primitivity_class(np.array([[0, 1], [1, 0]])).kind is \
        PrimitivityClass.IRREDUCIBLE_NOT_PRIMITIVE
    assert primitivity_class(np.array(PHI3_MATRIX)).kind is \
        PrimitivityClass.PRIMITIVE


def test_primitivity_agrees_with_brute_force(rng):
    for _ in range(200):
        n = int(rng.integers(1, 6))
        matrix = rng.integers(0, 2, size=(n, n))
        kind = primitivity_class(matrix).kind
        digraph = nx.DiGraph()
        digraph.add_nodes_from(range(n))
        digraph.add_edges_from(zip(*np.nonzero(matrix)))
        strongly = nx.is_strongly_connected(digraph)
        power = np.eye(n, dtype=np.int64)
        positive = False
        for _ in range(n * n - 2 * n + 2):
            power = ((power @ matrix) > 0).astype(np.int64)
            positive = positive or bool(power.all())
        if kind is PrimitivityClass.PRIMITIVE:
            assert positive
        elif kind is PrimitivityClass.IRREDUCIBLE_NOT_PRIMITIVE:
            assert not positive and strongly
        else:
            assert not positive


def test_characteristic_polynomial():
    assert characteristic_polynomial(np.array(PHI3_MATRIX)) == [1, 0, -1, -1]
    assert characteristic_polynomial(np.array([[1, 1], [1, 0]])) == \
        [1, -1, -1]
