import numpy as np
import pytest

from src.freegroup.automorphisms import is_basis
from src.freegroup.nielsen import (
    inversion, nielsen_generators, permutation, random_nielsen_product,
    transvection,
)


def test_elementary_moves():
    assert [str(w) for w in transvection(2, 1, 2).images] == ["ab", "b"]
    assert [str(w) for w in transvection(2, 1, -2, on_right=False).images] \
        == ["Ba", "b"]
    assert [str(w) for w in inversion(2, 2).images] == ["a", "B"]
    assert [str(w) for w in permutation(3, [2, 3, 1]).images] == \
        ["b", "c", "a"]


def test_invalid_moves_raise():
    with pytest.raises(ValueError):
        transvection(2, 1, -1)
    with pytest.raises(ValueError):
        permutation(3, [1, 1, 2])


def test_generator_counts():
    # r(r-1) ordered pairs, two sides, two signs, plus r inversions
    assert len(nielsen_generators(3)) == 3 * 2 * 2 * 2 + 3
    assert len(nielsen_generators(3, positive_only=True)) == 3 * 2 * 2
    assert all(g.is_positive()
               for g in nielsen_generators(3, positive_only=True))


def test_random_products_are_automorphisms_and_reproducible():
    first = random_nielsen_product(3, 8, np.random.default_rng(5))
    second = random_nielsen_product(3, 8, np.random.default_rng(5))
    assert first == second
    assert is_basis(first.images).is_basis
