"""Elementary Nielsen automorphisms and random products of them."""
import numpy as np

from src.freegroup.automorphisms import FreeAutomorphism, compose
from src.freegroup.words import Word, reduce


def transvection(rank: int, target: int, by: int,
                 on_right: bool = True) -> FreeAutomorphism:
    """
    ``x_target -> x_target x_by`` (or ``x_by x_target``); ``by`` may be
    negative to multiply by an inverse.
    """
    if target == abs(by):
        raise ValueError("a transvection needs two distinct generators")
    images = list(FreeAutomorphism.identity(rank).images)
    letters = (target, by) if on_right else (by, target)
    images[target - 1] = reduce(rank, letters)
    return FreeAutomorphism(rank, tuple(images))


def inversion(rank: int, target: int) -> FreeAutomorphism:
    images = list(FreeAutomorphism.identity(rank).images)
    images[target - 1] = Word(rank, (-target,))
    return FreeAutomorphism(rank, tuple(images))


def permutation(rank: int, order: list[int]) -> FreeAutomorphism:
    """``x_i -> x_order[i-1]``."""
    if sorted(order) != list(range(1, rank + 1)):
        raise ValueError(f"{order} is not a permutation of 1..{rank}")
    return FreeAutomorphism(rank, tuple(Word(rank, (j,)) for j in order))


def nielsen_generators(rank: int,
                       positive_only: bool = False) -> list[FreeAutomorphism]:
    """All transvections (and inversions unless ``positive_only``)."""
    generators = []
    signs = (1,) if positive_only else (1, -1)
    for target in range(1, rank + 1):
        for by in range(1, rank + 1):
            if by == target:
                continue
            for sign in signs:
                for on_right in (True, False):
                    generators.append(
                        transvection(rank, target, sign * by, on_right))
    if not positive_only:
        generators.extend(inversion(rank, i) for i in range(1, rank + 1))
    return generators


def random_nielsen_product(rank: int, length: int,
                           rng: np.random.Generator,
                           positive_only: bool = False) -> FreeAutomorphism:
    """Product of ``length`` generators drawn uniformly with ``rng``."""
    generators = nielsen_generators(rank, positive_only)
    result = FreeAutomorphism.identity(rank)
    for index in rng.integers(0, len(generators), size=length):
        result = compose(result, generators[int(index)])
    return result
