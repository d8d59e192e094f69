from src.freegroup.automorphisms import (
    FreeAutomorphism, apply, compose, invert, is_basis, power,
    same_outer_class,
)
from src.freegroup.words import Word, reduce

__all__ = [
    "FreeAutomorphism", "Word", "apply", "compose", "invert", "is_basis",
    "power", "reduce", "same_outer_class",
]
