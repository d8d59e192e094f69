"""Rotationless index of an ideal Whitehead graph, in exact arithmetic."""
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from src.utils.errors import ValidationError


def rotationless_index(sizes: Sequence[int]) -> Fraction:
    """
    Sum of ``1 - k/2`` over the component sizes k.

    :raises ValidationError: If a component has fewer than three vertices.
    """
    small = [k for k in sizes if k < 3]
    if small:
        raise ValidationError(
            f"ideal Whitehead components need at least 3 vertices, got {small}")
    return sum((1 - Fraction(k, 2) for k in sizes), Fraction(0))


def format_fraction(value: Fraction) -> str:
    """Rationals are always written as p/q."""
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(text: str) -> Fraction:
    return Fraction(text)


@dataclass(frozen=True)
class IndexReport:
    index: Fraction
    sizes: tuple[int, ...]
    power: int

    @classmethod
    def from_sizes(cls, sizes: Sequence[int], power: int = 1
                   ) -> "IndexReport":
        return cls(rotationless_index(sizes), tuple(sizes), power)

    def to_dict(self) -> dict:
        return {"index": format_fraction(self.index),
                "k_list": list(self.sizes),
                "rotationless_power": self.power}
