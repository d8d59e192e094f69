"""
Finitely supported step distributions on Out(F_r).

JSON layout::

    {"rank": 3, "support": [{"images": ["b", "c", "ab"], "p": 0.25}, ...]}
"""
import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from src.freegroup.automorphisms import FreeAutomorphism, invert
from src.freegroup.nielsen import nielsen_generators
from src.utils.errors import (
    FreeWalkError, ParseError, RankMismatch, ValidationError,
)
from src.utils.logger import setup_logging

logger = setup_logging("randomwalk")

MASS_TOLERANCE = 1e-9


@dataclass(frozen=True)
class StepDistribution:
    rank: int
    support: tuple[tuple[FreeAutomorphism, float], ...]

    def __post_init__(self):
        if not self.support:
            raise ValidationError("step distribution has empty support")
        for index, (phi, p) in enumerate(self.support):
            if phi.rank != self.rank:
                raise ValidationError(
                    f"support[{index}]: automorphism of rank {phi.rank} in a "
                    f"rank {self.rank} distribution")
            if not p > 0:
                raise ValidationError(
                    f"support[{index}]: probability {p} is not positive")
        total = sum(p for _, p in self.support)
        if abs(total - 1) > MASS_TOLERANCE:
            raise ValidationError(
                f"probabilities sum to {total:.12g}, expected 1")

    @property
    def automorphisms(self) -> list[FreeAutomorphism]:
        return [phi for phi, _ in self.support]

    @property
    def probabilities(self) -> np.ndarray:
        return np.array([p for _, p in self.support], dtype=float)

    def cumulative(self) -> np.ndarray:
        """CDF of the support order, with the last entry pinned to 1."""
        cdf = np.cumsum(self.probabilities)
        cdf[-1] = 1.0
        return cdf

    def __len__(self) -> int:
        return len(self.support)

    def to_dict(self) -> dict:
        return {"rank": self.rank,
                "support": [{"images": [str(w) for w in phi.images],
                             "p": p} for phi, p in self.support]}

    @classmethod
    def from_dict(cls, payload: dict) -> "StepDistribution":
        """
        :raises ParseError: If a field is missing or malformed.
        :raises ValidationError: If an entry is not an automorphism or the
            probabilities are not a distribution.
        """
        try:
            rank = int(payload["rank"])
            entries = list(payload["support"])
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"distribution needs 'rank' and 'support': {e}") \
                from e
        support = []
        for index, entry in enumerate(entries):
            try:
                images = [str(text) for text in entry["images"]]
                p = float(entry["p"])
            except (KeyError, TypeError, ValueError) as e:
                raise ParseError(f"support[{index}]: {e}") from e
            try:
                phi = FreeAutomorphism.from_dict(
                    {"rank": rank, "images": images})
            except ParseError as e:
                raise ParseError(f"support[{index}]: {e}") from e
            except FreeWalkError as e:
                raise ValidationError(
                    f"support[{index}] {tuple(images)}: {e}") from e
            support.append((phi, p))
        return cls(rank, tuple(support))


def uniform(automorphisms: Sequence[FreeAutomorphism]) -> StepDistribution:
    if not automorphisms:
        raise ValidationError("cannot build a uniform distribution on "
                              "nothing")
    rank = automorphisms[0].rank
    if any(phi.rank != rank for phi in automorphisms):
        raise RankMismatch("uniform support mixes ranks")
    p = 1.0 / len(automorphisms)
    return StepDistribution(rank, tuple((phi, p) for phi in automorphisms))


def point_mass(phi: FreeAutomorphism) -> StepDistribution:
    return StepDistribution(phi.rank, ((phi, 1.0),))


def reflect(mu: StepDistribution) -> StepDistribution:
    """The reflected measure: each weight moves to the inverse element."""
    return StepDistribution(
        mu.rank, tuple((invert(phi), p) for phi, p in mu.support))


def nielsen_distribution(rank: int,
                         positive_only: bool = False) -> StepDistribution:
    """Uniform on the elementary Nielsen generators."""
    return uniform(nielsen_generators(rank, positive_only))


def reference_distribution(principal: FreeAutomorphism,
                           base: StepDistribution) -> StepDistribution:
    """
    Uniform on ``principal``, its inverse and the support of ``base``.

    :raises RankMismatch: If the ranks differ.
    """
    if base.rank != principal.rank:
        raise RankMismatch(f"principal seed of rank {principal.rank} with a "
                           f"rank {base.rank} base distribution")
    return uniform([principal, invert(principal), *base.automorphisms])


def load_distribution(file_path: str) -> StepDistribution:
    """
    Read a distribution from a JSON file.

    :raises ParseError: If the file is missing or is not valid JSON.
    """
    try:
        with open(file_path, "r", encoding="utf-8") as handle:
            payload = json.load(handle)
    except (OSError, json.JSONDecodeError) as e:
        logger.error(f"❌ Cannot read distribution {file_path}: {e}")
        raise ParseError(f"{file_path}: {e}") from e
    mu = StepDistribution.from_dict(payload)
    logger.info(f"✅ Loaded rank {mu.rank} distribution with {len(mu)} "
                f"support elements from {file_path}")
    return mu
