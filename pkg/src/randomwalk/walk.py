"""Random walks ``w_n = g_1 g_2 ... g_n`` with i.i.d. steps."""
from typing import Iterator

import numpy as np

from src.freegroup.automorphisms import FreeAutomorphism, compose
from src.randomwalk.distribution import StepDistribution
from src.utils.errors import ValidationError, WalkTruncated

DEFAULT_LETTER_BUDGET = 1_000_000


def trial_rng(master_seed: int, trial: int) -> np.random.Generator:
    """Independent stream keyed on (master seed, trial index)."""
    return np.random.default_rng([int(master_seed), int(trial)])


def sample_steps(mu: StepDistribution, n: int,
                 rng: np.random.Generator) -> np.ndarray:
    """Support indices of ``n`` i.i.d. steps, drawn in one batch."""
    return np.searchsorted(mu.cumulative(), rng.random(n), side="right")


def iterate_walk(mu: StepDistribution, n: int, rng: np.random.Generator,
                 letter_budget: int | None = DEFAULT_LETTER_BUDGET
                 ) -> Iterator[FreeAutomorphism]:
    """
    Yield ``w_1, ..., w_n``.

    :param letter_budget: Largest total image length allowed for any
        ``w_k``; None disables the guard.
    :raises WalkTruncated: When ``w_k`` exceeds the budget.
    """
    if n < 1:
        raise ValidationError(f"walk length {n} must be >= 1")
    steps = mu.automorphisms
    current = FreeAutomorphism.identity(mu.rank)
    for k, index in enumerate(sample_steps(mu, n, rng), start=1):
        current = compose(current, steps[int(index)])
        letters = current.total_length()
        if letter_budget is not None and letters > letter_budget:
            raise WalkTruncated(k, letters)
        yield current


def sample_walk(mu: StepDistribution, n: int, rng: np.random.Generator,
                letter_budget: int | None = DEFAULT_LETTER_BUDGET
                ) -> list[FreeAutomorphism]:
    return list(iterate_walk(mu, n, rng, letter_budget))
