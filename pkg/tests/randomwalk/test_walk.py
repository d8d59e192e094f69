import numpy as np
import pytest

from src.freegroup.automorphisms import FreeAutomorphism, power
from src.randomwalk.distribution import nielsen_distribution, point_mass
from src.randomwalk.walk import (
    iterate_walk, sample_steps, sample_walk, trial_rng,
)
from src.utils.errors import ValidationError, WalkTruncated


def test_point_mass_walk_is_a_power(phi3, rng):
    walk = sample_walk(point_mass(phi3), 3, rng)
    assert walk == [phi3, power(phi3, 2), power(phi3, 3)]


def test_identity_walk(rng):
    identity = FreeAutomorphism.identity(3)
    assert sample_walk(point_mass(identity), 5, rng) == [identity] * 5


def test_walks_are_reproducible():
    mu = nielsen_distribution(3)
    first = sample_walk(mu, 20, trial_rng(42, 7))
    assert first == sample_walk(mu, 20, trial_rng(42, 7))
    assert first != sample_walk(mu, 20, trial_rng(42, 8))


def test_prefix_property():
    mu = nielsen_distribution(3)
    long = sample_walk(mu, 30, trial_rng(5, 0))
    assert sample_walk(mu, 10, trial_rng(5, 0)) == long[:10]


def test_steps_follow_the_weights():
    mu = nielsen_distribution(2, positive_only=True)
    steps = sample_steps(mu, 40_000, np.random.default_rng(1))
    counts = np.bincount(steps, minlength=len(mu)) / 40_000
    assert counts == pytest.approx(mu.probabilities, abs=0.02)


def test_letter_budget(fibonacci, rng):
    with pytest.raises(WalkTruncated) as info:
        sample_walk(point_mass(fibonacci), 20, rng, letter_budget=50)
    # |phi^k| is the Fibonacci number F_(k+3)
    assert info.value.step == 7
    assert info.value.letters == 55
    assert len(sample_walk(point_mass(fibonacci), 20, rng,
                           letter_budget=None)) == 20


def test_walk_length_must_be_positive(rng):
    with pytest.raises(ValidationError):
        list(iterate_walk(nielsen_distribution(2), 0, rng))
