import json

import numpy as np
import pytest

from src.freegroup.automorphisms import FreeAutomorphism, invert
from src.randomwalk.distribution import (
    StepDistribution, load_distribution, nielsen_distribution, point_mass,
    reference_distribution, reflect, uniform,
)
from src.utils.errors import ParseError, RankMismatch, ValidationError

REFERENCE = "config/mu_reference.json"


def test_reference_file_loads():
    mu = load_distribution(REFERENCE)
    assert mu.rank == 3
    assert len(mu) == 4
    assert mu.probabilities.tolist() == [0.25] * 4
    assert mu.cumulative()[-1] == 1.0
    assert StepDistribution.from_dict(mu.to_dict()) == mu


def test_probabilities_must_sum_to_one(phi3):
    with pytest.raises(ValidationError):
        StepDistribution(3, ((phi3, 0.9),))
    with pytest.raises(ValidationError):
        StepDistribution(3, ((phi3, 1.5), (invert(phi3), -0.5)))
    with pytest.raises(ValidationError):
        StepDistribution(3, ())


def test_malformed_payloads(tmp_path):
    with pytest.raises(ParseError):
        StepDistribution.from_dict({"support": []})
    with pytest.raises(ParseError):
        StepDistribution.from_dict(
            {"rank": 2, "support": [{"images": ["ab", "b"]}]})
    with pytest.raises(ValidationError, match="support\\[0\\]"):
        StepDistribution.from_dict(
            {"rank": 2, "support": [{"images": ["a", "a"], "p": 1.0}]})
    broken = tmp_path / "mu.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(ParseError):
        load_distribution(str(broken))
    with pytest.raises(ParseError):
        load_distribution(str(tmp_path / "missing.json"))


def test_reflect_is_an_involution():
    mu = nielsen_distribution(3)
    assert reflect(reflect(mu)) == mu
    assert reflect(mu).probabilities.tolist() == mu.probabilities.tolist()


def test_constructors(phi3, fibonacci):
    assert len(nielsen_distribution(3)) == 27
    assert len(nielsen_distribution(3, positive_only=True)) == 12
    assert point_mass(phi3).cumulative().tolist() == [1.0]
    reference = reference_distribution(phi3, load_distribution(REFERENCE))
    assert len(reference) == 6
    assert np.allclose(reference.probabilities, 1 / 6)
    assert reference.automorphisms[1] == invert(phi3)
    with pytest.raises(RankMismatch):
        reference_distribution(fibonacci, load_distribution(REFERENCE))
    with pytest.raises(RankMismatch):
        uniform([phi3, fibonacci])


def test_json_file_round_trip(tmp_path, fibonacci):
    path = tmp_path / "mu.json"
    mu = uniform([fibonacci, FreeAutomorphism.identity(2)])
    path.write_text(json.dumps(mu.to_dict()), encoding="utf-8")
    assert load_distribution(str(path)) == mu
