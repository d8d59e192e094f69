from fractions import Fraction

import pytest
import yaml

from src.randomwalk.seeds import (
    SeedSearch, certify_principal, load_representatives, load_seeds,
    resolve_principal_report, resolve_principal_seed, save_seed,
    search_principal,
)
from src.utils.errors import SeedNotFound, ValidationError
from src.whitehead.classify import Verdict


def test_seed_cache_round_trip(tmp_path, phi3):
    path = str(tmp_path / "seeds.yaml")
    assert load_seeds(path) == {}
    save_seed(phi3, path)
    assert load_seeds(path) == {3: ["b", "c", "ab"]}
    with open(path, encoding="utf-8") as handle:
        assert yaml.safe_load(handle) == {"principal": {3: ["b", "c", "ab"]}}


def test_representative_round_trip(tmp_path, principal_seed, principal_map):
    path = str(tmp_path / "seeds.yaml")
    save_seed(principal_seed, path, principal_map)
    assert load_seeds(path) == {3: ["c", "A", "bc"]}
    assert load_representatives(path) == {3: principal_map}
    # replacing the seed drops the stale representative
    save_seed(principal_seed, path)
    assert load_representatives(path) == {}


def test_shipped_seed_certifies_without_search():
    phi = resolve_principal_seed(3, "config/seeds.yaml", allow_search=False)
    assert [str(w) for w in phi.images] == ["c", "A", "bc"]
    report = resolve_principal_report(3, "config/seeds.yaml",
                                      allow_search=False)
    assert report.sizes == [3, 3, 3]
    assert report.index.index == Fraction(-3, 2)
    assert report.classification.principal
    assert report.classification.ageometric is Verdict.CERTIFIED_YES
    assert report.fully_irreducible is Verdict.CERTIFIED_YES


def test_shipped_representative_matches_fixture(principal_map):
    assert load_representatives("config/seeds.yaml") == {3: principal_map}


def test_non_principal_seed_is_rejected(tmp_path, phi3):
    path = str(tmp_path / "seeds.yaml")
    save_seed(phi3, path)
    assert certify_principal(phi3) is None
    with pytest.raises(SeedNotFound):
        resolve_principal_seed(3, path, allow_search=False)


def test_mismatched_representative_is_not_trusted(tmp_path, phi3,
                                                   principal_map):
    path = str(tmp_path / "seeds.yaml")
    save_seed(phi3, path, principal_map)
    assert certify_principal(phi3, representative=principal_map) is None
    with pytest.raises(SeedNotFound):
        resolve_principal_seed(3, path, allow_search=False)


def test_rank_two_has_no_principal_seed(tmp_path):
    with pytest.raises(ValidationError):
        resolve_principal_seed(2, str(tmp_path / "seeds.yaml"))


def test_search_settings():
    search = SeedSearch.from_config(
        {"seeds": {"attempts": 5, "file": "config/seeds.yaml"}})
    assert search == SeedSearch(attempts=5)
    with pytest.raises(ValidationError):
        SeedSearch.from_config({"seeds": {"tries": 5}})
    with pytest.raises(ValidationError):
        SeedSearch.from_config({"seeds": {"min_length": 9, "max_length": 3}})


def test_unsuccessful_search_raises(tmp_path):
    with pytest.raises(SeedNotFound):
        resolve_principal_seed(3, str(tmp_path / "seeds.yaml"),
                               search=SeedSearch(attempts=0))


@pytest.mark.slow
def test_search_finds_and_caches_a_principal_seed(tmp_path):
    path = str(tmp_path / "seeds.yaml")
    phi = resolve_principal_seed(3, path)
    report = certify_principal(phi)
    assert report is not None
    assert report.sizes == [3, 3, 3]
    assert load_seeds(path)[3] == [str(w) for w in phi.images]
    assert load_representatives(path)[3] == report.train_track.map
    assert search_principal(3).phi == phi
