from fractions import Fraction

import pytest

from src.freegroup.automorphisms import FreeAutomorphism
from src.graphmap.graph_map import rose_map
from src.utils.config_loader import AnalysisLimits
from src.utils.errors import ValidationError
from src.whitehead.analysis import analyze_automorphism, analyze_representative
from src.whitehead.classify import Verdict


def test_plastic_map_report(phi3):
    report = analyze_automorphism(phi3)
    assert report.sizes == [5]
    assert report.power == 6
    flags = report.classification
    assert flags.fully_irreducible is Verdict.CERTIFIED_YES
    assert flags.ageometric is Verdict.CERTIFIED_YES
    assert not flags.triangular

    payload = report.to_dict()
    assert payload["index"] == "-3/2"
    assert payload["k_list"] == [5]
    assert payload["characteristic_polynomial"] == [1, 0, -1, -1]
    assert payload["pnp_status"]["status"] == "NoneFoundUpToBound"
    assert payload["flags"]["fully_irreducible"] == "CertifiedYes"


def test_reducible_report():
    report = analyze_automorphism(FreeAutomorphism.from_strings(
        ["a", "b", "ca"]))
    assert report.fully_irreducible is Verdict.CERTIFIED_NO
    payload = report.to_dict()
    assert payload["index"] is None
    assert payload["flags"]["fully_irreducible_witness"]["edges"] == \
        ["a", "b"]


def test_exhausted_budget_is_unknown(not_train_track):
    report = analyze_automorphism(not_train_track, AnalysisLimits(max_steps=0))
    assert report.fully_irreducible is Verdict.UNKNOWN
    assert report.to_dict()["train_track"]["outcome"] == "Inconclusive"
    assert report.notes == ["move budget exhausted"]


def test_reports_are_deterministic(random_automorphisms):
    for phi in random_automorphisms(3, 5, max_length=8):
        assert analyze_automorphism(phi).to_dict() == \
            analyze_automorphism(phi).to_dict()


def test_report_carries_the_index(phi3):
    report = analyze_automorphism(phi3)
    assert report.index.index == Fraction(-3, 2)
    assert report.index.to_dict() == {
        "index": "-3/2", "k_list": [5], "rotationless_power": 6}
    assert analyze_automorphism(FreeAutomorphism.from_strings(
        ["a", "b", "ca"])).index is None


def test_supplied_representative(principal_seed, principal_map):
    report = analyze_representative(principal_seed, principal_map)
    assert report.train_track.notes == ["supplied representative"]
    assert report.power == 9
    assert report.sizes == [3, 3, 3]
    assert report.index.to_dict() == {
        "index": "-3/2", "k_list": [3, 3, 3], "rotationless_power": 9}
    flags = report.classification
    assert flags.fully_irreducible is Verdict.CERTIFIED_YES
    assert flags.triangular and flags.principal
    assert report.eigenvalue == pytest.approx(1.1673039782614187, abs=1e-9)
    payload = report.to_dict()
    assert payload["characteristic_polynomial"] == [1, 0, 0, 0, -1, -1]


def test_representative_must_match(phi3, principal_map):
    with pytest.raises(ValidationError):
        analyze_representative(phi3, principal_map)


def test_non_train_track_representative_falls_back(not_train_track):
    report = analyze_representative(not_train_track,
                                    rose_map(not_train_track))
    assert report.to_dict() == analyze_automorphism(not_train_track).to_dict()
