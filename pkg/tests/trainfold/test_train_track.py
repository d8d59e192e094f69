import numpy as np
import pytest

from src.freegroup.automorphisms import FreeAutomorphism, same_outer_class
from src.graphmap.graph_map import (
    induced_automorphism, iterate_edge, rose_map, tighten,
)
from src.graphmap.matrices import pf_data, primitivity_class, transition_matrix
from src.trainfold.moves import elementary_fold, normalize
from src.trainfold.train_track import (
    Outcome, find_train_track, fold_turn, is_train_track,
)
from src.whitehead.turns import Turn

PLASTIC = 1.3247179572447460
GOLDEN = (1 + 5 ** 0.5) / 2


def test_plastic_map_is_a_train_track(phi3):
    certificate = is_train_track(rose_map(phi3))
    assert certificate
    assert len(certificate.turns) == 7
    assert certificate.degenerate_turn is None


def test_degenerate_turn_and_iterate(not_train_track):
    g = rose_map(not_train_track)
    certificate = is_train_track(g)
    assert not certificate
    assert certificate.degenerate_turn == Turn.of(1, 1)
    assert certificate.iterate == 4

    # g^4(a) concatenated edge by edge cancels somewhere
    path = iterate_edge(g, 1, 3)
    raw = [h for step in path for h in g.image(step)]
    assert any(x == -y for x, y in zip(raw, raw[1:]))


@pytest.mark.parametrize("images, expected", [
    (["b", "c", "ab"], PLASTIC),
    (["ab", "a"], GOLDEN),
])
def test_train_track_found_directly(images, expected):
    result = find_train_track(FreeAutomorphism.from_strings(images))
    assert result.outcome is Outcome.TRAIN_TRACK
    assert result.found
    assert result.steps == 0
    assert result.eigenvalue == pytest.approx(expected, abs=1e-10)


def test_search_folds_illegal_turns(fibonacci):
    # the Fibonacci map conjugated by b: not a train track on the rose
    phi = FreeAutomorphism.from_strings(["ba", "baB"])
    assert same_outer_class(phi, fibonacci)
    assert not is_train_track(rose_map(phi))
    result = find_train_track(phi, check_moves=True)
    assert result.outcome is Outcome.TRAIN_TRACK
    assert result.steps >= 1
    assert is_train_track(result.map)
    assert same_outer_class(induced_automorphism(result.map), phi)
    assert result.eigenvalue == pytest.approx(GOLDEN, abs=1e-10)


def test_reduction_witness():
    phi = FreeAutomorphism.from_strings(["a", "b", "ca"])
    result = find_train_track(phi)
    assert result.outcome is Outcome.REDUCTION_WITNESS
    assert result.witness.edges == ("a", "b")
    assert result.witness.component_ranks == [2]
    assert result.witness.is_proper_free_factor
    assert result.to_dict()["witness"]["component_ranks"] == [2]


def test_zero_budget_is_inconclusive(not_train_track):
    result = find_train_track(not_train_track, max_steps=0)
    assert result.outcome is Outcome.INCONCLUSIVE
    assert result.steps == 0
    assert result.notes == ["move budget exhausted"]
    with pytest.raises(ValueError):
        find_train_track(not_train_track, max_steps=-1)


def test_moves_preserve_outer_class(random_automorphisms):
    # check_moves raises ValidationError on any drift
    for phi in random_automorphisms(3, 8, max_length=6):
        result = find_train_track(phi, max_steps=200, check_moves=True)
        if result.map is not None:
            assert same_outer_class(induced_automorphism(result.map), phi)


def test_trace_serializes():
    result = find_train_track(FreeAutomorphism.from_strings(["ba", "baB"]))
    payload = result.to_dict(include_trace=True)
    assert payload["outcome"] == "TrainTrack"
    assert len(payload["trace"]["steps"]) == len(result.trace)


def test_eigenvalue_never_grows_along_folds():
    g = normalize(tighten(rose_map(
        FreeAutomorphism.from_strings(["ba", "baB"])), allow_degenerate=True))
    previous = pf_data(transition_matrix(g))[0]
    for _ in range(50):
        if is_train_track(g):
            break
        turn = fold_turn(g)
        g = normalize(elementary_fold(g, turn.first, turn.second))
        matrix = transition_matrix(g)
        if not primitivity_class(matrix).is_irreducible:
            break
        current = pf_data(matrix)[0]
        assert current <= previous + 1e-9
        previous = current
    assert is_train_track(g)
    assert previous == pytest.approx(GOLDEN, abs=1e-9)


def test_random_rank_three_searches_finish_without_fold_errors(
        random_automorphisms):
    for phi in random_automorphisms(3, 20, max_length=8):
        result = find_train_track(phi, max_steps=300)
        assert not any("full folds" in note for note in result.notes)


def test_eigenvalue_matches_the_spectral_radius(random_automorphisms):
    found = 0
    for phi in random_automorphisms(3, 20, max_length=8):
        result = find_train_track(phi, max_steps=300)
        if result.outcome is not Outcome.TRAIN_TRACK:
            continue
        found += 1
        matrix = transition_matrix(result.map).astype(float)
        radius = max(abs(np.linalg.eigvals(matrix)))
        assert result.eigenvalue == pytest.approx(radius, abs=1e-9)
    assert found > 0
