import pytest

from src.freegroup.words import Word
from src.graphmap.marked_graph import MarkedGraph, direction_key
from src.utils.errors import ParseError, ValidationError


def test_rose_is_an_outer_space_point():
    rose = MarkedGraph.rose(3)
    assert rose.rank == 3
    assert rose.betti_number() == 3
    assert rose.validate(outer_space_point=True) is rose
    assert rose.directions_at(0) == [1, -1, 2, -2, 3, -3]


def test_theta_graph(theta_graph):
    assert theta_graph.rank == 2
    assert theta_graph.valence(0) == theta_graph.valence(1) == 3
    assert theta_graph.volume == pytest.approx(1.0)
    theta_graph.validate(outer_space_point=True)


def test_loop_words_follow_the_marking(theta_graph):
    assert str(theta_graph.loop_word(theta_graph.parse_path("aB"))) == "a"
    assert str(theta_graph.loop_word(theta_graph.parse_path("aC"))) == "b"
    assert str(theta_graph.loop_word(theta_graph.parse_path("bC"))) == "Ab"


def test_realize_spells_words(theta_graph):
    path = theta_graph.realize(Word.from_str("ab", 2))
    assert theta_graph.path_string(path) == "aBaC"


def test_subgraph_bases(theta_graph):
    (basis,) = theta_graph.subgraph_bases([1, 2])
    assert len(basis) == 1
    assert str(basis[0]) in ("a", "A")
    rose = MarkedGraph.rose(3)
    assert rose.subgraph_bases([1, 3]) == [
        (Word.from_str("a", 3), Word.from_str("c", 3))]


def test_json_round_trip(theta_graph):
    assert MarkedGraph.from_dict(theta_graph.to_dict()) == theta_graph


def test_invalid_graphs():
    with pytest.raises(ParseError):
        MarkedGraph.from_dict({"vertices": 1, "edges": [
            {"id": "a", "from": 0, "to": 2}], "marking": ["a"]})
    with pytest.raises(ParseError):
        MarkedGraph.from_dict({"vertices": 1, "edges": [
            {"id": "a", "from": 0, "to": 0}], "marking": ["x"]})
    with pytest.raises(ValidationError):
        # marking misses the second loop
        MarkedGraph.from_dict({"vertices": 1, "edges": [
            {"id": "a", "from": 0, "to": 0},
            {"id": "b", "from": 0, "to": 0}], "marking": ["a", "a"]})
    with pytest.raises(ValidationError):
        MarkedGraph.rose(2, [0.5, 0.25]).validate(outer_space_point=True)


def test_direction_order():
    assert sorted([-2, 1, 2, -1], key=direction_key) == [1, -1, 2, -2]
