from src.freegroup.words import Word
from src.graphmap.marked_graph import MarkedGraph
from src.outerspace.projection import free_factor, free_factor_projection


def test_rose_projections():
    factors = free_factor_projection(MarkedGraph.rose(3))
    assert len(factors) == 6
    assert [f.rank for f in factors] == [1, 1, 1, 2, 2, 2]
    assert {str(f) for f in factors if f.rank == 1} == {"<a>", "<b>", "<c>"}
    assert len(free_factor_projection(MarkedGraph.rose(2))) == 2


def test_theta_projection(theta_graph):
    factors = free_factor_projection(theta_graph)
    assert len(factors) == 3
    assert all(f.rank == 1 for f in factors)


def test_free_factors_up_to_conjugacy():
    a = free_factor(3, [Word.from_str("a", 3)])
    assert free_factor(3, [Word.from_str("bAB", 3)]).key == a.key
    assert free_factor(3, [Word.from_str("b", 3)]).key != a.key
    ab = free_factor(3, [Word.from_str("a", 3), Word.from_str("b", 3)])
    assert ab.rank == 2
    assert free_factor(3, [Word.from_str("ab", 3),
                           Word.from_str("b", 3)]).key == ab.key
