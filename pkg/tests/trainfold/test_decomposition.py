import pytest

from src.freegroup.automorphisms import FreeAutomorphism, same_outer_class
from src.graphmap.graph_map import induced_automorphism, rose_map
from src.trainfold.decomposition import fold_decomposition
from src.trainfold.moves import elementary_fold, normalize, subdivide
from src.trainfold.sequence import FoldSequence
from src.utils.errors import NotFoldable


def test_single_fold_decomposition():
    phi = FreeAutomorphism.from_strings(["ab", "b"])
    sequence = fold_decomposition(rose_map(phi))
    assert sequence.kinds() == ["subdivide", "fold"]
    assert sequence.steps[0].detail["pieces"] == 2
    assert same_outer_class(sequence.recompose(), phi)


def test_decomposition_recomposes(random_automorphisms):
    for phi in random_automorphisms(2, 10, max_length=6, positive_only=True):
        sequence = fold_decomposition(rose_map(phi))
        assert same_outer_class(sequence.recompose(), phi)
        assert len(sequence.graphs()) == len(sequence) + 1


def test_recompose_needs_a_decomposition(phi3):
    with pytest.raises(ValueError):
        FoldSequence(rose_map(phi3).graph).recompose()


def test_elementary_fold_preserves_outer_class(not_train_track):
    trace = FoldSequence(rose_map(not_train_track).graph)
    folded = elementary_fold(rose_map(not_train_track), 1, -2, trace)
    assert trace.kinds() == ["subdivide", "fold"]
    assert folded.graph.betti_number() == 2
    assert same_outer_class(induced_automorphism(folded), not_train_track)


def test_unfoldable_directions(not_train_track):
    g = rose_map(not_train_track)
    with pytest.raises(NotFoldable):
        elementary_fold(g, 1, 2)
    with pytest.raises(NotFoldable):
        subdivide(g, 2, 1)


def test_subdivide_and_normalize():
    g = rose_map(FreeAutomorphism.from_strings(["ab", "b"]))
    cut, first = subdivide(g, 1, 1)
    assert first == 1
    assert cut.graph.num_vertices == 2
    assert cut.graph.volume == pytest.approx(g.graph.volume)
    assert same_outer_class(induced_automorphism(cut),
                            induced_automorphism(g))
    smoothed = normalize(cut)
    assert smoothed.graph.num_vertices == 1
    assert same_outer_class(induced_automorphism(smoothed),
                            induced_automorphism(g))


def test_fold_recomputes_the_common_segment_after_a_cut(not_train_track):
    # after cutting a the images of a+ and b- agree in the new letters
    folded = elementary_fold(rose_map(not_train_track), 1, -2)
    assert folded.graph.num_vertices == 1
    assert sorted(len(path) for path in folded.edge_images) == [1, 2]
    assert same_outer_class(induced_automorphism(folded), not_train_track)


@pytest.mark.slow
@pytest.mark.parametrize("rank", [2, 3])
def test_decomposition_recomposes_at_scale(random_automorphisms, rank):
    for phi in random_automorphisms(rank, 25, max_length=8,
                                    positive_only=True):
        sequence = fold_decomposition(rose_map(phi))
        assert same_outer_class(sequence.recompose(), phi)
