import pytest

from src.graphmap.graph_map import induced_automorphism, rose_map
from src.outerspace.distance import sym_distance
from src.outerspace.fold_path import fold_path, fold_path_points
from src.outerspace.points import outer_space_point, twist_marking
from src.utils.errors import NotTrainTrack


@pytest.mark.parametrize("name", ["fibonacci", "phi3"])
def test_fold_path_is_geodesic(name, request):
    g = rose_map(request.getfixturevalue(name))
    path = fold_path(g)
    assert len(path.points) >= 2
    for point in path.points:
        outer_space_point(point)
    assert sum(path.increments()) == \
        pytest.approx(path.expected_length, abs=1e-6)


@pytest.mark.parametrize("name", ["fibonacci", "phi3"])
def test_fold_path_closes_up_to_the_twist(name, request):
    g = rose_map(request.getfixturevalue(name))
    path = fold_path(g)
    twisted = twist_marking(path.points[0], induced_automorphism(g))
    assert sym_distance(path.points[-1], twisted) == \
        pytest.approx(0.0, abs=1e-6)


def test_zero_stages(phi3):
    points = fold_path_points(rose_map(phi3), stages=0)
    assert len(points) == 1
    assert points[0].volume == pytest.approx(1.0)


def test_fold_path_needs_a_train_track(not_train_track):
    with pytest.raises(NotTrainTrack):
        fold_path(rose_map(not_train_track))
