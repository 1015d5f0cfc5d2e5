import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import frechet_bruteforce

from sketchmocap import frechet_distance

THREE_VS_TWO_A = [(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]
THREE_VS_TWO_B = [(0.0, 1.0), (2.0, 1.0)]


def test_identical_polylines_give_zero():
    pts = [(0.0, 0.0), (3.0, 4.0), (10.0, -2.0)]
    assert frechet_distance(pts, pts) == 0.0


def test_single_points_forced_pairing():
    assert frechet_distance([(0.0, 0.0)], [(3.0, 4.0)]) == 5.0


def test_three_vs_two_point_fixture():
    # expected value frozen from the exhaustive-coupling oracle
    expected = frechet_bruteforce(THREE_VS_TWO_A, THREE_VS_TWO_B)
    assert abs(expected - np.sqrt(2.0)) < 1e-12
    assert abs(frechet_distance(THREE_VS_TWO_A, THREE_VS_TWO_B) - np.sqrt(2.0)) < 1e-9


def test_matches_bruteforce_on_random_pairs():
    rng = np.random.default_rng(42)
    for _ in range(60):
        n, m = rng.integers(1, 8, size=2)
        a = rng.uniform(-10, 10, size=(n, 2))
        b = rng.uniform(-10, 10, size=(m, 2))
        assert abs(frechet_distance(a, b) - frechet_bruteforce(a, b)) <= 1e-9


def test_empty_polyline_rejected():
    with pytest.raises(ValueError):
        frechet_distance([], [(0.0, 0.0)])


coords = st.floats(-100, 100)
polylines = st.lists(st.tuples(coords, coords), min_size=1, max_size=12).map(np.array)


@settings(max_examples=60, deadline=None)
@given(polylines, polylines)
def test_symmetry_is_exact(a, b):
    assert frechet_distance(a, b) == frechet_distance(b, a)


@settings(max_examples=60, deadline=None)
@given(polylines)
def test_self_distance_is_zero(a):
    assert frechet_distance(a, a) == 0.0


@settings(max_examples=60, deadline=None)
@given(polylines, polylines, st.tuples(coords, coords))
def test_translation_equivariance(a, b, delta):
    d = np.array(delta)
    base = frechet_distance(a, b)
    moved = frechet_distance(a + d, b + d)
    assert abs(base - moved) <= 1e-9


@settings(max_examples=60, deadline=None)
@given(polylines, polylines)
def test_endpoints_lower_bound(a, b):
    # first and last points are always coupled
    lower = max(np.linalg.norm(a[0] - b[0]), np.linalg.norm(a[-1] - b[-1]))
    assert frechet_distance(a, b) >= lower - 1e-12
