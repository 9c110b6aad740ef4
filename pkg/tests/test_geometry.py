import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conespan import ConeScheme, GeometryError, Point, PointSet, angle_ccw, cone_index, euclidean_distance
from conespan.geometry import cone_of_angle

O = Point(0, 0.0, 0.0)
coord = st.floats(-1e3, 1e3, allow_nan=False)


def pt(x, y, i=1):
    return Point(i, x, y)


@pytest.mark.parametrize(
    "target, expected",
    [((1, 0), 0.0), ((0, 1), math.pi / 2), ((-1, -1), 5 * math.pi / 4), ((-1, 0), math.pi)],
)
def test_angle_examples(target, expected):
    assert angle_ccw(O, pt(*target)) == pytest.approx(expected, abs=1e-15)


def test_angle_just_below_positive_axis_stays_below_two_pi():
    a = angle_ccw(O, pt(1.0, -1e-300))
    assert 0.0 <= a < 2 * math.pi


def test_angle_degenerate():
    with pytest.raises(GeometryError, match="degenerate direction"):
        angle_ccw(O, pt(0.0, 0.0))


def test_cone_examples():
    six, five = ConeScheme(6), ConeScheme(5)
    assert cone_index(O, pt(1, 0), six) == 0
    assert cone_index(O, pt(0, 1), six) == 1
    assert cone_of_angle(2 * math.pi / 5, five) == 1
    assert cone_of_angle(math.nextafter(2 * math.pi, 0), five) == 4


def test_cone_of_coincident_points():
    with pytest.raises(GeometryError):
        cone_index(O, pt(0, 0), ConeScheme(6))


def test_cone_scheme_rejects_small_k():
    with pytest.raises(GeometryError):
        ConeScheme(2)


def test_distance_examples():
    assert euclidean_distance(O, pt(3, 4)) == 5.0
    assert euclidean_distance(O, Point(1, 0.0, 0.0)) == 0.0
    assert euclidean_distance(O, pt(252, 82)) == pytest.approx(math.sqrt(252**2 + 82**2), rel=1e-15)
    assert euclidean_distance(pt(252, 82), pt(130, 230)) == pytest.approx(math.sqrt(122**2 + 148**2), rel=1e-15)


def test_pointset_rejects_duplicates():
    with pytest.raises(GeometryError, match="coincident points"):
        PointSet.from_coords([(0, 0), (1, 1), (0, 0)])


def test_pointset_rejects_bad_ids_and_nonfinite():
    with pytest.raises(GeometryError):
        PointSet((Point(1, 0, 0),))
    with pytest.raises(GeometryError):
        Point(0, math.nan, 0)


@given(coord, coord, st.integers(3, 12))
def test_cone_index_in_range(x, y, k):
    assume((x, y) != (0.0, 0.0))
    i = cone_index(O, pt(x, y), ConeScheme(k))
    assert 0 <= i < k


@given(coord, coord)
def test_reverse_direction_differs_by_pi(x, y):
    assume(math.hypot(x, y) > 1e-6)
    a, b = pt(x, y), O
    diff = (angle_ccw(a, b) - angle_ccw(b, a)) % (2 * math.pi)
    assert diff == pytest.approx(math.pi, abs=1e-9)


@given(st.integers(3, 12), st.integers(0, 11), st.floats(0.05, 0.95), st.floats(0.1, 100.0))
def test_rotating_by_one_cone_moves_to_next_cone(k, i, frac, r):
    assume(i < k)
    scheme = ConeScheme(k)
    ang = (i + frac) * scheme.theta
    p = pt(r * math.cos(ang), r * math.sin(ang))
    q = pt(r * math.cos(ang + scheme.theta), r * math.sin(ang + scheme.theta))
    assert cone_index(O, q, scheme) == (cone_index(O, p, scheme) + 1) % k


@given(coord, coord, coord, coord)
def test_distance_symmetric(x1, y1, x2, y2):
    p, q = Point(0, x1, y1), Point(1, x2, y2)
    assert euclidean_distance(p, q) == euclidean_distance(q, p) >= 0.0
