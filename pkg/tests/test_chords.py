import pytest
from shapely.geometry import Point

from geopack import Side, chord_extension, shortest_path, side_of


def test_chord_reaches_boundary(square):
    path = shortest_path(square, (4, 4), (6, 6))
    chord = chord_extension(square, path)
    wp = chord.polyline.waypoints
    assert wp[0] == pytest.approx((0.0, 0.0), abs=1e-9)
    assert wp[-1] == pytest.approx((10.0, 10.0), abs=1e-9)


def test_chord_sides_square(square):
    chord = chord_extension(square, shortest_path(square, (5, 2), (5, 8)))
    # travelling upward, left is -x
    assert side_of(chord, (2, 5)) is Side.LEFT
    assert side_of(chord, (8, 5)) is Side.RIGHT
    assert side_of(chord, (5, 5)) is Side.ON


def test_chord_through_reflex_vertex(lshape):
    path = shortest_path(lshape, (3.5, 1.5), (1.5, 3.5))
    chord = chord_extension(lshape, path)
    wp = chord.polyline.waypoints
    assert (2.0, 2.0) in wp
    # both extension ends sit on the boundary
    for end in (wp[0], wp[-1]):
        assert lshape.shapely.exterior.distance(Point(end)) <= 1e-9
    assert side_of(chord, (0.5, 0.5)) is Side.LEFT
    assert side_of(chord, (3.9, 1.9)) is Side.RIGHT
    assert side_of(chord, (1.9, 3.8)) is Side.RIGHT
    assert side_of(chord, (2.0, 2.0)) is Side.ON


def test_chord_faces_partition_area(lshape):
    path = shortest_path(lshape, (3.5, 1.5), (1.5, 3.5))
    chord = chord_extension(lshape, path)
    total = chord._face_left.area + chord._face_right.area
    assert total == pytest.approx(lshape.area, rel=1e-6)
