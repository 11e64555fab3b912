import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.geometry.hull import ConvexPolygon
from src.geometry.regions import Disk, PolygonRegion, Rectangle, as_region
from src.models.errors import InvalidShape
from src.models.shapes import DiskShape, PolygonShape, RectangleShape


def test_rectangle_measures():
    rect = Rectangle.from_corner((1.0, 2.0), width=3.0, height=2.0)
    assert_allclose(rect.area, 6.0)
    assert_allclose(rect.diameter, math.sqrt(13.0))
    assert rect.bounding_box == (1.0, 2.0, 4.0, 4.0)


def test_polygon_signed_distance_inside_and_outside():
    square = as_region(RectangleShape())
    assert_allclose(square.signed_distance([(0.5, 0.5), (0.3, 0.1)]), [0.5, 0.1])
    # beyond a corner the distance is to the vertex, not to the edge lines
    assert_allclose(square.signed_distance([(2.0, 2.0)]), [-math.sqrt(2.0)])
    assert_allclose(square.boundary_distance([(2.0, 0.5)]), [1.0])


def test_disk_measures():
    disk = Disk(center=(1.0, -1.0), radius=2.0)
    assert_allclose(disk.area, 4.0 * math.pi)
    assert disk.diameter == 4.0
    assert_allclose(disk.signed_distance([(1.0, -1.0), (4.0, -1.0)]), [2.0, -1.0])
    assert list(disk.contains([(1.0, 0.9), (1.0, 1.1)])) == [True, False]


@pytest.mark.parametrize("radius", [0.0, -1.0, math.inf])
def test_invalid_disk(radius):
    with pytest.raises(InvalidShape):
        Disk(radius=radius)


def test_as_region_dispatch():
    assert isinstance(as_region(DiskShape()), Disk)
    poly = ConvexPolygon(vertices=np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]))
    assert isinstance(as_region(poly), PolygonRegion)
    tri = as_region(PolygonShape(vertices=((0.0, 0.0), (0.0, 1.0), (1.0, 0.0))))
    assert_allclose(tri.area, 0.5)


def test_non_convex_polygon_shape_is_rejected():
    dart = PolygonShape(vertices=((0.0, 0.0), (2.0, 0.0), (1.0, 0.5), (1.0, 2.0)))
    with pytest.raises(InvalidShape):
        as_region(dart)
