from fractions import Fraction

import pytest

from mixspline.generators import tensor_grid
from mixspline.instances import weight_deficit_instance
from mixspline.mesh import build_from_faces, refine_face

HALF = Fraction(1, 2)


@pytest.fixture
def unit_square():
    return build_from_faces([(0, 0, 1, 1)])


@pytest.fixture
def grid2():
    return tensor_grid(2, 2)


@pytest.fixture
def refined_grid2():
    """2x2 grid on [0,2]^2 with the lower-left cell cross-split at its centre."""
    return refine_face(tensor_grid(2, 2), 0)


@pytest.fixture
def witness():
    return weight_deficit_instance()


def find_vertex(mesh, x, y):
    return next(v.id for v in mesh.vertices if v.x == Fraction(x) and v.y == Fraction(y))


def find_edge(mesh, p, q):
    a, b = find_vertex(mesh, *p), find_vertex(mesh, *q)
    return next(e.id for e in mesh.edges if {e.start, e.end} == {a, b})
