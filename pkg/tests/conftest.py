import math

import pytest

from geopack import gen_instance, validate_polygon

SQUARE = [(0, 0), (10, 0), (10, 10), (0, 10)]
L_SHAPE = [(0, 0), (4, 0), (4, 2), (2, 2), (2, 4), (0, 4)]
COMB = [(0, 0), (9, 0), (9, 5), (8, 5), (8, 1), (6, 1), (6, 5), (5, 5),
        (5, 1), (3, 1), (3, 5), (2, 5), (2, 1), (0, 1)]


@pytest.fixture(scope="session")
def square():
    return validate_polygon(SQUARE)


@pytest.fixture(scope="session")
def lshape():
    return validate_polygon(L_SHAPE)


@pytest.fixture(scope="session")
def comb():
    return validate_polygon(COMB)


@pytest.fixture(scope="session")
def instances_small():
    """A reusable batch of random instances (n <= 15) for oracle tests."""
    out = []
    for seed in range(20):
        out.append(gen_instance(seed=seed, n_vertices=6 + seed % 9,
                                n_points=5 + seed % 11,
                                delta_mode=(0.1, 0.3, 0.5)[seed % 3]))
    return out


def assert_close(a, b, rtol=1e-9, atol=1e-9):
    assert math.isclose(a, b, rel_tol=rtol, abs_tol=atol), f"{a} != {b}"
