import numpy as np
import pytest

from acmsolitons import builtin_config, parse_expr
from acmsolitons.geometry import ChartManifold, sample_points


@pytest.fixture(scope="session")
def kenmotsu3():
    return builtin_config("kenmotsu3")


@pytest.fixture(scope="session")
def kenmotsu3_structure(kenmotsu3):
    return kenmotsu3.structure


@pytest.fixture(scope="session")
def kenmotsu3_points(kenmotsu3):
    return sample_points(
        kenmotsu3.manifold, kenmotsu3.box, kenmotsu3.points, kenmotsu3.seed
    )


@pytest.fixture(scope="session")
def euclidean3():
    return builtin_config("euclidean3")


@pytest.fixture(scope="session")
def sphere2():
    return builtin_config("sphere2")


@pytest.fixture(scope="session")
def polar2():
    # flat plane in polar coordinates, kept away from the origin
    coords = ("r", "t")
    g_rr = parse_expr("1", coords=coords)
    g_tt = parse_expr("r^2", coords=coords)
    zero = parse_expr("0", coords=coords)
    metric = [[g_rr, zero], [zero, g_tt]]
    constraint = parse_expr("r", coords=coords)
    return ChartManifold(coords, metric, (constraint,), name="polar2")


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(42)
