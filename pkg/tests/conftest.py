import pytest

from srlb.geometry import generate_hyperplanes, generate_points, normalize_params
from srlb.incidence import build_incidence_graph


@pytest.fixture(scope="session")
def d2_instance():
    """The 16-point planar instance: s=2, t=2, A=2, B=4, m=8."""
    params = normalize_params(2, 16, 2)
    points = generate_points(params)
    hyperplanes = generate_hyperplanes(params)
    return params, points, hyperplanes


@pytest.fixture(scope="session")
def d3_instance():
    """The 96-point 3-d instance: s=2, t=4, A=4, B=8, m=128."""
    params = normalize_params(3, 96, 4)
    points = generate_points(params)
    hyperplanes = generate_hyperplanes(params)
    return params, points, hyperplanes


@pytest.fixture(scope="session")
def d2_graph(d2_instance):
    params, points, hyperplanes = d2_instance
    return params, build_incidence_graph(points, hyperplanes)


@pytest.fixture(scope="session")
def d3_graph(d3_instance):
    params, points, hyperplanes = d3_instance
    return params, build_incidence_graph(points, hyperplanes)
