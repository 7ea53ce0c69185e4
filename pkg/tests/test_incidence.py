import itertools
from fractions import Fraction

import pytest

from srlb.errors import (
    ArithmeticOverflow,
    BudgetExceeded,
    DimensionMismatch,
    InstanceTooLarge,
)
from srlb.exact import INT64_MAX
from srlb.geometry import (
    Hyperplane,
    InstanceParams,
    generate_hyperplanes,
    generate_points,
    incident_points,
    normalize_params,
)
from srlb.incidence import (
    IncidenceGraph,
    bound_report,
    build_incidence_graph,
    find_kab,
    pair_coverage,
    richness_histogram,
    verify_no_k2beta,
)


def naive_pair_coverage(graph):
    """Reference implementation: plain dict over point pairs."""
    counts = {}
    for row in graph.adjacency:
        for pair in itertools.combinations(row, 2):
            counts[pair] = counts.get(pair, 0) + 1
    if not counts:
        return 0, None
    best = max(counts.values())
    return best, min(p for p, c in counts.items() if c == best)


class TestBuildIncidenceGraph:
    def test_planar_shape(self, d2_graph):
        _, graph = d2_graph
        assert graph.hyperplane_count == 8
        assert all(len(row) == 2 for row in graph.adjacency)
        assert graph.total_incidences == 16

    def test_3d_shape(self, d3_graph):
        _, graph = d3_graph
        assert graph.hyperplane_count == 128
        assert all(len(row) == 4 for row in graph.adjacency)
        assert graph.total_incidences == 512

    def test_single_nonincident_pair(self):
        graph = build_incidence_graph([(1, 5)], [Hyperplane(a=(1,), b=1)])
        assert graph.adjacency == ((),)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            build_incidence_graph([(1, 1, 1)], [Hyperplane(a=(1,), b=1)])

    def test_envelope_guard_on_foreign_hyperplane(self):
        with pytest.raises(ArithmeticOverflow):
            build_incidence_graph([(2, 3)], [Hyperplane(a=(INT64_MAX,), b=1)])

    def test_agrees_with_parametric_route(self, d3_instance, d3_graph):
        params, points, hyperplanes = d3_instance
        _, graph = d3_graph
        index = {p: i for i, p in enumerate(points)}
        for h, row in zip(hyperplanes, graph.adjacency):
            expected = sorted(index[p] for p in incident_points(h, params))
            assert list(row) == expected

    def test_graph_validation(self):
        with pytest.raises(ValueError):
            IncidenceGraph(point_count=2, hyperplane_count=1, adjacency=((0, 2),))
        with pytest.raises(ValueError):
            IncidenceGraph(point_count=3, hyperplane_count=1, adjacency=((1, 0),))
        with pytest.raises(ValueError):
            IncidenceGraph(point_count=3, hyperplane_count=2, adjacency=((0,),))


class TestRichnessHistogram:
    def test_planar(self, d2_graph):
        _, graph = d2_graph
        assert richness_histogram(graph) == {2: 8}

    def test_3d(self, d3_graph):
        _, graph = d3_graph
        assert richness_histogram(graph) == {4: 128}

    def test_empty(self):
        graph = build_incidence_graph([], [])
        assert richness_histogram(graph) == {}


class TestPairCoverage:
    def test_planar_max_is_one(self, d2_graph):
        _, graph = d2_graph
        max_common, witness = pair_coverage(graph)
        assert max_common == 1
        assert witness == (1, 10)  # (1,2) and (2,3), both on X_2 = 1 + X_1

    def test_3d_attains_bound(self, d3_graph):
        params, graph = d3_graph
        max_common, witness = pair_coverage(graph)
        # Four planes with a_1 free pass through (1,1,10) and (1,2,11);
        # the bound A**(d-2) = 4 is attained exactly.
        assert max_common == 4 == params.pair_coverage_bound()
        assert witness is not None

    def test_single_hyperplane(self):
        graph = IncidenceGraph(point_count=3, hyperplane_count=1, adjacency=((0, 1, 2),))
        assert pair_coverage(graph) == (1, (0, 1))

    def test_no_pairs(self):
        graph = IncidenceGraph(point_count=3, hyperplane_count=2, adjacency=((0,), ()))
        assert pair_coverage(graph) == (0, None)

    def test_budget(self, d2_graph):
        _, graph = d2_graph
        with pytest.raises(InstanceTooLarge):
            pair_coverage(graph, budget=1)

    @pytest.mark.parametrize("d,n,t", [(2, 16, 2), (2, 128, 8), (3, 96, 4)])
    def test_matches_naive_reference(self, d, n, t):
        params = normalize_params(d, n, t)
        graph = build_incidence_graph(
            generate_points(params), generate_hyperplanes(params)
        )
        assert pair_coverage(graph) == naive_pair_coverage(graph)

    def test_matches_naive_on_irregular_graph(self):
        adjacency = ((0, 1, 2, 5), (1, 2, 5), (0, 5), (2, 3, 4), (1, 2), ())
        graph = IncidenceGraph(point_count=6, hyperplane_count=6, adjacency=adjacency)
        assert pair_coverage(graph) == naive_pair_coverage(graph)


class TestVerifyNoK2Beta:
    def test_planar(self, d2_graph):
        params, graph = d2_graph
        assert verify_no_k2beta(graph, params) is True

    def test_3d(self, d3_graph):
        params, graph = d3_graph
        assert verify_no_k2beta(graph, params) is True

    def test_adversarial_fixture_fails(self, d2_graph):
        params, _ = d2_graph
        # Two points sharing A**(d-2) + 1 = 2 hyperplanes: a K_{2,2}.
        bad = IncidenceGraph(
            point_count=16,
            hyperplane_count=8,
            adjacency=((0, 1), (0, 1)) + ((),) * 6,
        )
        assert verify_no_k2beta(bad, params) is False

    def test_budget_propagates(self, d2_graph):
        params, graph = d2_graph
        with pytest.raises(InstanceTooLarge):
            verify_no_k2beta(graph, params, budget=1)


class TestFindKab:
    def test_k11_exists(self, d2_graph):
        _, graph = d2_graph
        witness = find_kab(graph, 1, 1)
        assert witness is not None
        points, planes = witness
        assert len(points) == 1 and len(planes) == 1
        assert points[0] in graph.adjacency[planes[0]]

    def test_k22_absent_planar(self, d2_graph):
        _, graph = d2_graph
        assert find_kab(graph, 2, 2) is None

    @pytest.mark.parametrize("fixture", ["d2_graph", "d3_graph"])
    def test_no_k2_beta_witness(self, fixture, request):
        params, graph = request.getfixturevalue(fixture)
        assert find_kab(graph, 2, params.pair_coverage_bound() + 1) is None

    def test_finds_planted_k23(self):
        graph = IncidenceGraph(
            point_count=4, hyperplane_count=4,
            adjacency=((0, 1), (0, 1, 3), (2,), (0, 1, 2)),
        )
        witness = find_kab(graph, 2, 3)
        assert witness == ((0, 1), (0, 1, 3))

    def test_budget_exceeded(self, d3_graph):
        _, graph = d3_graph
        with pytest.raises(BudgetExceeded):
            find_kab(graph, 2, 3, budget=2)

    def test_bad_args(self, d2_graph):
        _, graph = d2_graph
        with pytest.raises(ValueError):
            find_kab(graph, 0, 1)


class TestBoundReport:
    def test_planar_example(self):
        report = bound_report(normalize_params(2, 16, 2))
        assert report.beta == 2
        assert report.alpha == 2
        assert report.space_figure_of_merit == Fraction(8)
        assert report.predicted_query_exponent == Fraction(1, 2)

    def test_3d_example(self):
        report = bound_report(normalize_params(3, 96, 4))
        assert report.beta == 5
        assert report.space_figure_of_merit == Fraction(512, 5)
        assert report.predicted_query_exponent == Fraction(2, 3)

    def test_exact_rational_no_drift(self):
        params = normalize_params(3, 3993, 121)
        report = bound_report(params)
        beta = params.A ** (params.d - 2) + 1
        assert report.space_figure_of_merit == Fraction(params.m * params.t, beta)
        assert isinstance(report.space_figure_of_merit, Fraction)


class TestScalingLaw:
    @pytest.mark.parametrize(
        "d,s,n_small,n_large",
        [(2, 4, 512, 1024), (3, 2, 250, 500), (2, 5, 1000, 2000)],
    )
    def test_doubling_n_scales_m_by_2_to_d(self, d, s, n_small, n_large):
        t = s ** (d - 1)
        small = normalize_params(d, n_small, t)
        large = normalize_params(d, n_large, t)
        assert small.A >= 8 and small.B >= 8
        ratio = large.m / small.m
        assert 1.5**d <= ratio <= 2.5**d
