"""Effective resistances against independent electrical-network oracles."""

import heapq

import numpy as np
import pytest

from hamsparse.generators import gen_graph
from hamsparse.graphs import WeightedGraph
from hamsparse.resistance import effective_resistances, foster_check


def shortest_path_lengths(g: WeightedGraph, source: int) -> np.ndarray:
    """Dijkstra with edge lengths 1/w: an upper-bound oracle for resistance."""
    adj = [[] for _ in range(g.n)]
    for u, v, w in g.edges:
        adj[u].append((v, 1.0 / w))
        adj[v].append((u, 1.0 / w))
    dist = np.full(g.n, np.inf)
    dist[source] = 0.0
    heap = [(0.0, source)]
    while heap:
        d, x = heapq.heappop(heap)
        if d > dist[x]:
            continue
        for y, length in adj[x]:
            nd = d + length
            if nd < dist[y]:
                dist[y] = nd
                heapq.heappush(heap, (nd, y))
    return dist


@pytest.fixture
def triangle():
    return WeightedGraph(3, ((0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)))


class TestEffectiveResistances:
    def test_single_unit_edge(self):
        g = WeightedGraph(2, ((0, 1, 1.0),))
        tbl = effective_resistances(g)
        assert tbl.resistances[0] == pytest.approx(1.0, abs=1e-12)
        assert tbl.edge_probability[0] == pytest.approx(1.0, abs=1e-12)

    def test_unit_triangle(self, triangle):
        # series-parallel oracle: direct 1 ohm in parallel with a 2 ohm path
        expected = 1.0 * 2.0 / (1.0 + 2.0)
        tbl = effective_resistances(triangle)
        assert np.allclose(tbl.resistances, expected, atol=1e-12)
        assert np.allclose(tbl.edge_probability, 1.0 / 3.0, atol=1e-12)

    @pytest.mark.parametrize("k", [3, 7, 12])
    def test_star_bridges(self, k):
        g = WeightedGraph(k + 1, tuple((0, i, 1.0) for i in range(1, k + 1)))
        tbl = effective_resistances(g)
        assert np.allclose(tbl.resistances, 1.0, atol=1e-10)
        assert np.allclose(tbl.edge_probability, 1.0 / k, atol=1e-12)
        assert tbl.vertex_marginal[0] == pytest.approx(1.0, abs=1e-12)
        assert np.allclose(tbl.vertex_marginal[1:], 1.0 / k, atol=1e-12)

    def test_rejects_edgeless_graph(self):
        with pytest.raises(ValueError, match="at least one edge"):
            effective_resistances(WeightedGraph(3, ()))

    def test_pmf_normalization(self):
        g = gen_graph("random", n=40, p=0.2, seed=1, weight_dist="uniform")
        tbl = effective_resistances(g)
        assert abs(tbl.edge_probability.sum() - 1.0) <= 1e-12
        assert abs(tbl.vertex_marginal.sum() - 2.0) <= 1e-12

    @pytest.mark.parametrize("seed", [0, 1, 2, 3])
    def test_shortest_path_upper_bound(self, seed):
        # Rayleigh monotonicity: R_e never exceeds the 1/w path distance
        g = gen_graph("random", n=50, p=0.15, seed=seed, weight_dist="uniform")
        if g.m == 0:
            pytest.skip("empty draw")
        tbl = effective_resistances(g)
        for (u, v, _), r in zip(g.edges, tbl.resistances):
            assert 0.0 < r <= shortest_path_lengths(g, u)[v] + 1e-9

    @pytest.mark.parametrize("seed", [5, 6])
    def test_edge_removal_never_decreases_resistance(self, seed):
        g = gen_graph("random", n=15, p=0.45, seed=seed)
        tbl = effective_resistances(g)
        drop = g.m // 2
        remaining = tuple(e for i, e in enumerate(g.edges) if i != drop)
        sub = WeightedGraph(g.n, remaining)
        sub_tbl = effective_resistances(sub)
        before = {(u, v): r for (u, v, _), r in zip(g.edges, tbl.resistances)}
        for (u, v, _), r_after in zip(sub.edges, sub_tbl.resistances):
            assert r_after >= before[(u, v)] - 1e-10


class TestFoster:
    def test_unit_triangle(self, triangle):
        tbl = effective_resistances(triangle)
        assert foster_check(triangle, tbl) <= 1e-8  # sum = 2 = 3 - 1

    def test_single_edge(self):
        g = WeightedGraph(2, ((0, 1, 1.0),))
        assert foster_check(g, effective_resistances(g)) <= 1e-12

    def test_two_disjoint_edges(self):
        g = WeightedGraph(4, ((0, 1, 1.0), (2, 3, 1.0)))
        tbl = effective_resistances(g)
        assert tbl.weighted_resistance_sum == pytest.approx(2.0, abs=1e-10)
        assert foster_check(g, tbl) <= 1e-10

    @pytest.mark.parametrize("family,kwargs", [
        ("cycle", {"n": 100}),
        ("star", {"n": 80}),
        ("grid", {"rows": 8, "cols": 9}),
        ("complete", {"n": 40}),
        ("random", {"n": 120, "p": 0.1, "seed": 2, "weight_dist": "uniform"}),
    ])
    def test_families(self, family, kwargs):
        g = gen_graph(family, **kwargs)
        assert foster_check(g, effective_resistances(g)) <= 1e-8 * g.n
