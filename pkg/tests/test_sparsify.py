"""Sampler behavior: determinism, reweighting, concentration, unbiasedness."""

import numpy as np
import pytest

from hamsparse.generators import gen_graph
from hamsparse.graphs import WeightedGraph, degrees, laplacian
from hamsparse.resistance import effective_resistances
from hamsparse.sparsify import (
    AliasSampler,
    SparsifyConfig,
    expected_samples_default,
    implied_sample_exponent,
    sample_sparsifier,
)


@pytest.fixture
def triangle():
    return WeightedGraph(3, ((0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)))


class TestSampleBudget:
    def test_n100(self):
        assert expected_samples_default(100, 1.0, 1.0) == 461

    def test_n2(self):
        assert expected_samples_default(2, 1.0, 1.0) == 2

    def test_n1000(self):
        # ceil(4 * 1000 * ln(1000) / 0.25) with ln(1000) = 6.9077552789...
        assert expected_samples_default(1000, 0.5, 4.0) == 110525

    def test_implied_exponent_inverts(self):
        n, q = 256, 1420
        a = implied_sample_exponent(n, q)
        assert n * np.log(n) ** a == pytest.approx(q, rel=1e-12)


class TestAliasSampler:
    def test_single_category(self):
        s = AliasSampler(np.array([1.0]))
        assert np.all(s.draw(np.random.default_rng(0), 100) == 0)

    def test_matches_pmf(self):
        pmf = np.array([0.5, 0.25, 0.125, 0.125])
        draws = AliasSampler(pmf).draw(np.random.default_rng(1), 200_000)
        freq = np.bincount(draws, minlength=4) / draws.size
        # 3 sigma per category at 200k draws
        for p, f in zip(pmf, freq):
            assert abs(f - p) <= 3 * np.sqrt(p * (1 - p) / draws.size)

    def test_rejects_zero_mass(self):
        with pytest.raises(ValueError, match="strictly positive"):
            AliasSampler(np.array([0.5, 0.0, 0.5]))


class TestSampler:
    def test_single_edge_q1_reproduces_graph(self):
        g = WeightedGraph(2, ((0, 1, 2.5),))
        tbl = effective_resistances(g)
        out = sample_sparsifier(g, tbl, SparsifyConfig(epsilon=1.0, sample_count=1, seed=0))
        assert out.graph == g
        assert out.graph.edges[0][2] == 2.5  # weight w / (1 * 1) exactly

    def test_star_center_tally(self):
        g = WeightedGraph(10, tuple((0, i, 1.0) for i in range(1, 10)))
        tbl = effective_resistances(g)
        out = sample_sparsifier(g, tbl, SparsifyConfig(epsilon=1.0, sample_count=90, seed=3))
        assert out.vertex_tally[0] == 90  # every edge is incident to the center

    def test_triangle_weight_concentration(self, triangle):
        # tally_e ~ Bin(300, 1/3): weight within 25% of 1 means tally in [75, 125],
        # a +-3.06 sigma window, so per-seed all-edges probability ~ 0.99
        tbl = effective_resistances(triangle)
        hits = 0
        for seed in range(100):
            cfg = SparsifyConfig(epsilon=0.5, sample_count=300, seed=seed)
            out = sample_sparsifier(triangle, tbl, cfg)
            weights = {(u, v): w for u, v, w in out.graph.edges}
            if len(weights) == 3 and all(abs(w - 1.0) <= 0.25 for w in weights.values()):
                hits += 1
        assert hits >= 95

    def test_deterministic_given_seed(self):
        g = gen_graph("random", n=25, p=0.3, seed=8)
        tbl = effective_resistances(g)
        cfg = SparsifyConfig(epsilon=0.8, seed=42)
        a = sample_sparsifier(g, tbl, cfg)
        b = sample_sparsifier(g, tbl, cfg)
        assert np.array_equal(a.edge_tally, b.edge_tally)
        assert a.graph == b.graph  # bit-identical weights via == on floats

    def test_vertex_tallies_sum_to_2q(self):
        g = gen_graph("random", n=25, p=0.3, seed=8)
        tbl = effective_resistances(g)
        out = sample_sparsifier(g, tbl, SparsifyConfig(epsilon=0.8, seed=7))
        assert out.vertex_tally.sum() == 2 * out.q_used

    def test_edge_count_bounded_by_q(self):
        g = gen_graph("random", n=30, p=0.5, seed=2)
        tbl = effective_resistances(g)
        out = sample_sparsifier(g, tbl, SparsifyConfig(epsilon=1.0, sample_count=17, seed=0))
        assert out.graph.m <= 17

    def test_rejects_zero_pmf_entry(self, triangle):
        cfg = SparsifyConfig(epsilon=1.0, sample_count=5, seed=0,
                             pmf=np.array([0.5, 0.5, 0.0]))
        with pytest.raises(ValueError, match="zero"):
            sample_sparsifier(triangle, None, cfg)

    def test_rejects_edgeless_graph(self):
        with pytest.raises(ValueError, match="no edges"):
            sample_sparsifier(WeightedGraph(2, ()), None,
                              SparsifyConfig(sample_count=1))

    def test_epsilon_regime_warning(self, triangle):
        tbl = effective_resistances(triangle)
        with pytest.warns(UserWarning, match="guarantee range"):
            sample_sparsifier(triangle, tbl,
                              SparsifyConfig(epsilon=0.2, sample_count=10, seed=0))


@pytest.fixture(scope="module")
def seed_study():
    g = gen_graph("random", n=30, p=0.3, seed=4)
    lap = laplacian(g)
    tbl = effective_resistances(g)
    seeds = 1000
    acc = np.zeros_like(lap)
    acc_sq = np.zeros_like(lap)
    for s in range(seeds):
        cfg = SparsifyConfig(epsilon=1.0, oversample_c=4.0, seed=10_000 + s)
        lt = laplacian(sample_sparsifier(g, tbl, cfg).graph)
        acc += lt
        acc_sq += lt**2
    mean = acc / seeds
    var = np.maximum(acc_sq / seeds - mean**2, 0.0)
    return g, lap, mean, np.sqrt(var / seeds)


class TestUnbiasedness:
    """Mean of the sparsifier Laplacian over many seeds matches the original."""

    def test_laplacian_entrywise(self, seed_study):
        _, lap, mean, se = seed_study
        varying = se > 0
        z = np.abs(mean - lap)[varying] / se[varying]
        assert z.max() <= 3.0

    def test_degree_preservation(self, seed_study):
        g, _, mean, se = seed_study
        deg = degrees(g)
        dse = np.diag(se)
        z = np.abs(np.diag(mean) - deg)[dse > 0] / dse[dse > 0]
        assert z.max() <= 3.0
