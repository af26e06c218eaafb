"""Certificate behavior: pencil extremes, kernel handling, tail bounds."""

import math

import numpy as np
import pytest

from hamsparse.certify import (
    KernelMismatchError,
    certify_adjacency,
    certify_laplacian,
    combine_epsilons,
    eps_tilde_tail_bound,
    merge_certificates,
)
from hamsparse.generators import gen_graph
from hamsparse.graphs import WeightedGraph, adjacency, degrees, laplacian
from hamsparse.resistance import effective_resistances
from hamsparse.sparsify import SparsifyConfig, sample_sparsifier


@pytest.fixture
def random_laplacian():
    return laplacian(gen_graph("random", n=24, p=0.4, seed=6, weight_dist="uniform"))


class TestCertifyLaplacian:
    def test_identity_case(self, random_laplacian):
        cert = certify_laplacian(random_laplacian, random_laplacian, 0.0)
        assert cert.pencil_min == pytest.approx(1.0, abs=1e-10)
        assert cert.pencil_max == pytest.approx(1.0, abs=1e-10)
        assert cert.verdict_laplacian

    @pytest.mark.parametrize("eps", [0.1, 0.5, 1.0])
    def test_scaled_boundary_passes(self, random_laplacian, eps):
        cert = certify_laplacian(random_laplacian, (1.0 + eps) * random_laplacian, eps)
        assert cert.pencil_min == pytest.approx(1.0 + eps, abs=1e-9)
        assert cert.pencil_max == pytest.approx(1.0 + eps, abs=1e-9)
        assert cert.verdict_laplacian  # closed interval: boundary passes

    def test_scaled_beyond_boundary_fails(self, random_laplacian):
        cert = certify_laplacian(random_laplacian, 1.6 * random_laplacian, 0.5)
        assert not cert.verdict_laplacian
        assert cert.epsilon_measured == pytest.approx(0.6, abs=1e-9)

    @pytest.mark.parametrize("c", [0.1, 10.0])
    def test_scale_equivariance(self, random_laplacian, c):
        lt = laplacian(gen_graph("random", n=24, p=0.4, seed=9))
        # keep kernels aligned: add the original so ker(Lt) subset ker(L)
        lt = lt + random_laplacian
        base = certify_laplacian(random_laplacian, lt, 0.5)
        scaled = certify_laplacian(c * random_laplacian, c * lt, 0.5)
        assert scaled.pencil_min == pytest.approx(base.pencil_min, rel=1e-9)
        assert scaled.pencil_max == pytest.approx(base.pencil_max, rel=1e-9)

    def test_kernel_mismatch_is_error_not_verdict(self):
        two_edges = WeightedGraph(4, ((0, 1, 1.0), (2, 3, 1.0)))
        bridge = WeightedGraph(4, ((0, 1, 1.0), (2, 3, 1.0), (1, 2, 1.0)))
        with pytest.raises(KernelMismatchError, match="not a spectral approximation"):
            certify_laplacian(laplacian(two_edges), laplacian(bridge), 10.0)

    def test_rejects_non_psd(self, random_laplacian):
        indefinite = random_laplacian - 2.0 * np.eye(random_laplacian.shape[0])
        with pytest.raises(ValueError, match="not PSD"):
            certify_laplacian(indefinite, indefinite, 0.5)

    def test_sparsifier_kernel_compatible(self):
        # a sampled sparsifier keeps every component connected often enough
        # at large q that the pencil check runs; verdict is numeric
        g = gen_graph("random", n=40, p=0.3, seed=1)
        tbl = effective_resistances(g)
        out = sample_sparsifier(g, tbl, SparsifyConfig(epsilon=0.5, seed=0))
        cert = certify_laplacian(laplacian(g), laplacian(out.graph), 0.5)
        assert cert.pencil_min > 0


class TestCertifyAdjacency:
    def test_identity(self):
        g = gen_graph("random", n=12, p=0.5, seed=0)
        a = adjacency(g)
        cert = certify_adjacency(a, a, degrees(g), 0.0)
        assert cert.adjacency_deviation == 0.0
        assert cert.verdict_adjacency
        assert cert.eps_tilde_measured == 0.0

    def test_perturbed_triangle_fails(self):
        # bump one unit edge to 1.2: the difference is a 2x2 antidiagonal
        # minor with eigenvalues +-0.2, against a bound of 0.05 * 2 = 0.1
        tri = WeightedGraph(3, ((0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)))
        bumped = WeightedGraph(3, ((0, 1, 1.2), (1, 2, 1.0), (0, 2, 1.0)))
        cert = certify_adjacency(adjacency(tri), adjacency(bumped),
                                 degrees(tri), 0.05)
        assert cert.adjacency_deviation == pytest.approx(0.2, abs=1e-12)
        assert cert.adjacency_bound == pytest.approx(0.1, abs=1e-12)
        assert not cert.verdict_adjacency

    @pytest.mark.parametrize("n", [4, 6, 8])
    def test_deviation_matches_randomized_sup(self, n):
        # random unit vectors lower-bound the sup of |x'(At-A)x| / x'x and,
        # at these dimensions and 1e4 samples, come within 10% of it
        rng = np.random.default_rng(n)
        sym = rng.normal(size=(n, n))
        diff = (sym + sym.T) / 2
        a = np.zeros((n, n))
        deviation = certify_adjacency(a, diff, np.ones(n), 1.0).adjacency_deviation
        x = rng.normal(size=(10_000, n))
        x /= np.linalg.norm(x, axis=1, keepdims=True)
        randomized = np.abs(np.einsum("ki,ij,kj->k", x, diff, x)).max()
        assert randomized <= deviation + 1e-10
        assert deviation <= randomized + 0.10 * deviation

    def test_eps_tilde_from_row_sums(self):
        g = gen_graph("random", n=16, p=0.5, seed=3)
        a = adjacency(g)
        scaled = 1.25 * a
        cert = certify_adjacency(a, scaled, degrees(g), 1.0)
        assert cert.eps_tilde_measured == pytest.approx(0.25, abs=1e-12)


class TestDegreeTailBound:
    def test_clamps_to_one(self):
        assert eps_tilde_tail_bound(1000, 1e-12, 3.0, "upper") == 1.0

    def test_reference_value(self):
        # 1000 * exp(-0.25 * ln(1000)^3 / 3)
        value = eps_tilde_tail_bound(1000, 0.5, 3.0, "upper")
        expected = 1000.0 * math.exp(-0.25 * math.log(1000.0) ** 3 / 3.0)
        assert value == pytest.approx(expected, rel=1e-12)
        assert 1e-10 < value < 1e-8

    def test_lower_side_smaller(self):
        upper = eps_tilde_tail_bound(1000, 0.5, 3.0, "upper")
        lower = eps_tilde_tail_bound(1000, 0.5, 3.0, "lower")
        assert lower < upper

    def test_validation(self):
        with pytest.raises(ValueError):
            eps_tilde_tail_bound(1, 0.5, 3.0)
        with pytest.raises(ValueError):
            eps_tilde_tail_bound(10, 0.5, 1.0)
        with pytest.raises(ValueError):
            eps_tilde_tail_bound(10, 0.5, 3.0, side="sideways")


class TestCombineEpsilons:
    @pytest.mark.parametrize("a,b,expected", [
        (0.3, 0.2, 0.5), (0.0, 0.0, 0.0), (0.5, 0.25, 0.75),
    ])
    def test_sum(self, a, b, expected):
        assert combine_epsilons(a, b) == pytest.approx(expected, abs=1e-15)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            combine_epsilons(-0.1, 0.2)


class TestMerge:
    def test_fields_combined(self, random_laplacian):
        lap_cert = certify_laplacian(random_laplacian, random_laplacian, 0.1)
        g = gen_graph("random", n=24, p=0.4, seed=6, weight_dist="uniform")
        adj_cert = certify_adjacency(adjacency(g), adjacency(g), degrees(g), 0.2)
        cert = merge_certificates(lap_cert, adj_cert)
        assert cert.verdict_laplacian and cert.verdict_adjacency
        assert cert.epsilon == 0.1 and cert.eps_prime == 0.2
        d = cert.to_dict()
        assert "nullspace_cutoff" in d and "kernel_tolerance" in d


@pytest.mark.parametrize("n,p,num_seeds", [(64, 0.3, 150), (256, 0.1, 60)])
def test_degree_deviation_dominated_by_tail_bound(n, p, num_seeds):
    """Empirical tail of the relative degree deviation vs the Chernoff bound.

    alpha is implied by the instance (min degree = (ln n)^alpha); on graphs
    with min degree above ln n the bound applies and must dominate at every
    grid point, up to Monte-Carlo slack.
    """
    g = gen_graph("random", n=n, p=p, seed=5)
    deg = degrees(g)
    assert deg.min() > math.log(n), "test graph must satisfy the degree premise"
    alpha = math.log(deg.min()) / math.log(math.log(n))
    tbl = effective_resistances(g)
    measured = []
    for seed in range(num_seeds):
        out = sample_sparsifier(g, tbl, SparsifyConfig(epsilon=0.5, seed=seed))
        cert = certify_adjacency(adjacency(g), adjacency(out.graph), deg, 1.0)
        measured.append(cert.eps_tilde_measured)
    measured = np.asarray(measured)
    for grid in (0.3, 0.5, 0.7):
        empirical = float(np.mean(measured >= grid))
        bound = eps_tilde_tail_bound(n, grid, alpha, "upper")
        slack = 3.0 * math.sqrt(max(empirical * (1 - empirical), 1e-12) / num_seeds)
        assert empirical <= bound + slack
