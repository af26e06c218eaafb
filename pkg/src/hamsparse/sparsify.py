"""I.i.d. edge sampling that produces a reweighted spectral sparsifier.

Each of the q draws picks edge e with probability p_e and contributes
w_e / (q p_e) to its weight, the unbiased estimator: the expected sparsifier
Laplacian equals the original.  Draws use Vose's alias method (O(1) per draw)
on top of numpy's PCG64 generator; the generator name is pinned here so runs
are reproducible by (graph, config, seed) alone.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .graphs import WeightedGraph
from .resistance import ResistanceTable

#: RNG pinned for reproducibility: numpy PCG64 as built by default_rng(seed).
GENERATOR_NAME = "numpy-PCG64"


def expected_samples_default(n: int, epsilon: float, oversample_c: float = 4.0) -> int:
    """Default sample budget, ceil(C n ln(n) / epsilon^2)."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if epsilon <= 0 or oversample_c <= 0:
        raise ValueError("epsilon and oversample_c must be positive")
    return math.ceil(oversample_c * n * math.log(n) / epsilon**2)


def implied_sample_exponent(n: int, q: int) -> float:
    """Exponent a with q = n (ln n)^a, reported for cross-checking bounds."""
    return math.log(q / n) / math.log(math.log(n))


@dataclass(frozen=True)
class SparsifyConfig:
    """Sampling parameters.  ``q`` defaults to the C n ln(n) / eps^2 budget.

    The guarantee regime 1/sqrt(n) < epsilon <= 1 binds the theory, not the
    mechanics, so an out-of-range epsilon only warns.
    """

    epsilon: float = 0.5
    oversample_c: float = 4.0
    sample_count: int | None = None
    seed: int = 0
    pmf: np.ndarray | None = None

    def resolved_q(self, n: int) -> int:
        q = self.sample_count
        if q is None:
            q = expected_samples_default(n, self.epsilon, self.oversample_c)
        if q < 1:
            raise ValueError(f"sample count must be >= 1, got {q}")
        return q

    def check_epsilon_regime(self, n: int) -> None:
        lo = 1.0 / math.sqrt(n)
        if not (lo < self.epsilon <= 1.0):
            warnings.warn(
                f"epsilon={self.epsilon} outside the guarantee range "
                f"({lo:.4g}, 1] for n={n}; sampling proceeds anyway",
                stacklevel=3,
            )


@dataclass(frozen=True)
class SparsifierOutput:
    """Collapsed sparsifier plus the raw draw tallies behind it.

    ``edge_tally[e]`` counts draws of original edge e; the collapsed weight of
    a surviving edge is tally * w_e / (q p_e).  ``vertex_tally[i]`` counts
    draws of edges incident to vertex i (the row-occupancy statistic x_i), so
    vertex tallies sum to 2q.
    """

    graph: WeightedGraph
    edge_tally: np.ndarray
    vertex_tally: np.ndarray
    q_used: int
    seed: int
    pmf: np.ndarray = field(repr=False)


class AliasSampler:
    """Vose alias table for O(1) categorical draws."""

    def __init__(self, pmf: np.ndarray):
        p = np.asarray(pmf, dtype=float)
        if p.ndim != 1 or p.size == 0:
            raise ValueError("pmf must be a nonempty 1-D array")
        if np.any(p <= 0) or not np.all(np.isfinite(p)):
            raise ValueError("pmf entries must be strictly positive and finite")
        p = p / p.sum()
        m = p.size
        scaled = p * m
        self.prob = np.ones(m)
        self.alias = np.arange(m)
        small = [i for i in range(m) if scaled[i] < 1.0]
        large = [i for i in range(m) if scaled[i] >= 1.0]
        while small and large:
            s, g = small.pop(), large.pop()
            self.prob[s] = scaled[s]
            self.alias[s] = g
            scaled[g] = scaled[g] + scaled[s] - 1.0
            (small if scaled[g] < 1.0 else large).append(g)
        for leftover in small + large:
            self.prob[leftover] = 1.0

    def draw(self, rng: np.random.Generator, count: int) -> np.ndarray:
        k = rng.integers(0, self.prob.size, size=count)
        accept = rng.random(count) < self.prob[k]
        return np.where(accept, k, self.alias[k])


def sample_sparsifier(g: WeightedGraph, tbl: ResistanceTable | None,
                      cfg: SparsifyConfig) -> SparsifierOutput:
    """Draw q edges i.i.d. from the pmf and collapse them to a sparsifier.

    The pmf defaults to the resistance table's edge distribution; a pmf with
    a zero entry is rejected because that edge could never be preserved.
    Deterministic given (graph, config, seed).
    """
    if g.m == 0:
        raise ValueError("cannot sparsify a graph with no edges")
    pmf = cfg.pmf if cfg.pmf is not None else (tbl.edge_probability if tbl else None)
    if pmf is None:
        raise ValueError("no pmf: pass a resistance table or set cfg.pmf")
    pmf = np.asarray(pmf, dtype=float)
    if pmf.shape != (g.m,):
        raise ValueError(f"pmf has shape {pmf.shape}, expected ({g.m},)")
    if np.any(pmf <= 0):
        bad = int(np.argmin(pmf))
        raise ValueError(f"pmf assigns zero/negative mass to edge {bad}; "
                         "that edge could never appear in the sparsifier")
    q = cfg.resolved_q(g.n)
    cfg.check_epsilon_regime(g.n)

    rng = np.random.default_rng(cfg.seed)
    draws = AliasSampler(pmf).draw(rng, q)
    edge_tally = np.bincount(draws, minlength=g.m)

    u, v, w = g.edge_arrays()
    vertex_tally = np.zeros(g.n, dtype=np.int64)
    np.add.at(vertex_tally, u, edge_tally)
    np.add.at(vertex_tally, v, edge_tally)

    keep = edge_tally > 0
    new_w = edge_tally[keep] * w[keep] / (q * pmf[keep])
    sparsified = WeightedGraph(
        g.n,
        tuple((int(a), int(b), float(wi))
              for a, b, wi in zip(u[keep], v[keep], new_w)),
    )
    return SparsifierOutput(
        graph=sparsified,
        edge_tally=edge_tally,
        vertex_tally=vertex_tally,
        q_used=q,
        seed=cfg.seed,
        pmf=pmf,
    )
