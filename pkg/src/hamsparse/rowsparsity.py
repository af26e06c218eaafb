"""Row-sparsity condition checks: analytic tail bounds and measured occupancy.

The marginal condition flags vertices whose selection probability exceeds
(ln n)^b / n.  The two proposition bounds are evaluated base-2 to match the
Chernoff/union derivation they come from, in log space so huge n cannot
overflow; the marginal threshold uses the natural log, disclosed here.

Occupancy x_i counts incident edge draws (the quantity the proofs bound),
not distinct collapsed edges; the realized sparsifier row degree is reported
alongside since collapsing can only reduce it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .graphs import WeightedGraph
from .resistance import ResistanceTable
from .sparsify import SparsifyConfig, implied_sample_exponent, sample_sparsifier

#: Chernoff regime guard from the tail-bound derivation: R >= 6 mu.
CHERNOFF_GUARD_FACTOR = 6.0


@dataclass(frozen=True)
class MarginalCheck:
    """Per-vertex verdicts for the (ln n)^b / n selection-probability cap."""

    b: float
    threshold: float
    max_marginal: float
    worst_vertex: int
    violating_vertices: tuple[int, ...]

    @property
    def all_pass(self) -> bool:
        return not self.violating_vertices


def vertex_marginal_condition(tbl: ResistanceTable, b: float) -> MarginalCheck:
    """Flag every vertex with marginal above (ln n)^b / n (needs n >= 3)."""
    if tbl.n < 3:
        raise ValueError(f"marginal condition needs n >= 3, got {tbl.n}")
    threshold = math.log(tbl.n) ** b / tbl.n
    marginals = tbl.vertex_marginal
    worst = int(np.argmax(marginals))
    violating = tuple(int(i) for i in np.flatnonzero(marginals > threshold))
    return MarginalCheck(
        b=float(b),
        threshold=threshold,
        max_marginal=float(marginals[worst]),
        worst_vertex=worst,
        violating_vertices=violating,
    )


def implied_marginal_exponent(n: int, max_marginal: float) -> float:
    """Exponent b with max_v p_v = (ln n)^b / n, the self-calibrating choice."""
    if max_marginal <= 0:
        raise ValueError("max marginal must be positive")
    return math.log(n * max_marginal) / math.log(math.log(n))


@dataclass(frozen=True)
class Prop1Bound:
    """Tail bound P(max_i x_i >= R) <= n 2^(-(log2 n)^(c+1)), c = a + b.

    ``applicable`` records the R >= 6 mu regime guard (mu bounded by
    (log2 n)^c); when it fails at small n the bound number is still reported
    but must not be read as a valid Chernoff tail.
    """

    probability: float
    log2_probability: float
    r_threshold: float
    mu_bound: float
    applicable: bool
    a: float
    b: float


def prop1_tail_bound(n: int, a: float, b: float) -> Prop1Bound:
    """Evaluate the max-occupancy tail bound and its threshold R (base 2)."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    c = a + b
    log2n = math.log2(n)
    r = log2n ** (c + 1.0)
    mu = log2n ** c
    log2_prob = log2n - r
    probability = min(1.0, 2.0 ** log2_prob)  # underflows cleanly to 0.0
    return Prop1Bound(
        probability=probability,
        log2_probability=log2_prob,
        r_threshold=r,
        mu_bound=mu,
        applicable=r >= CHERNOFF_GUARD_FACTOR * mu,
        a=float(a),
        b=float(b),
    )


def prop2_expectation_bound(n: int, a: float, b: float) -> float:
    """Upper bound on E[max_i x_i]: (log2 n)^c + n^2 (log2 n)^a 2^(-(log2 n)^(c+1))."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    c = a + b
    log2n = math.log2(n)
    log2_second = 2.0 * log2n + a * math.log2(log2n) - log2n ** (c + 1.0)
    return log2n ** c + 2.0 ** log2_second


@dataclass(frozen=True)
class OccupancySummary:
    """Max-occupancy statistics of repeated sampler runs; asserts nothing."""

    r_threshold: float
    seeds: int
    max_occupancy_per_seed: np.ndarray = field(repr=False)
    max_degree_per_seed: np.ndarray = field(repr=False)

    @property
    def empirical_max_occupancy(self) -> int:
        return int(self.max_occupancy_per_seed.max())

    @property
    def mean_max_occupancy(self) -> float:
        return float(self.max_occupancy_per_seed.mean())

    @property
    def empirical_tail_freq(self) -> float:
        return float(np.mean(self.max_occupancy_per_seed >= self.r_threshold))


def empirical_occupancy(g: WeightedGraph, tbl: ResistanceTable,
                        cfg: SparsifyConfig, r_threshold: float,
                        seeds: int) -> OccupancySummary:
    """Rerun the sampler over ``seeds`` consecutive seeds from cfg.seed.

    Records, per seed, the max incident draw count max_i x_i and the realized
    max row degree of the collapsed sparsifier.
    """
    if seeds < 1:
        raise ValueError(f"need seeds >= 1, got {seeds}")
    max_occ = np.zeros(seeds, dtype=np.int64)
    max_deg = np.zeros(seeds, dtype=np.int64)
    for k in range(seeds):
        out = sample_sparsifier(g, tbl, replace(cfg, seed=cfg.seed + k))
        max_occ[k] = out.vertex_tally.max()
        row_deg = np.zeros(g.n, dtype=np.int64)
        for u, v, _ in out.graph.edges:
            row_deg[u] += 1
            row_deg[v] += 1
        max_deg[k] = row_deg.max()
    return OccupancySummary(
        r_threshold=float(r_threshold),
        seeds=seeds,
        max_occupancy_per_seed=max_occ,
        max_degree_per_seed=max_deg,
    )


@dataclass(frozen=True)
class RowSparsityReport:
    """Everything the row-sparsity CLI emits for one (graph, config) pair."""

    n: int
    q: int
    a: float
    b: float
    c: float
    marginal: MarginalCheck
    prop1: Prop1Bound
    prop2_bound: float
    occupancy: OccupancySummary

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "a": self.a,
            "b": self.b,
            "c": self.c,
            "max_marginal": self.marginal.max_marginal,
            "marginal_threshold": self.marginal.threshold,
            "marginal_all_pass": self.marginal.all_pass,
            "marginal_worst_vertex": self.marginal.worst_vertex,
            "marginal_violations": list(self.marginal.violating_vertices),
            "r_threshold": self.prop1.r_threshold,
            "prop1_bound": self.prop1.probability,
            "prop1_log2_bound": self.prop1.log2_probability,
            "prop1_applicable": self.prop1.applicable,
            "prop2_expectation_bound": self.prop2_bound,
            "seeds": self.occupancy.seeds,
            "empirical_max_occupancy": self.occupancy.empirical_max_occupancy,
            "empirical_mean_max_occupancy": self.occupancy.mean_max_occupancy,
            "empirical_tail_freq": self.occupancy.empirical_tail_freq,
            "empirical_max_degree": int(self.occupancy.max_degree_per_seed.max()),
        }


def row_sparsity_report(g: WeightedGraph, tbl: ResistanceTable,
                        cfg: SparsifyConfig, seeds: int,
                        a: float | None = None,
                        b: float | None = None) -> RowSparsityReport:
    """Build the full report; a and b default to the instance-implied values."""
    q = cfg.resolved_q(g.n)
    if a is None:
        a = implied_sample_exponent(g.n, q)
    if b is None:
        b = implied_marginal_exponent(g.n, float(tbl.vertex_marginal.max()))
    marginal = vertex_marginal_condition(tbl, b)
    prop1 = prop1_tail_bound(g.n, a, b)
    occupancy = empirical_occupancy(g, tbl, cfg, prop1.r_threshold, seeds)
    return RowSparsityReport(
        n=g.n,
        q=q,
        a=float(a),
        b=float(b),
        c=float(a + b),
        marginal=marginal,
        prop1=prop1,
        prop2_bound=prop2_expectation_bound(g.n, a, b),
        occupancy=occupancy,
    )
