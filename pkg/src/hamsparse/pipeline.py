"""End-to-end experiment pipeline with the halt-and-restart policy.

Flow: load or generate the graph, compute resistances (Foster-checked),
derive the adjacency accuracy budget eps' from the simulation target and
split it into the Laplacian eps and the degree-deviation eps_tilde, then
sample and certify.  A failed certificate discards the sparsifier and
resamples with a fresh seed, up to the retry limit; the report records every
attempt.  The surviving sparsifier gets a row-sparsity report and an
evolution-error sweep, and everything is written as JSON + CSV (+ figures).

Exit codes: 0 success, 2 certificates failed after retries, 3 input error,
4 internal numeric failure.
"""

from __future__ import annotations

from dataclasses import dataclass, field, asdict
from pathlib import Path

import numpy as np

from . import plots, reportio
from .certify import (
    KernelMismatchError,
    certify_adjacency,
    certify_laplacian,
    combine_epsilons,
    merge_certificates,
)
from .evolution import MAX_EVOLUTION_DIM, eps_prime_budget, evolution_sweep
from .generators import gen_graph
from .graphs import WeightedGraph, adjacency, degrees, laplacian, read_edgelist, write_edgelist
from .resistance import effective_resistances, foster_check
from .rowsparsity import row_sparsity_report
from .sparsify import SparsifyConfig, implied_sample_exponent, sample_sparsifier

EXIT_OK = 0
EXIT_CERT_FAILURE = 2
EXIT_INPUT_ERROR = 3
EXIT_NUMERIC_ERROR = 4

#: offset separating occupancy-study seeds from certification attempt seeds
OCCUPANCY_SEED_OFFSET = 100_000


class PipelineInputError(ValueError):
    """Bad graph source or parameters (maps to exit code 3)."""


@dataclass(frozen=True)
class PipelineConfig:
    """Batch run description; everything needed to reproduce a report."""

    graph_path: str | None = None
    family: str | None = None
    n: int = 0
    p: float = 0.5
    rows: int = 0
    cols: int = 0
    weight_dist: str = "unit"
    eps_sim: float = 0.25
    t: float = 1.0
    epsilon: float | None = None
    split: float = 0.5
    oversample_c: float = 4.0
    sample_count: int | None = None
    b: float | None = None
    seeds: int = 25
    retry_limit: int = 3
    t_steps: int = 8
    matrix: str = "adjacency"
    seed: int = 0
    out_dir: str = "."
    figures: bool = True

    def validate(self) -> None:
        if (self.graph_path is None) == (self.family is None):
            raise PipelineInputError("exactly one of graph_path or family is required")
        if self.retry_limit < 1:
            raise PipelineInputError(f"retry_limit must be >= 1, got {self.retry_limit}")
        if not (0.0 < self.split < 1.0):
            raise PipelineInputError(f"split must lie in (0, 1), got {self.split}")
        if self.matrix not in ("adjacency", "laplacian"):
            raise PipelineInputError(f"matrix must be adjacency or laplacian, got {self.matrix!r}")
        if self.t <= 0 or self.eps_sim <= 0:
            raise PipelineInputError("t and eps_sim must be positive")
        if self.t_steps < 1:
            raise PipelineInputError(f"t_steps must be >= 1, got {self.t_steps}")


@dataclass
class PipelineResult:
    exit_code: int
    report: dict
    out_dir: Path
    error: str | None = None
    artifacts: list[str] = field(default_factory=list)


def _load_graph(cfg: PipelineConfig) -> WeightedGraph:
    if cfg.graph_path is not None:
        try:
            return read_edgelist(cfg.graph_path)
        except (OSError, ValueError) as exc:
            raise PipelineInputError(f"cannot read graph: {exc}") from exc
    try:
        return gen_graph(cfg.family, n=cfg.n, p=cfg.p, rows=cfg.rows,
                         cols=cfg.cols, seed=cfg.seed, weight_dist=cfg.weight_dist)
    except ValueError as exc:
        raise PipelineInputError(str(exc)) from exc


def run_pipeline(cfg: PipelineConfig) -> PipelineResult:
    """Execute the full flow; never raises for input/numeric problems."""
    out_dir = Path(cfg.out_dir)
    try:
        cfg.validate()
        graph = _load_graph(cfg)
        if graph.m == 0:
            raise PipelineInputError("pipeline needs a graph with at least one edge")
    except PipelineInputError as exc:
        return PipelineResult(EXIT_INPUT_ERROR, {}, out_dir, error=str(exc))
    try:
        return _run_on_graph(cfg, graph, out_dir)
    except (np.linalg.LinAlgError, FloatingPointError, OverflowError) as exc:
        return PipelineResult(EXIT_NUMERIC_ERROR, {}, out_dir,
                              error=f"numeric failure: {exc}")


def _run_on_graph(cfg: PipelineConfig, graph: WeightedGraph,
                  out_dir: Path) -> PipelineResult:
    out_dir.mkdir(parents=True, exist_ok=True)
    artifacts: list[str] = []

    tbl = effective_resistances(graph)
    foster_residual = foster_check(graph, tbl)

    lap = laplacian(graph)
    adj = adjacency(graph)
    deg = degrees(graph)
    h = adj if cfg.matrix == "adjacency" else lap
    norm_h = float(np.abs(np.linalg.eigvalsh(h)).max())

    if cfg.epsilon is not None:
        eps = cfg.epsilon
        eps_tilde = eps * (1.0 - cfg.split) / cfg.split
        eps_prime = combine_epsilons(eps, eps_tilde)
        budget = {"mode": "explicit-epsilon"}
    else:
        eps_prime = eps_prime_budget(cfg.eps_sim, cfg.t, norm_h)
        eps = cfg.split * eps_prime
        eps_tilde = eps_prime - eps
        budget = {"mode": "derived-from-eps-sim"}
    budget.update({
        "eps_sim": cfg.eps_sim,
        "t": cfg.t,
        "norm_h": norm_h,
        "matrix": cfg.matrix,
        "eps_prime": eps_prime,
        "epsilon": eps,
        "eps_tilde": eps_tilde,
        "split": cfg.split,
    })

    attempts = []
    final = None
    certificate = None
    for attempt in range(cfg.retry_limit):
        scfg = SparsifyConfig(epsilon=eps, oversample_c=cfg.oversample_c,
                              sample_count=cfg.sample_count,
                              seed=cfg.seed + attempt)
        out = sample_sparsifier(graph, tbl, scfg)
        record = {"attempt": attempt, "seed": scfg.seed, "q": out.q_used}
        try:
            lap_cert = certify_laplacian(lap, laplacian(out.graph), eps)
        except KernelMismatchError as exc:
            record.update({"kernel_mismatch": str(exc), "passed": False})
            attempts.append(record)
            continue
        adj_cert = certify_adjacency(adj, adjacency(out.graph), deg, eps_prime)
        cert = merge_certificates(lap_cert, adj_cert)
        passed = bool(cert.verdict_laplacian and cert.verdict_adjacency)
        record.update({"passed": passed, "certificate": cert.to_dict()})
        attempts.append(record)
        final, certificate = out, cert
        if passed:
            break

    success = bool(attempts and attempts[-1].get("passed"))
    scfg = SparsifyConfig(epsilon=eps, oversample_c=cfg.oversample_c,
                          sample_count=cfg.sample_count,
                          seed=cfg.seed + OCCUPANCY_SEED_OFFSET)
    rs_report = row_sparsity_report(graph, tbl, scfg, seeds=cfg.seeds, b=cfg.b)
    warnings = []
    if not rs_report.marginal.all_pass:
        warnings.append(
            "row-sparsity marginal condition violated at vertices "
            f"{list(rs_report.marginal.violating_vertices)[:8]}"
            f"{'...' if len(rs_report.marginal.violating_vertices) > 8 else ''}")

    sweeps = {}
    if graph.n <= MAX_EVOLUTION_DIM and final is not None:
        t_grid = np.linspace(cfg.t / cfg.t_steps, cfg.t, cfg.t_steps)
        sweeps["laplacian"] = evolution_sweep(lap, laplacian(final.graph), t_grid)
        sweeps["adjacency"] = evolution_sweep(adj, adjacency(final.graph), t_grid)
    elif graph.n > MAX_EVOLUTION_DIM:
        warnings.append(f"evolution sweep skipped: n={graph.n} exceeds {MAX_EVOLUTION_DIM}")

    report = {
        "config": asdict(cfg),
        "graph": {"n": graph.n, "m": graph.m},
        "foster_residual": foster_residual,
        "budget": budget,
        "attempts": attempts,
        "success": success,
        "row_sparsity": rs_report.to_dict(),
        "warnings": warnings,
    }
    if final is not None:
        report["sparsifier"] = {
            "edges": final.graph.m,
            "q": final.q_used,
            "seed": final.seed,
            "implied_a": implied_sample_exponent(graph.n, final.q_used),
        }

    reportio.write_json(report, out_dir / "pipeline_report.json")
    artifacts.append("pipeline_report.json")
    reportio.write_csv(out_dir / "resist_edges.csv",
                       ["edge_index", "u", "v", "w", "R", "p_e"],
                       reportio.resistance_rows(graph, tbl))
    reportio.write_csv(out_dir / "resist_vertices.csv", ["vertex", "p_v"],
                       reportio.marginal_rows(tbl))
    artifacts += ["resist_edges.csv", "resist_vertices.csv"]
    if final is not None:
        write_edgelist(final.graph, out_dir / "sparsifier.txt")
        reportio.write_json(
            {"q": final.q_used, "seed": final.seed, "epsilon": eps,
             "edge_tallies": final.edge_tally.tolist(),
             "vertex_tallies": final.vertex_tally.tolist(),
             "implied_a": implied_sample_exponent(graph.n, final.q_used)},
            out_dir / "sparsifier_meta.json")
        artifacts += ["sparsifier.txt", "sparsifier_meta.json"]
    if certificate is not None:
        reportio.write_json(certificate.to_dict(), out_dir / "certificate.json")
        artifacts.append("certificate.json")
    reportio.write_json(rs_report.to_dict(), out_dir / "rowsparsity.json")
    artifacts.append("rowsparsity.json")
    for name, reports in sweeps.items():
        csv_path = out_dir / f"hamsim_{name}.csv"
        reportio.write_csv(csv_path, ["t", "diff_norm", "sq_bound", "commuting"],
                           reportio.sweep_rows(reports))
        artifacts.append(csv_path.name)

    if cfg.figures:
        plots.resistance_histogram(tbl, out_dir / "resistance_hist.png")
        plots.occupancy_histogram(rs_report.occupancy, rs_report.prop1.r_threshold,
                                  out_dir / "occupancy_hist.png")
        artifacts += ["resistance_hist.png", "occupancy_hist.png"]
        for name, reports in sweeps.items():
            fig_path = out_dir / f"hamsim_{name}.png"
            plots.hamsim_sweep_plot(reports, f"evolution error ({name})", fig_path)
            artifacts.append(fig_path.name)

    exit_code = EXIT_OK if success else EXIT_CERT_FAILURE
    return PipelineResult(exit_code, report, out_dir, artifacts=artifacts)
