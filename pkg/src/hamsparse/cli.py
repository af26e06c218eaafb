"""Command-line front end wiring the library into reproducible experiments.

Subcommands: gen, resist, sparsify, certify, rowsparsity, hamsim, qtest-ae,
qtest-max, pipeline.  Outputs land in --out (default cwd): delimited CSV and
JSON reports, with matplotlib figures rendered alongside unless --no-figures.
"""

from __future__ import annotations

import argparse
import json
import sys
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
from .evolution import MAX_EVOLUTION_DIM, evolution_sweep, small_time_cubic_fit
from .generators import FAMILIES, gen_graph
from .graphs import adjacency, degrees, laplacian, read_edgelist, write_edgelist
from .pipeline import EXIT_INPUT_ERROR, EXIT_NUMERIC_ERROR, PipelineConfig, run_pipeline
from .qtest import (
    DEFAULT_CAP_QUBITS,
    DEFAULT_FRACTION_BITS,
    OracleMatrix,
    find_max_row_sum,
    full_sparsity_scan,
)
from .resistance import effective_resistances, foster_check
from .rowsparsity import row_sparsity_report
from .sparsify import SparsifyConfig, implied_sample_exponent, sample_sparsifier


def _graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", required=True, help="edge-list file (n m header)")


def _common_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--json", action="store_true",
                   help="print the summary as JSON on stdout")
    p.add_argument("--no-figures", dest="figures", action="store_false",
                   help="skip rendering PNG figures")


def _sparsify_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--epsilon", type=float, default=0.5)
    p.add_argument("--oversample-c", type=float, default=4.0)
    p.add_argument("--q", type=int, default=None,
                   help="explicit sample count (overrides the C n ln n / eps^2 default)")


def _emit(summary: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(summary, indent=2))
    else:
        for key, value in summary.items():
            print(f"{key}: {value}")


def _outdir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _load_matrix(args) -> OracleMatrix:
    if args.matrix_csv:
        entries = np.loadtxt(args.matrix_csv, delimiter=",", ndmin=2)
    else:
        entries = adjacency(read_edgelist(args.graph))
    return OracleMatrix(entries, fraction_bits=args.frac_bits, lamb=args.lam)


def cmd_gen(args) -> int:
    g = gen_graph(args.family, n=args.n, p=args.p, rows=args.rows,
                  cols=args.cols, seed=args.seed, weight_dist=args.weights,
                  wmin=args.wmin, wmax=args.wmax)
    out = _outdir(args) / args.name
    write_edgelist(g, out)
    _emit({"file": str(out), "n": g.n, "m": g.m}, args.json)
    return 0


def cmd_resist(args) -> int:
    g = read_edgelist(args.graph)
    tbl = effective_resistances(g)
    out = _outdir(args)
    reportio.write_csv(out / "resist_edges.csv",
                       ["edge_index", "u", "v", "w", "R", "p_e"],
                       reportio.resistance_rows(g, tbl))
    reportio.write_csv(out / "resist_vertices.csv", ["vertex", "p_v"],
                       reportio.marginal_rows(tbl))
    if args.figures:
        plots.resistance_histogram(tbl, out / "resistance_hist.png")
    _emit({"edges_csv": str(out / "resist_edges.csv"),
           "vertices_csv": str(out / "resist_vertices.csv"),
           "foster_residual": foster_check(g, tbl),
           "weighted_resistance_sum": tbl.weighted_resistance_sum}, args.json)
    return 0


def cmd_sparsify(args) -> int:
    g = read_edgelist(args.graph)
    tbl = effective_resistances(g)
    cfg = SparsifyConfig(epsilon=args.epsilon, oversample_c=args.oversample_c,
                         sample_count=args.q, seed=args.seed)
    out_dir = _outdir(args)
    result = sample_sparsifier(g, tbl, cfg)
    write_edgelist(result.graph, out_dir / "sparsifier.txt")
    meta = {"q": result.q_used, "seed": result.seed, "epsilon": args.epsilon,
            "edge_tallies": result.edge_tally.tolist(),
            "vertex_tallies": result.vertex_tally.tolist(),
            "implied_a": implied_sample_exponent(g.n, result.q_used)}
    reportio.write_json(meta, out_dir / "sparsifier_meta.json")
    _emit({"sparsifier": str(out_dir / "sparsifier.txt"),
           "edges_kept": result.graph.m, "q": result.q_used}, args.json)
    return 0


def cmd_certify(args) -> int:
    g = read_edgelist(args.graph)
    sp = read_edgelist(args.sparsifier)
    if args.eps_prime is not None:
        eps_prime = args.eps_prime
    else:
        eps_prime = combine_epsilons(args.epsilon, args.eps_tilde)
    try:
        lap_cert = certify_laplacian(laplacian(g), laplacian(sp), args.epsilon)
    except KernelMismatchError as exc:
        _emit({"error": str(exc)}, args.json)
        return 2
    adj_cert = certify_adjacency(adjacency(g), adjacency(sp), degrees(g), eps_prime)
    cert = merge_certificates(lap_cert, adj_cert)
    out = _outdir(args)
    reportio.write_json(cert.to_dict(), out / "certificate.json")
    _emit(cert.to_dict(), args.json)
    return 0 if (cert.verdict_laplacian and cert.verdict_adjacency) else 2


def cmd_rowsparsity(args) -> int:
    g = read_edgelist(args.graph)
    tbl = effective_resistances(g)
    cfg = SparsifyConfig(epsilon=args.epsilon, oversample_c=args.oversample_c,
                         sample_count=args.q, seed=args.seed)
    report = row_sparsity_report(g, tbl, cfg, seeds=args.seeds, a=args.a, b=args.b)
    out = _outdir(args)
    reportio.write_json(report.to_dict(), out / "rowsparsity.json")
    if args.figures:
        plots.occupancy_histogram(report.occupancy, report.prop1.r_threshold,
                                  out / "occupancy_hist.png")
    _emit(report.to_dict(), args.json)
    return 0


def cmd_hamsim(args) -> int:
    g = read_edgelist(args.graph)
    if g.n > MAX_EVOLUTION_DIM:
        print(f"error: n={g.n} exceeds the evolution cap {MAX_EVOLUTION_DIM}",
              file=sys.stderr)
        return EXIT_INPUT_ERROR
    tbl = effective_resistances(g)
    cfg = SparsifyConfig(epsilon=args.epsilon, oversample_c=args.oversample_c,
                         sample_count=args.q, seed=args.seed)
    sparsifier = sample_sparsifier(g, tbl, cfg).graph
    t_grid = np.linspace(args.t_max / args.t_steps, args.t_max, args.t_steps)
    out = _outdir(args)
    matrices = ["laplacian", "adjacency"] if args.matrix == "both" else [args.matrix]
    summary = {}
    for name in matrices:
        build = laplacian if name == "laplacian" else adjacency
        reports = evolution_sweep(build(g), build(sparsifier), t_grid)
        reportio.write_csv(out / f"hamsim_{name}.csv",
                           ["t", "diff_norm", "sq_bound", "commuting"],
                           reportio.sweep_rows(reports))
        if args.figures:
            plots.hamsim_sweep_plot(reports, f"evolution error ({name})",
                                    out / f"hamsim_{name}.png")
        fit = small_time_cubic_fit(build(g), build(sparsifier),
                                   np.linspace(0.2, 1.0, 5))
        summary[name] = {
            "csv": str(out / f"hamsim_{name}.csv"),
            "max_diff_norm": max(r.diff_norm for r in reports),
            "commuting": all(r.commuting for r in reports),
            "small_time_cubic_coefficient": fit["cubic_coefficient"],
        }
    _emit(summary, args.json)
    return 0


def cmd_qtest_ae(args) -> int:
    oracle = _load_matrix(args)
    result = full_sparsity_scan(oracle, args.delta, args.eps, seed=args.seed,
                                cap_qubits=args.cap_qubits,
                                threshold=args.threshold)
    out = _outdir(args)
    reportio.write_json(result.to_dict(), out / "qtest_ae.json")
    _emit(result.to_dict(), args.json)
    return 0


def cmd_qtest_max(args) -> int:
    oracle = _load_matrix(args)
    result = find_max_row_sum(oracle, seed=args.seed)
    out = _outdir(args)
    reportio.write_json(result.to_dict(), out / "qtest_max.json")
    _emit(result.to_dict(), args.json)
    return 0


def cmd_pipeline(args) -> int:
    cfg = PipelineConfig(
        graph_path=args.graph, family=args.family, n=args.n, p=args.p,
        rows=args.rows, cols=args.cols, weight_dist=args.weights,
        eps_sim=args.eps_sim, t=args.t, epsilon=args.epsilon,
        split=args.split, oversample_c=args.oversample_c,
        sample_count=args.q, b=args.b, seeds=args.seeds,
        retry_limit=args.retry_limit, t_steps=args.t_steps,
        matrix=args.matrix, seed=args.seed, out_dir=args.out,
        figures=args.figures,
    )
    result = run_pipeline(cfg)
    if result.error:
        print(f"error: {result.error}", file=sys.stderr)
    else:
        _emit({"exit_code": result.exit_code, "success": result.report["success"],
               "attempts": len(result.report["attempts"]),
               "out_dir": str(result.out_dir)}, args.json)
    return result.exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hamsparse",
        description="spectral sparsification experiments with certification "
                    "and quantum row-sparsity tester simulation")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a graph family instance")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--rows", type=int, default=0)
    p.add_argument("--cols", type=int, default=0)
    p.add_argument("--weights", default="unit", choices=["unit", "uniform"])
    p.add_argument("--wmin", type=float, default=0.5)
    p.add_argument("--wmax", type=float, default=1.5)
    p.add_argument("--name", default="graph.txt")
    _common_args(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("resist", help="effective resistances and sampling pmf")
    _graph_args(p)
    _common_args(p)
    p.set_defaults(func=cmd_resist)

    p = sub.add_parser("sparsify", help="sample a reweighted sparsifier")
    _graph_args(p)
    _sparsify_args(p)
    _common_args(p)
    p.set_defaults(func=cmd_sparsify)

    p = sub.add_parser("certify", help="certify Laplacian/adjacency closeness")
    _graph_args(p)
    p.add_argument("--sparsifier", required=True)
    p.add_argument("--epsilon", type=float, default=0.5)
    p.add_argument("--eps-tilde", type=float, default=0.5)
    p.add_argument("--eps-prime", type=float, default=None,
                   help="explicit adjacency budget (overrides epsilon + eps_tilde)")
    _common_args(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("rowsparsity", help="row-sparsity bounds and occupancy")
    _graph_args(p)
    _sparsify_args(p)
    p.add_argument("--seeds", type=int, default=100)
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--b", type=float, default=None)
    _common_args(p)
    p.set_defaults(func=cmd_rowsparsity)

    p = sub.add_parser("hamsim", help="evolution error sweep for a sparsifier")
    _graph_args(p)
    _sparsify_args(p)
    p.add_argument("--matrix", default="both",
                   choices=["laplacian", "adjacency", "both"])
    p.add_argument("--t-max", type=float, default=1.0)
    p.add_argument("--t-steps", type=int, default=8)
    _common_args(p)
    p.set_defaults(func=cmd_hamsim)

    for name, func, extra in (("qtest-ae", cmd_qtest_ae, True),
                              ("qtest-max", cmd_qtest_max, False)):
        p = sub.add_parser(name, help=f"quantum row-sparsity tester ({name})")
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--matrix-csv", help="dense CSV matrix input")
        src.add_argument("--graph", help="edge-list input (adjacency extracted)")
        p.add_argument("--frac-bits", type=int, default=DEFAULT_FRACTION_BITS)
        p.add_argument("--lam", type=float, default=None,
                       help="normalization bound (defaults to max |A_ij|)")
        if extra:
            p.add_argument("--delta", type=float, required=True)
            p.add_argument("--eps", type=float, default=1.0)
            p.add_argument("--cap-qubits", type=int, default=DEFAULT_CAP_QUBITS)
            p.add_argument("--threshold", type=float, default=None)
        _common_args(p)
        p.set_defaults(func=func)

    p = sub.add_parser("pipeline", help="full sparsify/certify/simulate run")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph")
    src.add_argument("--family", choices=FAMILIES)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--rows", type=int, default=0)
    p.add_argument("--cols", type=int, default=0)
    p.add_argument("--weights", default="unit", choices=["unit", "uniform"])
    p.add_argument("--eps-sim", type=float, default=0.25)
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--epsilon", type=float, default=None,
                   help="explicit sparsifier epsilon (skips the eps-sim budget)")
    p.add_argument("--split", type=float, default=0.5)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--oversample-c", type=float, default=4.0)
    p.add_argument("--b", type=float, default=None)
    p.add_argument("--seeds", type=int, default=25)
    p.add_argument("--retry-limit", type=int, default=3)
    p.add_argument("--t-steps", type=int, default=8)
    p.add_argument("--matrix", default="adjacency",
                   choices=["adjacency", "laplacian"])
    _common_args(p)
    p.set_defaults(func=cmd_pipeline)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except np.linalg.LinAlgError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC_ERROR


if __name__ == "__main__":
    sys.exit(main())
