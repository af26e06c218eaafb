"""Report writers: canonical JSON and the delimited CSV formats.

JSON is written with stable key order (insertion order of the dicts built by
the pipeline) and floats through Python's shortest round-trip repr, so a
rerun with the same config and seed produces byte-identical files.
"""

from __future__ import annotations

import json
from pathlib import Path


def write_json(obj, path: str | Path) -> None:
    Path(path).write_text(json.dumps(obj, indent=2) + "\n")


def write_csv(path: str | Path, header: list[str], rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(repr(x) if isinstance(x, float) else str(x) for x in row))
    Path(path).write_text("\n".join(lines) + "\n")


def resistance_rows(g, tbl):
    for idx, ((u, v, w), r, p) in enumerate(
            zip(g.edges, tbl.resistances, tbl.edge_probability)):
        yield idx, u, v, w, float(r), float(p)


def marginal_rows(tbl):
    for v, p in enumerate(tbl.vertex_marginal):
        yield v, float(p)


def sweep_rows(reports):
    for rep in reports:
        yield rep.t, rep.diff_norm, rep.sq_bound_first_order, rep.commuting
