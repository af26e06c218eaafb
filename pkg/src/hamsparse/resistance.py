"""Exact effective resistances and the edge-sampling distribution they induce.

Resistances come from the Moore-Penrose pseudoinverse of the dense Laplacian:
R_e = (chi_u - chi_v)^T L+ (chi_u - chi_v).  Eigenvalues below
``NULLSPACE_CUTOFF * ||L||_2`` are treated as exact zero modes, which makes
disconnected graphs work transparently (resistances are then per component).

The sampling pmf is the resistance-weighted one, p_e proportional to w_e R_e;
any strictly positive pmf can be substituted downstream in the sampler.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import WeightedGraph, connected_components, laplacian

NULLSPACE_CUTOFF = 1e-9


@dataclass(frozen=True)
class ResistanceTable:
    """Per-edge effective resistances with the induced edge and vertex pmfs.

    ``edge_probability`` sums to 1; ``vertex_marginal[v]`` is the total
    probability of edges incident to v and sums to 2 over all vertices.
    """

    n: int
    resistances: np.ndarray
    edge_probability: np.ndarray
    vertex_marginal: np.ndarray
    weighted_resistance_sum: float


def laplacian_pseudoinverse(g: WeightedGraph) -> np.ndarray:
    """Dense L+ via symmetric eigendecomposition with nullspace cutoff."""
    lap = laplacian(g)
    eigval, eigvec = np.linalg.eigh(lap)
    norm = float(eigval[-1]) if len(eigval) else 0.0
    cutoff = NULLSPACE_CUTOFF * norm
    inv = np.where(eigval > cutoff, 1.0 / np.where(eigval > cutoff, eigval, 1.0), 0.0)
    return (eigvec * inv) @ eigvec.T


def effective_resistances(g: WeightedGraph) -> ResistanceTable:
    """Resistance table for every edge of ``g``.

    Raises ``ValueError`` on edgeless graphs, where the pmf is undefined.
    """
    if g.m == 0:
        raise ValueError("effective resistances need at least one edge")
    pinv = laplacian_pseudoinverse(g)
    u, v, w = g.edge_arrays()
    r = pinv[u, u] + pinv[v, v] - 2.0 * pinv[u, v]
    wr = w * r
    total = float(wr.sum())
    p_e = wr / total
    p_v = np.zeros(g.n)
    np.add.at(p_v, u, p_e)
    np.add.at(p_v, v, p_e)
    return ResistanceTable(
        n=g.n,
        resistances=r,
        edge_probability=p_e,
        vertex_marginal=p_v,
        weighted_resistance_sum=total,
    )


def foster_check(g: WeightedGraph, tbl: ResistanceTable) -> float:
    """Residual of Foster's identity, |sum_e w_e R_e - (n - components)|.

    Serves as an independent correctness oracle for the resistance values.
    """
    c, _ = connected_components(g)
    return abs(tbl.weighted_resistance_sum - (g.n - c))
