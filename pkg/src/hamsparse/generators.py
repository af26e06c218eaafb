"""Deterministic graph family generators for benchmarks and experiments."""

from __future__ import annotations

import numpy as np

from .graphs import WeightedGraph

FAMILIES = ("random", "cycle", "path", "grid", "star", "complete")


def _weights(rng: np.random.Generator | None, count: int,
             dist: str, wmin: float, wmax: float) -> np.ndarray:
    if dist == "unit":
        return np.ones(count)
    if dist == "uniform":
        if rng is None:
            raise ValueError("uniform weights require a seed")
        if not (0 < wmin <= wmax):
            raise ValueError(f"need 0 < wmin <= wmax, got [{wmin}, {wmax}]")
        return rng.uniform(wmin, wmax, size=count)
    raise ValueError(f"unknown weight distribution {dist!r}")


def gen_graph(family: str, n: int = 0, *, p: float = 0.5,
              rows: int = 0, cols: int = 0, seed: int | None = None,
              weight_dist: str = "unit", wmin: float = 0.5,
              wmax: float = 1.5) -> WeightedGraph:
    """Generate one graph from a named family, deterministic given the seed.

    ``random`` is G(n, p) with i.i.d. edges; ``grid`` takes rows x cols and
    ignores ``n``.  Weights are unit unless ``weight_dist='uniform'``.
    """
    rng = np.random.default_rng(seed) if seed is not None else None

    if family == "grid":
        if rows < 1 or cols < 1 or rows * cols < 2:
            raise ValueError(f"grid needs rows, cols >= 1 and >= 2 vertices, got {rows}x{cols}")
        n = rows * cols
        pairs = []
        for r in range(rows):
            for c in range(cols):
                i = r * cols + c
                if c + 1 < cols:
                    pairs.append((i, i + 1))
                if r + 1 < rows:
                    pairs.append((i, i + cols))
    elif family == "random":
        if n < 2:
            raise ValueError(f"random graph needs n >= 2, got {n}")
        if not (0.0 <= p <= 1.0):
            raise ValueError(f"edge probability must be in [0, 1], got {p}")
        if rng is None:
            raise ValueError("random graphs require a seed")
        iu, ju = np.triu_indices(n, k=1)
        keep = rng.random(iu.shape[0]) < p
        pairs = list(zip(iu[keep].tolist(), ju[keep].tolist()))
    elif family == "cycle":
        if n < 3:
            raise ValueError(f"cycle needs n >= 3, got {n}")
        pairs = [(i, (i + 1) % n) for i in range(n)]
    elif family == "path":
        if n < 2:
            raise ValueError(f"path needs n >= 2, got {n}")
        pairs = [(i, i + 1) for i in range(n - 1)]
    elif family == "star":
        if n < 2:
            raise ValueError(f"star needs n >= 2, got {n}")
        pairs = [(0, i) for i in range(1, n)]
    elif family == "complete":
        if n < 2:
            raise ValueError(f"complete graph needs n >= 2, got {n}")
        iu, ju = np.triu_indices(n, k=1)
        pairs = list(zip(iu.tolist(), ju.tolist()))
    else:
        raise ValueError(f"unknown family {family!r}; choose one of {FAMILIES}")

    w = _weights(rng, len(pairs), weight_dist, wmin, wmax)
    return WeightedGraph(n, tuple((u, v, wi) for (u, v), wi in zip(pairs, w)))
