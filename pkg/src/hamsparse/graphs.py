"""Weighted undirected graphs and their derived dense matrices.

A graph is an immutable edge list over vertices ``0..n-1``.  Dense matrices
(Laplacian, adjacency, incidence) are materialized on demand as numpy arrays;
at the scales this package targets (n up to a couple thousand) density keeps
the pseudoinverse and pencil eigensolves simple.

Edge-list text format used as the interchange unit by the CLI::

    # optional comments
    n m
    u v w          (m lines, whitespace separated, w decimal)
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from pathlib import Path

import numpy as np

Edge = tuple[int, int, float]


@dataclass(frozen=True)
class WeightedGraph:
    """Simple undirected weighted graph.

    Invariants enforced at construction: endpoints in range, no self loops,
    strictly positive finite weights, and at most one edge per unordered
    vertex pair (duplicate input edges are merged by summing their weights,
    so multiset sampling output collapses through the same path).
    """

    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"vertex count must be >= 1, got {self.n}")
        merged: dict[tuple[int, int], float] = {}
        for u, v, w in self.edges:
            u, v = int(u), int(v)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u},{v}) out of range for n={self.n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u} not allowed")
            w = float(w)
            if not np.isfinite(w) or w <= 0.0:
                raise ValueError(f"edge ({u},{v}) has invalid weight {w}")
            key = (u, v) if u < v else (v, u)
            merged[key] = merged.get(key, 0.0) + w
        canon = tuple((u, v, merged[(u, v)]) for u, v in sorted(merged))
        object.__setattr__(self, "edges", canon)

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Endpoint and weight arrays (each of length m)."""
        if not self.edges:
            empty_i = np.zeros(0, dtype=np.int64)
            return empty_i, empty_i.copy(), np.zeros(0)
        u, v, w = zip(*self.edges)
        return np.asarray(u, dtype=np.int64), np.asarray(v, dtype=np.int64), np.asarray(w)


def adjacency(g: WeightedGraph) -> np.ndarray:
    """Symmetric adjacency matrix with zero diagonal, A[i,j] = w(i,j)."""
    a = np.zeros((g.n, g.n))
    u, v, w = g.edge_arrays()
    a[u, v] = w
    a[v, u] = w
    return a


def degrees(g: WeightedGraph) -> np.ndarray:
    """Weighted degree of each vertex, D_ii = sum_j A_ij."""
    d = np.zeros(g.n)
    u, v, w = g.edge_arrays()
    np.add.at(d, u, w)
    np.add.at(d, v, w)
    return d


def laplacian(g: WeightedGraph) -> np.ndarray:
    """Graph Laplacian L = D - A (rows sum to zero)."""
    return np.diag(degrees(g)) - adjacency(g)


def incidence(g: WeightedGraph) -> np.ndarray:
    """m x n edge-vertex incidence matrix B with rows (+sqrt(w), -sqrt(w)).

    Orientation is the canonical low-to-high vertex order; B.T @ B equals the
    Laplacian up to floating-point accumulation.
    """
    b = np.zeros((g.m, g.n))
    u, v, w = g.edge_arrays()
    rows = np.arange(g.m)
    b[rows, u] = np.sqrt(w)
    b[rows, v] = -np.sqrt(w)
    return b


def connected_components(g: WeightedGraph) -> tuple[int, np.ndarray]:
    """Component count and per-vertex component labels (BFS labeling)."""
    neighbors: list[list[int]] = [[] for _ in range(g.n)]
    for u, v, _ in g.edges:
        neighbors[u].append(v)
        neighbors[v].append(u)
    labels = np.full(g.n, -1, dtype=np.int64)
    count = 0
    for start in range(g.n):
        if labels[start] >= 0:
            continue
        labels[start] = count
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in neighbors[x]:
                if labels[y] < 0:
                    labels[y] = count
                    queue.append(y)
        count += 1
    return count, labels


def read_edgelist(path: str | Path) -> WeightedGraph:
    """Parse the ``n m`` / ``u v w`` edge-list text format."""
    lines = []
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            lines.append(line)
    if not lines:
        raise ValueError(f"{path}: no content")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError(f"{path}: header must be 'n m', got {lines[0]!r}")
    n, m = int(header[0]), int(header[1])
    if len(lines) - 1 != m:
        raise ValueError(f"{path}: header promises {m} edges, found {len(lines) - 1}")
    edges = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"{path}: bad edge line {line!r}")
        edges.append((int(parts[0]), int(parts[1]), float(parts[2])))
    return WeightedGraph(n, tuple(edges))


def write_edgelist(g: WeightedGraph, path: str | Path) -> None:
    """Write a graph in the edge-list text format (floats round-trip via repr)."""
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v} {w!r}" for u, v, w in g.edges)
    Path(path).write_text("\n".join(out) + "\n")
