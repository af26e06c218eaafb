"""Spectral closeness certificates for Laplacian and adjacency pairs.

The Laplacian check certifies (1-eps) x'Lx <= x'Lt x <= (1+eps) x'Lx by
solving the generalized eigenproblem of the pair restricted to range(L): the
quadratic-form ratio extremes are exactly the extreme pencil eigenvalues
there.  A kernel of L that Lt does not annihilate makes the upper bound fail
at infinity, which is reported as a hard error rather than a false verdict.

The adjacency check certifies |x'(At - A)x| <= eps' * x'x * max_i D_ii, which
for symmetric matrices is equivalent to ||At - A||_2 <= eps' max_i D_ii.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict

import numpy as np

NULLSPACE_CUTOFF = 1e-9
KERNEL_TOLERANCE = 1e-8
PSD_TOLERANCE = 1e-8
#: absolute slack on verdict interval comparisons so exact boundary cases
#: (e.g. Lt = (1+eps) L) pass the closed interval despite rounding.
VERDICT_SLACK = 1e-12


class KernelMismatchError(ValueError):
    """ker(L) is not contained in ker(Lt): not a spectral approximation."""


@dataclass(frozen=True)
class SpectralCertificate:
    """Numeric evidence and verdicts; fields are None until their check runs."""

    epsilon: float | None = None
    pencil_min: float | None = None
    pencil_max: float | None = None
    epsilon_measured: float | None = None
    verdict_laplacian: bool | None = None
    eps_prime: float | None = None
    adjacency_deviation: float | None = None
    adjacency_bound: float | None = None
    eps_tilde_measured: float | None = None
    verdict_adjacency: bool | None = None

    def to_dict(self) -> dict:
        out = asdict(self)
        out["nullspace_cutoff"] = NULLSPACE_CUTOFF
        out["kernel_tolerance"] = KERNEL_TOLERANCE
        out["verdict_slack"] = VERDICT_SLACK
        return out


def merge_certificates(lap: SpectralCertificate,
                       adj: SpectralCertificate) -> SpectralCertificate:
    """Combine the Laplacian-side and adjacency-side partial certificates."""
    return SpectralCertificate(
        epsilon=lap.epsilon,
        pencil_min=lap.pencil_min,
        pencil_max=lap.pencil_max,
        epsilon_measured=lap.epsilon_measured,
        verdict_laplacian=lap.verdict_laplacian,
        eps_prime=adj.eps_prime,
        adjacency_deviation=adj.adjacency_deviation,
        adjacency_bound=adj.adjacency_bound,
        eps_tilde_measured=adj.eps_tilde_measured,
        verdict_adjacency=adj.verdict_adjacency,
    )


def _check_square_pair(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix pair must share a square shape, got {a.shape} vs {b.shape}")


def certify_laplacian(lap: np.ndarray, lap_tilde: np.ndarray,
                      epsilon: float) -> SpectralCertificate:
    """Certify the two-sided quadratic-form bound at accuracy ``epsilon``.

    The pencil extremes come from projecting both matrices onto an
    orthonormal eigenbasis of range(L); there L projects to a positive
    diagonal, so the reduced problem is an ordinary symmetric eigensolve of
    D^{-1/2} U' Lt U D^{-1/2}.  Verdict uses the closed interval
    [1-eps, 1+eps] with a 1e-12 slack for rounding at the boundary.
    """
    if epsilon < 0:
        raise ValueError(f"epsilon must be >= 0, got {epsilon}")
    _check_square_pair(lap, lap_tilde)

    eigval, eigvec = np.linalg.eigh(lap)
    norm_l = float(max(abs(eigval[0]), abs(eigval[-1]))) if eigval.size else 0.0
    norm_lt = float(np.linalg.norm(lap_tilde, 2)) if lap_tilde.size else 0.0
    if eigval.size and eigval[0] < -PSD_TOLERANCE * max(norm_l, 1e-300):
        raise ValueError(f"first matrix is not PSD (min eigenvalue {eigval[0]:.3e})")
    lt_eig = np.linalg.eigvalsh(lap_tilde)
    if lt_eig.size and lt_eig[0] < -PSD_TOLERANCE * max(norm_lt, 1e-300):
        raise ValueError(f"second matrix is not PSD (min eigenvalue {lt_eig[0]:.3e})")

    cutoff = NULLSPACE_CUTOFF * norm_l
    in_range = eigval > cutoff
    null_vecs = eigvec[:, ~in_range]
    if null_vecs.size:
        residual = np.linalg.norm(lap_tilde @ null_vecs, axis=0)
        if np.any(residual > KERNEL_TOLERANCE * max(norm_lt, 1e-300)):
            worst = float(residual.max())
            raise KernelMismatchError(
                "ker(L) not contained in ker(Lt): not a spectral approximation "
                f"(worst kernel residual {worst:.3e} vs tolerance "
                f"{KERNEL_TOLERANCE * norm_lt:.3e})")

    if not np.any(in_range):
        # both matrices vanish on the whole space; the bound holds vacuously
        pencil_min = pencil_max = 1.0
    else:
        basis = eigvec[:, in_range] / np.sqrt(eigval[in_range])
        reduced = basis.T @ lap_tilde @ basis
        reduced = 0.5 * (reduced + reduced.T)
        pencil = np.linalg.eigvalsh(reduced)
        pencil_min, pencil_max = float(pencil[0]), float(pencil[-1])

    measured = max(1.0 - pencil_min, pencil_max - 1.0, 0.0)
    verdict = (pencil_min >= 1.0 - epsilon - VERDICT_SLACK
               and pencil_max <= 1.0 + epsilon + VERDICT_SLACK)
    return SpectralCertificate(
        epsilon=float(epsilon),
        pencil_min=pencil_min,
        pencil_max=pencil_max,
        epsilon_measured=measured,
        verdict_laplacian=verdict,
    )


def degree_deviation(deg: np.ndarray, deg_tilde: np.ndarray) -> float:
    """Largest relative degree deviation max_i |Dt_ii - D_ii| / D_ii.

    Vertices with zero original degree contribute 0 when the sparsified
    degree is also zero and +inf otherwise.
    """
    deg = np.asarray(deg, dtype=float)
    deg_tilde = np.asarray(deg_tilde, dtype=float)
    diff = np.abs(deg_tilde - deg)
    out = 0.0
    positive = deg > 0
    if np.any(positive):
        out = float((diff[positive] / deg[positive]).max())
    if np.any(diff[~positive] > 0):
        out = math.inf
    return out


def certify_adjacency(adj: np.ndarray, adj_tilde: np.ndarray,
                      deg: np.ndarray, eps_prime: float) -> SpectralCertificate:
    """Certify ||At - A||_2 <= eps' * max_i D_ii.

    Also measures the relative degree deviation between D and the row sums
    of At, the quantity the tail bounds of ``eps_tilde_tail_bound`` control.
    """
    if eps_prime < 0:
        raise ValueError(f"eps_prime must be >= 0, got {eps_prime}")
    _check_square_pair(adj, adj_tilde)
    deviation = float(np.abs(np.linalg.eigvalsh(adj_tilde - adj)).max()) if adj.size else 0.0
    max_degree = float(np.max(deg)) if np.size(deg) else 0.0
    bound = eps_prime * max_degree
    eps_tilde_measured = degree_deviation(deg, adj_tilde.sum(axis=1))
    return SpectralCertificate(
        eps_prime=float(eps_prime),
        adjacency_deviation=deviation,
        adjacency_bound=bound,
        eps_tilde_measured=eps_tilde_measured,
        verdict_adjacency=deviation <= bound + VERDICT_SLACK * max(1.0, bound),
    )


def eps_tilde_tail_bound(n: int, eps_tilde: float, alpha: float,
                         side: str = "upper") -> float:
    """Union-bounded Chernoff tail for the relative degree deviation.

    Upper side: n exp(-eps_tilde^2 (ln n)^alpha / 3); the lower side uses
    divisor 2.  Result clamped to [0, 1]; natural log throughout.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if eps_tilde < 0:
        raise ValueError(f"eps_tilde must be >= 0, got {eps_tilde}")
    if alpha <= 1:
        raise ValueError(f"alpha must exceed 1, got {alpha}")
    if side not in ("upper", "lower"):
        raise ValueError(f"side must be 'upper' or 'lower', got {side!r}")
    divisor = 3.0 if side == "upper" else 2.0
    exponent = -(eps_tilde**2) * math.log(n) ** alpha / divisor
    return min(1.0, n * math.exp(exponent))


def combine_epsilons(epsilon: float, eps_tilde: float) -> float:
    """Adjacency budget eps' = eps + eps_tilde."""
    if epsilon < 0 or eps_tilde < 0:
        raise ValueError("epsilon and eps_tilde must be >= 0")
    return epsilon + eps_tilde
