"""Unitary evolution under symmetric matrices and the sparsification error.

exp(-iHt) is built from the dense eigendecomposition of H, which is exact at
desk scale and yields the spectral norm for free.  Error reports compare the
measured operator discrepancy against the first-order commuting-case bound
eps'^2 (t ||H||)^2, where eps' is the measured relative spectral deviation
||Ht - H|| / ||H||.  Per-state errors follow the squared-norm convention, so
comparisons are between squared quantities throughout (field names say sq_).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

COMMUTING_TOLERANCE = 1e-10

#: dense complex eigensolves get expensive beyond this
MAX_EVOLUTION_DIM = 512


def _symmetric_norm(m: np.ndarray) -> float:
    return float(np.abs(np.linalg.eigvalsh(m)).max()) if m.size else 0.0


def evolve(h: np.ndarray, t: float) -> np.ndarray:
    """U = exp(-iHt) for real symmetric H, via H = V diag(lam) V'."""
    h = np.asarray(h, dtype=float)
    if not np.all(np.isfinite(h)):
        raise ValueError("matrix has non-finite entries")
    lam, vec = np.linalg.eigh(h)
    return (vec * np.exp(-1j * lam * t)) @ vec.T


def commutator_norm(h: np.ndarray, h_tilde: np.ndarray) -> float:
    """Spectral norm of H Ht - Ht H."""
    return float(np.linalg.norm(h @ h_tilde - h_tilde @ h, 2))


@dataclass(frozen=True)
class EvolutionErrorReport:
    """Measured evolution discrepancy at one time t against the quadratic bound."""

    t: float
    spectral_norm_h: float
    diff_norm: float
    eps_prime_measured: float
    sq_bound_first_order: float
    commuting: bool
    commutator: float
    worst_state_sq: float


def evolution_diff(h: np.ndarray, h_tilde: np.ndarray, t: float) -> EvolutionErrorReport:
    """Compare exp(-iHt) with exp(-iHt~) in spectral norm.

    ``worst_state_sq`` maximizes the squared per-state error over the
    eigenvectors of H; when the pair commutes (and spectra are simple) that
    equals diff_norm squared since the eigenbasis is shared.
    """
    h = np.asarray(h, dtype=float)
    h_tilde = np.asarray(h_tilde, dtype=float)
    if h.shape != h_tilde.shape:
        raise ValueError(f"shape mismatch {h.shape} vs {h_tilde.shape}")
    norm_h = _symmetric_norm(h)
    norm_dh = _symmetric_norm(h_tilde - h)
    if norm_h > 0:
        eps_prime = norm_dh / norm_h
    else:
        eps_prime = 0.0 if norm_dh == 0.0 else math.inf

    lam, vec = np.linalg.eigh(h)
    u = (vec * np.exp(-1j * lam * t)) @ vec.T
    u_tilde = evolve(h_tilde, t)
    diff = u_tilde - u
    diff_norm = float(np.linalg.norm(diff, 2))

    comm = commutator_norm(h, h_tilde)
    norm_ht = _symmetric_norm(h_tilde)
    commuting = comm <= COMMUTING_TOLERANCE * max(norm_h * norm_ht, 1e-300)

    per_state_sq = np.sum(np.abs(diff @ vec) ** 2, axis=0)
    return EvolutionErrorReport(
        t=float(t),
        spectral_norm_h=norm_h,
        diff_norm=diff_norm,
        eps_prime_measured=eps_prime,
        sq_bound_first_order=(t * norm_dh) ** 2,
        commuting=commuting,
        commutator=comm,
        worst_state_sq=float(per_state_sq.max()) if per_state_sq.size else 0.0,
    )


def evolution_sweep(h: np.ndarray, h_tilde: np.ndarray,
                    t_grid: np.ndarray) -> list[EvolutionErrorReport]:
    """Error reports over a grid of evolution times."""
    if np.asarray(h).shape[0] > MAX_EVOLUTION_DIM:
        raise ValueError(f"evolution experiments capped at n={MAX_EVOLUTION_DIM}")
    return [evolution_diff(h, h_tilde, float(t)) for t in t_grid]


def eps_prime_budget(epsilon: float, t: float, norm_h: float) -> float:
    """Relative accuracy budget sqrt(eps) / (t ||H||) that keeps the
    first-order evolution error below eps (constant 1)."""
    if epsilon <= 0 or t <= 0 or norm_h <= 0:
        raise ValueError("epsilon, t, and norm_h must all be positive")
    return math.sqrt(epsilon) / (t * norm_h)


def classical_overhead(m: int, t: float, norm_h: float, n: int,
                       epsilon: float) -> float:
    """One-time sparsification cost figure m t ||H|| ln(n) / eps (constant 1)."""
    if m <= 0 or t <= 0 or norm_h <= 0 or n <= 1 or epsilon <= 0:
        raise ValueError("all arguments must be positive (n > 1)")
    return m * t * norm_h * math.log(n) / epsilon


def small_time_cubic_fit(h: np.ndarray, h_tilde: np.ndarray,
                         s_grid: np.ndarray) -> dict:
    """Measure non-commuting small-time behavior at t = eps'^(2/3) s.

    Fits diff_norm^2 - quadratic bound against t^3 and reports the
    coefficient.  Purely descriptive: nothing is certified in the
    non-commuting regime.
    """
    norm_h = _symmetric_norm(h)
    norm_dh = _symmetric_norm(h_tilde - h)
    if norm_h == 0 or norm_dh == 0:
        return {"eps_prime": 0.0, "cubic_coefficient": 0.0, "points": []}
    eps_prime = norm_dh / norm_h
    t_scale = eps_prime ** (2.0 / 3.0)
    points = []
    excess, cubes = [], []
    for s in s_grid:
        t = t_scale * float(s)
        rep = evolution_diff(h, h_tilde, t)
        points.append({"t": t, "diff_norm_sq": rep.diff_norm**2,
                       "sq_bound": rep.sq_bound_first_order})
        excess.append(rep.diff_norm**2 - rep.sq_bound_first_order)
        cubes.append(t**3)
    cubes_arr = np.asarray(cubes)
    denom = float(cubes_arr @ cubes_arr)
    coeff = float(cubes_arr @ np.asarray(excess) / denom) if denom > 0 else 0.0
    return {"eps_prime": eps_prime, "cubic_coefficient": coeff, "points": points}
