"""Entry oracle for the row-sparsity testers and the query ledger.

The oracle is the XOR-into-register map |i>|j>|z> -> |i>|j>|z ^ code(A_ij)>
over fixed-point codes, hence self-inverse.  Ledgers count every oracle,
comparator, adder, and state-preparation invocation; counters only ever
increase and are merged by summation, which is what lets closed-form cost
accounting stand in for simulation beyond the register cap.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fixedpoint import FixedPointCodec

DEFAULT_FRACTION_BITS = 16
DEFAULT_CAP_QUBITS = 24


class RegisterCapError(RuntimeError):
    """Simulated register budget exceeds the configured qubit cap."""


class DataRegisterOverflow(RuntimeError):
    """An adder result exceeds the sum register width (detected, not wrapped)."""


@dataclass
class QueryLedger:
    """Monotone per-oracle invocation counts; merge with ``+``."""

    oracle_calls: int = 0
    comparator_calls: int = 0
    adder_calls: int = 0
    state_preparations: int = 0

    def __add__(self, other: "QueryLedger") -> "QueryLedger":
        return QueryLedger(
            self.oracle_calls + other.oracle_calls,
            self.comparator_calls + other.comparator_calls,
            self.adder_calls + other.adder_calls,
            self.state_preparations + other.state_preparations,
        )

    @property
    def total(self) -> int:
        return (self.oracle_calls + self.comparator_calls
                + self.adder_calls + self.state_preparations)

    def to_dict(self) -> dict:
        return {
            "oracle_calls": self.oracle_calls,
            "comparator_calls": self.comparator_calls,
            "adder_calls": self.adder_calls,
            "state_preparations": self.state_preparations,
        }


class OracleMatrix:
    """Real n x n matrix behind a fixed-point entry oracle (n a power of two).

    Entries are quantized at construction so the stored real values and their
    codes round-trip bit-exactly.  Lambda defaults to max|A_ij| (or 1 for the
    zero matrix) and must dominate every entry magnitude.
    """

    def __init__(self, entries, fraction_bits: int = DEFAULT_FRACTION_BITS,
                 lamb: float | None = None):
        a = np.asarray(entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"entries must be square, got shape {a.shape}")
        n = a.shape[0]
        if n < 2 or n & (n - 1):
            raise ValueError(f"matrix size must be a power of two >= 2, got {n}")
        if not np.all(np.isfinite(a)):
            raise ValueError("entries must be finite")
        max_abs = float(np.abs(a).max())
        if lamb is None:
            lamb = max_abs if max_abs > 0 else 1.0
        if lamb < max_abs:
            raise ValueError(f"Lambda={lamb} below max|A_ij|={max_abs}")
        self.codec = FixedPointCodec(fraction_bits, lamb)
        self.codes = np.asarray(self.codec.encode(a), dtype=np.int64)
        self.values = np.asarray(self.codec.decode(self.codes), dtype=float)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def column_qubits(self) -> int:
        return int(self.n).bit_length() - 1

    def delta_code(self, delta: float) -> int:
        """Magnitude code the comparator uses for the support threshold.

        Delta is compared post-normalization, on the same grid as the
        entries; values above Lambda saturate to the top code.
        """
        if delta < 0:
            raise ValueError(f"delta must be >= 0, got {delta}")
        clipped = min(delta, self.codec.lamb)
        return int(self.codec.magnitude_code(self.codec.encode(clipped)))

    def row_support(self, row: int, delta: float) -> int:
        """Classical support count s(i) under the comparator's semantics."""
        mags = self.codec.magnitude_code(self.codes[row])
        return int(np.count_nonzero(mags >= self.delta_code(delta)))

    def row_sums_units(self) -> np.ndarray:
        """Exact signed row sums in grid units (the max-finding target)."""
        return self.codec.signed_units(self.codes).sum(axis=1)
