"""Statevector simulation of the row-support marking circuit.

The explicit state lives on (column register) x (data register) x (flag
qubit); the threshold reference register stays in the constant |delta> basis
state through every gate, so it is factored out rather than materialized
(it still counts nothing toward the register budget, which the cap formula
defines as columns + data + flag + counting qubits).

State preparation A is: Hadamards on the columns, the entry oracle into the
data register, then the comparator XOR-ing the flag with [|A_ij| >= delta].
The Grover iterate is built gate by gate as A S0 A^dagger S_flag so its cost
lands on the ledger exactly; every gate application is followed by a norm
check at 1e-12.
"""

from __future__ import annotations

import numpy as np

from .oracle import OracleMatrix, QueryLedger

NORM_TOLERANCE = 1e-12


class NormDriftError(RuntimeError):
    """Statevector norm left 1 +- 1e-12 after a gate application."""


def _walsh_hadamard(state: np.ndarray) -> np.ndarray:
    """Normalized Walsh-Hadamard transform along axis 0 (length power of 2)."""
    n = state.shape[0]
    out = state.copy()
    h = 1
    while h < n:
        for start in range(0, n, 2 * h):
            a = out[start:start + h].copy()
            b = out[start + h:start + 2 * h]
            out[start:start + h] = a + b
            out[start + h:start + 2 * h] = a - b
        h *= 2
    return out / np.sqrt(n)


class RowStateSimulator:
    """Exact statevector over (column, data, flag) for one matrix row."""

    def __init__(self, oracle: OracleMatrix, row: int, delta: float,
                 ledger: QueryLedger):
        if not (0 <= row < oracle.n):
            raise IndexError(f"row {row} out of range for n={oracle.n}")
        self.oracle = oracle
        self.row = row
        self.ledger = ledger
        self.delta_code = oracle.delta_code(delta)
        self.n = oracle.n
        self.data_dim = 1 << oracle.codec.width
        self.state = np.zeros((self.n, self.data_dim, 2), dtype=np.complex128)
        self.state[0, 0, 0] = 1.0
        data_codes = np.arange(self.data_dim, dtype=np.int64)
        self._data_mags = data_codes & oracle.codec.magnitude_mask
        self._xor_index = data_codes[:, None] ^ oracle.codes[row][None, :]

    @property
    def qubits(self) -> int:
        """Budgeted width excluding any counting register."""
        return self.oracle.column_qubits + self.oracle.codec.width + 1

    def _check_norm(self):
        norm = np.linalg.norm(self.state)
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise NormDriftError(f"statevector norm drifted to {norm!r}")

    def hadamard_columns(self):
        self.state = _walsh_hadamard(self.state)
        self._check_norm()

    def apply_entry_oracle(self):
        """|j>|z>|f> -> |j>|z ^ code(A_row,j)>|f>; self-inverse."""
        # gather along the data axis with the per-column XOR permutation
        for j in range(self.n):
            self.state[j] = self.state[j, self._xor_index[:, j], :]
        self.ledger.oracle_calls += 1
        self._check_norm()

    def apply_comparator(self):
        """XOR the flag with [magnitude(z) >= delta]; self-inverse."""
        mask = self._data_mags >= self.delta_code
        self.state[:, mask, :] = self.state[:, mask, ::-1]
        self.ledger.comparator_calls += 1
        self._check_norm()

    def phase_flip_flag(self):
        self.state[:, :, 1] *= -1.0
        self._check_norm()

    def reflect_about_zero(self):
        """2|0><0| - 1 on the whole (column, data, flag) space."""
        self.state *= -1.0
        self.state[0, 0, 0] *= -1.0
        self._check_norm()

    def prepare(self, count_preparation: bool = True):
        """A = comparator . oracle . H_columns from |0,0,0>."""
        self.hadamard_columns()
        self.apply_entry_oracle()
        self.apply_comparator()
        if count_preparation:
            self.ledger.state_preparations += 1

    def unprepare(self):
        """A^dagger (every component is self-inverse, order reversed)."""
        self.apply_comparator()
        self.apply_entry_oracle()
        self.hadamard_columns()

    def grover_iteration(self):
        """Q = A S0 A^dagger S_flag; costs 2 oracle + 2 comparator calls."""
        self.phase_flip_flag()
        self.unprepare()
        self.reflect_about_zero()
        self.prepare(count_preparation=False)

    def flag_amplitude(self) -> float:
        """Norm of the flag-1 projection of the current state."""
        return float(np.linalg.norm(self.state[:, :, 1]))
