"""Simulators for the two quantum row-sparsity testers with query accounting."""

from .amplitude import (
    AEEstimate,
    ScanResult,
    ae_estimate_from_outcome,
    ae_ledger_cost,
    ae_outcome_distribution,
    estimate_row_sparsity_ae,
    full_sparsity_scan,
    row_amplitude,
    scan_counting_qubits,
    scan_ledger_formula,
)
from .fixedpoint import FixedPointCodec
from .maxfind import (
    MaxFindResult,
    RowSumState,
    accumulate_row_sums,
    find_max_row_sum,
    sum_register_bits,
)
from .oracle import (
    DEFAULT_CAP_QUBITS,
    DEFAULT_FRACTION_BITS,
    DataRegisterOverflow,
    OracleMatrix,
    QueryLedger,
    RegisterCapError,
)
from .rowstate import NormDriftError, RowStateSimulator

__all__ = [
    "AEEstimate",
    "DataRegisterOverflow",
    "DEFAULT_CAP_QUBITS",
    "DEFAULT_FRACTION_BITS",
    "FixedPointCodec",
    "MaxFindResult",
    "NormDriftError",
    "OracleMatrix",
    "QueryLedger",
    "RegisterCapError",
    "RowStateSimulator",
    "RowSumState",
    "ScanResult",
    "accumulate_row_sums",
    "ae_estimate_from_outcome",
    "ae_ledger_cost",
    "ae_outcome_distribution",
    "estimate_row_sparsity_ae",
    "find_max_row_sum",
    "full_sparsity_scan",
    "row_amplitude",
    "scan_counting_qubits",
    "scan_ledger_formula",
    "sum_register_bits",
]
