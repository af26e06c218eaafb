"""Spectral sparsification of weighted graphs for Hamiltonian simulation.

Pieces: exact effective-resistance sampling, spectral closeness certificates
for the Laplacian and adjacency matrices, row-sparsity bounds and occupancy
measurements, unitary-evolution error reports, and classically simulated
quantum row-sparsity testers with exact query ledgers.
"""

from .certify import (
    KernelMismatchError,
    SpectralCertificate,
    certify_adjacency,
    certify_laplacian,
    combine_epsilons,
    eps_tilde_tail_bound,
    merge_certificates,
)
from .evolution import (
    EvolutionErrorReport,
    classical_overhead,
    commutator_norm,
    eps_prime_budget,
    evolution_diff,
    evolution_sweep,
    evolve,
)
from .generators import gen_graph
from .graphs import (
    WeightedGraph,
    adjacency,
    connected_components,
    degrees,
    incidence,
    laplacian,
    read_edgelist,
    write_edgelist,
)
from .resistance import ResistanceTable, effective_resistances, foster_check
from .rowsparsity import (
    RowSparsityReport,
    empirical_occupancy,
    prop1_tail_bound,
    prop2_expectation_bound,
    row_sparsity_report,
    vertex_marginal_condition,
)
from .sparsify import (
    SparsifierOutput,
    SparsifyConfig,
    expected_samples_default,
    implied_sample_exponent,
    sample_sparsifier,
)

__version__ = "0.1.0"
