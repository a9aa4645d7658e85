"""Classical simulation, verification, and benchmarking of hidden-involution
recovery over n-fold products of the order-eight square-symmetry group,
plus the classic XOR-mask algorithm over n-bit parity groups.

The package keeps a strict information boundary: algorithm code consumes
only oracle answers and visible measurement outcomes, while the symbolic
kernel tracks sealed quantum data that tests audit through
`cgsieve.audit`.  A dense state-vector simulator certifies the kernel
exactly at small sizes.
"""

from .algorithms import (
    AlgoParams,
    RecoveryResult,
    SimonResult,
    simon_z2n,
    solve_hidden_involution,
    stage_a_determine_t,
    stage_b_parity,
    stage_c_full_l,
)
from .cosetsim import (
    CosetSample,
    RoundFailure,
    TwoTermState,
    analyze_flips,
    cg_cascade,
    collapse_and_recombine,
    phase_double_round,
    sample_coset_state,
)
from .gf2 import BitMatrix, BitVector, null_space_basis, row_reduce, solve
from .groups import (
    D4Element,
    D4nElement,
    InvolutionLabel,
    Z2Vector,
    Z4Vector,
    conjugacy_class,
    d4_inverse,
    d4_mul,
    d4n_mul,
    involution_element,
)
from .oracle import (
    AncillaFunction,
    HiddenOracle,
    XorMaskOracle,
    ancilla_for_even_class,
    ancilla_for_odd_class,
    extended_oracle,
    plant,
)
from .reps import cg_series, cg_series_z2n, double_cnot_matrix, irrep_eval, redrep_eval

__version__ = "0.1.0"

__all__ = [
    "AlgoParams",
    "AncillaFunction",
    "BitMatrix",
    "BitVector",
    "CosetSample",
    "D4Element",
    "D4nElement",
    "HiddenOracle",
    "InvolutionLabel",
    "RecoveryResult",
    "RoundFailure",
    "SimonResult",
    "TwoTermState",
    "XorMaskOracle",
    "Z2Vector",
    "Z4Vector",
    "analyze_flips",
    "ancilla_for_even_class",
    "ancilla_for_odd_class",
    "cg_cascade",
    "cg_series",
    "cg_series_z2n",
    "collapse_and_recombine",
    "conjugacy_class",
    "d4_inverse",
    "d4_mul",
    "d4n_mul",
    "double_cnot_matrix",
    "extended_oracle",
    "involution_element",
    "irrep_eval",
    "null_space_basis",
    "phase_double_round",
    "plant",
    "redrep_eval",
    "row_reduce",
    "sample_coset_state",
    "simon_z2n",
    "solve",
    "solve_hidden_involution",
    "stage_a_determine_t",
    "stage_b_parity",
    "stage_c_full_l",
]
