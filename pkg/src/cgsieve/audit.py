"""Test-only access to sealed simulation data.

Invariant suites need the hidden shift, phase exponents, branch bits, and
planted labels that the kernel keeps sealed.  Importing this module from
algorithm or CLI code defeats the information boundary; a test enforces
that they never do.
"""

from __future__ import annotations

import numpy as np

from .cosetsim import CascadeRecord, TwoTermState
from .gf2 import BitVector
from .groups import InvolutionLabel
from .oracle import HiddenOracle, XorMaskOracle


def sealed_phase(state: TwoTermState) -> int:
    return state._sealed_phase


def sealed_shift(state: TwoTermState) -> BitVector:
    return BitVector(state.n, state._sealed_shift)


def sealed_branch_bits(record: CascadeRecord) -> tuple[int, ...]:
    return record._sealed_branch_bits


def sealed_registers(record: CascadeRecord) -> tuple[int, ...]:
    return record._sealed_registers


def planted_label(oracle: HiddenOracle) -> InvolutionLabel:
    return oracle._sealed_label


def planted_mask(oracle: XorMaskOracle) -> BitVector:
    return oracle._sealed_mask


def state_vector(state: TwoTermState) -> np.ndarray:
    """Dense amplitude vector over the 2^n reflection bitmasks."""
    from .dense import two_term_vector

    return two_term_vector(state)
