"""Dense state-vector ground truth for the standard-method sampler at n <= 2.

Works entirely through the oracle's public query interface: prepare the
uniform superposition, evaluate the hiding function, measure it, apply the
per-component conditional Fourier transform, and measure the rotation
registers.  Emits the exact joint outcome distribution with each exact
post-measurement state, for outcome-by-outcome comparison against the
symbolic kernel.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import product

import numpy as np

from .groups import D4nElement, all_d4n_elements
from .oracle import HiddenOracle, Tag

_DIM_PER_COMPONENT = 8  # basis (u, k) -> u * 4 + k


def _element_index(g: D4nElement) -> int:
    idx = 0
    for i in range(g.n):
        idx += (g.t[i] * 4 + g.k[i]) * _DIM_PER_COMPONENT**i
    return idx


def _basis_index(u_bits: int, mu: tuple[int, ...], n: int) -> int:
    idx = 0
    for i in range(n):
        idx += (((u_bits >> i) & 1) * 4 + mu[i]) * _DIM_PER_COMPONENT**i
    return idx


def conditional_fourier_component() -> np.ndarray:
    """8x8 block: forward mod-4 Fourier transform on the rotation register when
    the reflection bit is 0, inverse transform when it is 1."""
    f = np.array([[1j ** ((m * k) % 4) for k in range(4)] for m in range(4)]) / 2
    c = np.zeros((8, 8), dtype=complex)
    c[:4, :4] = f
    c[4:, 4:] = f.conj().T
    return c


def conditional_fourier_matrix(n: int) -> np.ndarray:
    return reduce(np.kron, [conditional_fourier_component()] * n)


@dataclass(frozen=True)
class DenseOutcome:
    """One enumerated measurement outcome of the standard method."""

    tag: Tag
    rep: D4nElement  # smallest member of the measured function class
    coset_size: int
    mu: tuple[int, ...]
    probability: float
    state: np.ndarray  # amplitudes over reflection bitmasks, length 2^n


def dense_standard_method(oracle: HiddenOracle) -> list[DenseOutcome]:
    """Exhaustive outcome table; rejects n > 2 (state dimension 8^n)."""
    n = oracle.n
    if n > 2:
        raise ValueError(f"dense simulation supports n <= 2, got n={n}")
    dim = _DIM_PER_COMPONENT**n

    classes: dict[Tag, list[D4nElement]] = {}
    for g in all_d4n_elements(n):
        classes.setdefault(oracle.query(g), []).append(g)

    transform = conditional_fourier_matrix(n)
    outcomes: list[DenseOutcome] = []
    for tag, members in sorted(classes.items()):
        psi = np.zeros(dim, dtype=complex)
        psi[[_element_index(g) for g in members]] = 1 / np.sqrt(len(members))
        phi = transform @ psi
        if abs(np.linalg.norm(phi) - 1.0) > 1e-10:
            raise ArithmeticError("state norm drifted beyond 1e-10")
        p_tag = len(members) / dim
        rep = min(members, key=D4nElement.sort_key)
        for mu in product(range(4), repeat=n):
            amps = np.array([phi[_basis_index(u, mu, n)] for u in range(1 << n)])
            weight = float(np.vdot(amps, amps).real)
            if weight < 1e-14:
                continue
            outcomes.append(
                DenseOutcome(
                    tag=tag,
                    rep=rep,
                    coset_size=len(members),
                    mu=mu,
                    probability=p_tag * weight,
                    state=amps / np.sqrt(weight),
                )
            )
    return outcomes


def two_term_vector(state) -> np.ndarray:
    """Dense amplitude vector of a symbolic two-term state."""
    v = np.zeros(1 << state.n, dtype=complex)
    if state.is_degenerate:
        v[state.anchor] = 1.0
        return v
    v[state.anchor] = 1 / np.sqrt(2)
    v[state.anchor ^ state._sealed_shift] += (1j**state._sealed_phase) / np.sqrt(2)
    return v


def cross_check_oracle(oracle: HiddenOracle) -> dict:
    """Compare the symbolic kernel with the dense pipeline outcome by outcome.

    For every (function class, Fourier outcome) pair, checks that the dense
    probability is exactly uniform over outcomes given the class and that
    the dense post-measurement state matches the symbolic two-term state up
    to global phase.  Returns the worst discrepancies found.
    """
    from .cosetsim import symbolic_outcome_state

    n = oracle.n
    outcomes = dense_standard_method(oracle)
    max_prob = 0.0
    max_dist = 0.0
    total = 0.0
    for o in outcomes:
        expected = (o.coset_size / _DIM_PER_COMPONENT**n) / 4**n
        max_prob = max(max_prob, abs(o.probability - expected))
        sym = symbolic_outcome_state(oracle, o.rep, o.mu)
        max_dist = max(max_dist, state_distance(o.state, two_term_vector(sym)))
        total += o.probability
    max_prob = max(max_prob, abs(total - 1.0))
    return {
        "outcomes": len(outcomes),
        "max_probability_discrepancy": max_prob,
        "max_amplitude_distance": max_dist,
    }


def align_phase(v: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Rotate a state's global phase so its first sizable amplitude is positive real."""
    for amp in v:
        if abs(amp) > tol:
            return v * (amp.conjugate() / abs(amp))
    return v


def state_distance(a: np.ndarray, b: np.ndarray) -> float:
    """L2 distance after global-phase alignment."""
    return float(np.linalg.norm(align_phase(a) - align_phase(b)))
