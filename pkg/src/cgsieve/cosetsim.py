"""Symbolic simulation kernel for coset sampling and phase-doubling rounds.

Every state the pipeline touches is either a uniform two-term superposition
(|b> + i^theta |b + t>)/sqrt(2) or a lone basis vector, so states are stored
as (anchor, shift, phase exponent) triples instead of dense vectors.  That
makes a round polynomial in n; the dense simulator in `dense.py` certifies
the kernel exactly at n <= 2.

Measurement simulation relies on two facts checked against the dense
oracle: all branch amplitudes have equal magnitude, and distinct branch
patterns always produce distinct register contents.  Together they mean
outcome statistics are reproduced exactly by drawing the branch bits
uniformly up front and evaluating the visible registers classically.

Sealed fields (`_sealed_*`) are simulation bookkeeping standing in for
unmeasured quantum data or the planted secret.  Algorithm code must not
read them; tests audit through `cgsieve.audit`.

A doubling round consumes size + 2 samples: a bitwise cascade of two-bit
transforms |x,y> -> |x^y, x>, a measured ancilla holding the signed mod-4
total of the samples' coefficient vectors, a flip vector drawn from the
nullspace of the coefficient parity matrix, and a final recombination.
Outputs of a first round carry coefficients in {0,2}; feeding the halved
coefficients through the identical machinery once more empties the phase.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random
from typing import Callable, Optional, Sequence

from .gf2 import BitMatrix, BitVector, sample_nonzero_null_vector
from .groups import D4nElement, Z2Vector, Z4Vector
from .oracle import HiddenOracle


@dataclass(frozen=True)
class TwoTermState:
    """(|anchor> + i^phase |anchor ^ shift>)/sqrt(2); a lone |anchor> when shift = 0.

    `anchor` is a plain bitmask over the state's components.  `shift` and
    `phase` describe unmeasured structure and are sealed.
    """

    n: int
    anchor: int
    _sealed_shift: int
    _sealed_phase: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("state needs at least one component")
        full = (1 << self.n) - 1
        if self.anchor & ~full or self._sealed_shift & ~full:
            raise ValueError("bitmask out of range")
        if self._sealed_shift == 0 and self._sealed_phase != 0:
            raise ValueError("degenerate state must carry phase exponent 0")
        if self._sealed_phase not in (0, 1, 2, 3):
            raise ValueError(f"phase exponent must be mod 4, got {self._sealed_phase}")

    @property
    def is_degenerate(self) -> bool:
        return self._sealed_shift == 0


@dataclass(frozen=True)
class CosetSample:
    """A two-term state plus the visible mod-4 coefficient vector tied to its phase."""

    state: TwoTermState
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.state.n:
            raise ValueError(
                f"coefficient length {len(self.coeffs)} != state size {self.state.n}"
            )

    @property
    def n(self) -> int:
        return self.state.n


class CosetSampler:
    """Standard-method sampler specialized to one oracle and one support.

    Specialization hoists the per-sample physics out of the sampling loop:
    which components carry a nonzero rotation exponent, whether the hidden
    involution fits inside the support, and where an attached ancilla
    needs a constancy check.  One instance serves a whole stage.

    With a restricted support the superposition runs over the listed
    components only (the rest held at the identity) and emitted states
    have that size.  Every draw counts one oracle use.
    """

    def __init__(self, oracle: HiddenOracle, support: Optional[Sequence[int]] = None):
        n = oracle.n
        idx = tuple(range(n)) if support is None else tuple(support)
        if not idx or len(set(idx)) != len(idx) or not all(0 <= i < n for i in idx):
            raise ValueError(f"invalid support {list(idx)} for n={n}")
        self.oracle = oracle
        self.support = idx
        self.size = len(idx)

        t_arr, l_arr = oracle._sealed_label_arrays()
        # Hidden subgroups whose reflection pattern leaves the support can
        # never pair up two members of the restricted superposition.
        self._contained = all(t_arr[i] == 0 for i in range(n) if i not in idx)
        self._shift = 0
        for pos, i in enumerate(idx):
            self._shift |= t_arr[i] << pos
        # Phase contributions exist only where l_i != 0 (there t_i = 1, so
        # the sign is (-1)^(u_i + 1)).
        self._phase_terms = tuple(
            (pos, l_arr[i]) for pos, i in enumerate(idx) if l_arr[i] != 0
        )

        self._ancilla_check = None
        anc = oracle._sealed_ancilla()
        if anc is not None and anc.component in idx:
            comp = anc.component
            self._ancilla_check = (
                idx.index(comp),
                anc.table,
                t_arr[comp],
                l_arr[comp],
            )

    def _state_for(self, u_bits: int, mu: tuple[int, ...], proper: bool) -> TwoTermState:
        if not proper:
            return TwoTermState(self.size, u_bits, 0, 0)
        theta = 0
        for pos, l in self._phase_terms:
            if (u_bits >> pos) & 1:
                theta += mu[pos] * l
            else:
                theta -= mu[pos] * l
        return TwoTermState(self.size, u_bits, self._shift, theta % 4)

    def _ancilla_constant(self, u: int, k: int) -> bool:
        _, table, t_i, l_i = self._ancilla_check
        pk = (l_i - k if t_i else l_i + k) % 4
        return table[(u ^ t_i) * 4 + pk] == table[u * 4 + k]

    def __call__(self, rng: Random) -> CosetSample:
        self.oracle._record_sample()
        u_bits = rng.getrandbits(self.size)
        proper = self._contained
        if proper and self._ancilla_check is not None:
            pos = self._ancilla_check[0]
            proper = self._ancilla_constant((u_bits >> pos) & 1, rng.getrandbits(2))
        mubits = rng.getrandbits(2 * self.size)
        mu = tuple((mubits >> (2 * pos)) & 3 for pos in range(self.size))
        return CosetSample(self._state_for(u_bits, mu, proper), mu)

    def outcome_state(self, g: D4nElement, mu: Sequence[int]) -> TwoTermState:
        """Deterministic core: the state left behind when the drawn coset
        contains g and the Fourier measurement yields mu."""
        if g.n != self.oracle.n:
            raise ValueError(f"element length {g.n} != oracle size {self.oracle.n}")
        if len(mu) != self.size:
            raise ValueError(f"mu length {len(mu)} != support size {self.size}")
        u_bits = 0
        for pos, i in enumerate(self.support):
            u_bits |= g.t[i] << pos
        proper = self._contained
        if proper and self._ancilla_check is not None:
            comp = self.support[self._ancilla_check[0]]
            proper = self._ancilla_constant(g.t[comp], g.k[comp])
        return self._state_for(u_bits, tuple(mu), proper)


def sample_coset_state(
    oracle: HiddenOracle,
    rng: Random,
    support: Optional[Sequence[int]] = None,
) -> CosetSample:
    """One standard-method round: draw a coset uniformly, Fourier-measure the
    rotation registers, and return the visible outcome with the residual state.

    Convenience wrapper over `CosetSampler`; loops should hold a sampler.
    """
    return CosetSampler(oracle, support)(rng)


def symbolic_outcome_state(
    oracle: HiddenOracle,
    g: D4nElement,
    mu: Sequence[int],
    support: Optional[Sequence[int]] = None,
) -> TwoTermState:
    """State produced for a known coset member and Fourier outcome."""
    return CosetSampler(oracle, support).outcome_state(g, mu)


@dataclass(frozen=True)
class CascadeRecord:
    """Result of cascading m samples: visible coefficient vectors and measured
    ancilla total, plus sealed per-register branch data for the collapse step."""

    n: int
    coeffs: tuple[tuple[int, ...], ...]
    mu_tot: tuple[int, ...]
    _sealed_branch_bits: tuple[int, ...]
    _sealed_registers: tuple[int, ...]  # register 1 XORed into each of 2..m
    _sealed_phases: tuple[int, ...]
    _sealed_proper: tuple[bool, ...]
    _sealed_shift: int

    @property
    def m(self) -> int:
        return len(self.coeffs)


def cg_cascade(
    samples: Sequence[CosetSample],
    rng: Random,
    branch_bits: Optional[Sequence[int]] = None,
) -> CascadeRecord:
    """Cascade the two-bit transform from sample 1 into samples 2..m and measure
    the ancilla holding the signed mod-4 coefficient total.

    Branch bits are drawn uniformly per two-term sample (forced to 0 for
    degenerate ones); `branch_bits` injects them for exhaustive tests.
    Register j >= 2 afterwards holds xor of the first and j-th branch values.
    """
    m = len(samples)
    if m < 2:
        raise ValueError("cascade needs at least two samples")
    n = samples[0].n
    if any(s.n != n for s in samples):
        raise ValueError("samples have mismatched sizes")
    shifts = {s.state._sealed_shift for s in samples if not s.state.is_degenerate}
    if len(shifts) > 1:
        raise ValueError("two-term samples disagree on the hidden shift")
    shift = shifts.pop() if shifts else 0

    if branch_bits is None:
        drawn = rng.getrandbits(m)
        gammas = tuple(
            0 if samples[j].state.is_degenerate else (drawn >> j) & 1 for j in range(m)
        )
    else:
        if len(branch_bits) != m:
            raise ValueError(f"need {m} branch bits, got {len(branch_bits)}")
        for j, (bit, s) in enumerate(zip(branch_bits, samples)):
            if bit and s.state.is_degenerate:
                raise ValueError(f"sample {j} is degenerate; branch bit must be 0")
        gammas = tuple(int(b) for b in branch_bits)

    values = [
        s.state.anchor ^ (s.state._sealed_shift if gamma else 0)
        for s, gamma in zip(samples, gammas)
    ]
    registers = tuple(values[0] ^ values[j] for j in range(1, m))

    coeffs = tuple(s.coeffs for s in samples)
    totals = list(coeffs[0])
    for j in range(1, m):
        reg = registers[j - 1]
        cj = coeffs[j]
        for i in range(n):
            if (reg >> i) & 1:
                totals[i] -= cj[i]
            else:
                totals[i] += cj[i]
    mu_tot = [x % 4 for x in totals]

    return CascadeRecord(
        n=n,
        coeffs=coeffs,
        mu_tot=tuple(mu_tot),
        _sealed_branch_bits=gammas,
        _sealed_registers=registers,
        _sealed_phases=tuple(s.state._sealed_phase for s in samples),
        _sealed_proper=tuple(not s.state.is_degenerate for s in samples),
        _sealed_shift=shift,
    )


def coefficient_parity_matrix(record: CascadeRecord) -> BitMatrix:
    """Row i holds the parities of coefficient i across samples 2..m."""
    rows = []
    for i in range(record.n):
        bits = 0
        for j in range(1, record.m):
            bits |= (record.coeffs[j][i] & 1) << (j - 1)
        rows.append(bits)
    return BitMatrix(tuple(rows), record.m - 1)


def analyze_flips(
    record: CascadeRecord, rng: Random
) -> tuple[BitMatrix, Optional[BitVector]]:
    """Parity constraint system plus a uniformly sampled nonzero flip vector.

    Returns (matrix, None) in the degenerate all-even case (no constraint
    carries information) or when the nullspace is trivial; callers resample.
    """
    w = coefficient_parity_matrix(record)
    if w.is_zero():
        return w, None
    return w, sample_nonzero_null_vector(w, rng)


@dataclass(frozen=True)
class RoundOutput:
    """Collapsed round result: the surviving state with its visible data.

    `r` is the signed coefficient total over the flipped registers, every
    component even by construction; `sample` packages the state with the
    halved coefficients so it can feed the next round directly.
    """

    sample: CosetSample
    r: tuple[int, ...]

    @property
    def state(self) -> TwoTermState:
        return self.sample.state


def collapse_and_recombine(record: CascadeRecord, s: BitVector) -> RoundOutput:
    """Measure the registers outside the flip set, recombine the rest into one
    register, and return it with the classically computed phase coefficients.

    The surviving register keeps a two-branch superposition exactly when
    every flipped register came from a two-term sample; any degenerate
    member pins the branch and the output collapses to one basis vector.
    """
    if s.n != record.m - 1:
        raise ValueError(f"flip vector length {s.n} != registers {record.m - 1}")
    if s.is_zero():
        raise ValueError("flip vector must be nonzero")
    flipped = [j + 1 for j in range(record.m - 1) if s[j]]
    kept = [j + 1 for j in range(record.m - 1) if not s[j]]

    n = record.n
    totals = [record.mu_tot[i] - record.coeffs[0][i] for i in range(n)]
    for j in kept:
        reg = record._sealed_registers[j - 1]
        cj = record.coeffs[j]
        for i in range(n):
            if (reg >> i) & 1:
                totals[i] += cj[i]
            else:
                totals[i] -= cj[i]
    r = [x % 4 for x in totals]
    if any(x & 1 for x in r):
        raise AssertionError("flip vector violates the parity system")

    first = flipped[0]
    anchor = record._sealed_registers[first - 1]
    if all(record._sealed_proper[j] for j in flipped):
        theta = 0
        for j in flipped:
            sign = 1 if record._sealed_branch_bits[j] == 0 else -1
            theta += sign * record._sealed_phases[j]
        state = TwoTermState(record.n, anchor, record._sealed_shift, theta % 4)
    else:
        state = TwoTermState(record.n, anchor, 0, 0)

    halved = tuple(x >> 1 for x in r)
    return RoundOutput(sample=CosetSample(state, halved), r=tuple(r))


class RoundFailure(RuntimeError):
    """Raised when a doubling round exhausts its retry budget."""


def phase_double_round(
    source: Callable[[], CosetSample],
    n: int,
    rng: Random,
    max_retries: int = 10,
) -> tuple[RoundOutput, int]:
    """Consume n + 2 samples from `source` and produce one collapsed output.

    Degenerate analyses (all-even parity matrix) are retried with fresh
    samples up to `max_retries` times; the retry count is returned.
    """
    for attempt in range(max_retries + 1):
        samples = [source() for _ in range(n + 2)]
        record = cg_cascade(samples, rng)
        _, s = analyze_flips(record, rng)
        if s is None:
            continue
        return collapse_and_recombine(record, s), attempt
    raise RoundFailure(f"no usable flip vector after {max_retries + 1} attempts")


def psi_pm_measure(state: TwoTermState, rng: Optional[Random] = None) -> tuple[int, int]:
    """Measure in the paired basis (|x> +- |x ^ shift>)/sqrt(2).

    Requires an even phase exponent; the sign outcome is then determined.
    A degenerate input is an equal mixture, so it needs `rng` to draw the
    sign.  Returns (anchor bitmask, sign in {+1, -1}).
    """
    if state._sealed_phase & 1:
        raise ValueError("state has an odd phase exponent; paired measurement undefined")
    if state.is_degenerate:
        if rng is None:
            raise ValueError("degenerate state requires rng for the sign outcome")
        return state.anchor, 1 - 2 * rng.getrandbits(1)
    return state.anchor, 1 - (state._sealed_phase & 2)


def hadamard_measure(state: TwoTermState, rng: Random) -> BitVector:
    """Measure after a bitwise Hadamard.

    Even phase exponent: uniform y with y . shift = exponent/2.  Odd
    exponent or degenerate input: uniform over all bitmasks.
    """
    n = state.n
    full = (1 << n) - 1
    if state.is_degenerate or (state._sealed_phase & 1):
        return BitVector(n, rng.getrandbits(n))
    target = (state._sealed_phase >> 1) & 1
    shift = state._sealed_shift
    pivot = shift & (-shift)
    rest = rng.getrandbits(n) & full & ~pivot
    parity = (rest & shift).bit_count() & 1
    return BitVector(n, rest | (pivot if parity != target else 0))
