"""End-to-end recovery algorithms built on the simulation kernel.

`simon_z2n` recovers a hidden XOR mask the classic way.  The hidden
involution over the n-fold square-symmetry group is recovered in three
stages: the reflection pattern t from twice-doubled phases plus mask
recovery, the rotation parities from paired-basis sign measurements, and
the exact rotation exponents from ancilla-extended oracles.  Only visible
oracle outputs are consumed here; sealed simulator fields stay sealed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from random import Random
from typing import Callable, Optional

from .cosetsim import (
    CosetSample,
    RoundFailure,
    RoundOutput,
    hadamard_measure,
    phase_double_round,
    psi_pm_measure,
    sample_coset_state,
)
from .gf2 import BitMatrix, BitVector, null_space_basis, rank, solve
from .groups import (
    D4nElement,
    InvolutionLabel,
    Z2Vector,
    Z4Vector,
    d4n_mul,
    involution_element,
    random_d4n_element,
)
from .oracle import (
    HiddenOracle,
    XorMaskOracle,
    ancilla_for_even_class,
    ancilla_for_odd_class,
    extended_oracle,
)


@dataclass(frozen=True)
class AlgoParams:
    """Budgets and sample counts for one recovery attempt."""

    round_retries: int = 10     # degenerate-cascade retries per doubling round
    mask_extra_budget: int = 10  # extra mask-recovery samples beyond the size
    parity_extra_budget: int = 10
    stage_c_samples: int = 20   # orthogonality tests per component
    restarts: int = 3           # full-pipeline restarts after failed verification
    verify_checks: int = 100


@dataclass
class RunStats:
    retries: int = 0
    restarts: int = 0
    stage_queries: dict = field(default_factory=dict)

    def add_stage(self, name: str, queries: int) -> None:
        self.stage_queries[name] = self.stage_queries.get(name, 0) + queries


class StageFailure(RuntimeError):
    """A stage exhausted its budget; the pipeline may restart."""


@dataclass(frozen=True)
class SimonResult:
    mask: BitVector
    samples_used: int


def simon_z2n(oracle: XorMaskOracle, rng: Random, extra_budget: int = 10) -> SimonResult:
    """Recover a hidden XOR mask from Fourier samples plus elimination.

    Each sample is orthogonal to the mask; once the collected rows reach
    rank n - 1 the mask is the unique nonzero nullspace vector.  The
    recovered mask is verified against the oracle before returning.
    """
    n = oracle.n
    rows: list[int] = []
    samples = 0
    budget = n + extra_budget

    def current_rank() -> int:
        if not rows:
            return 0
        return rank(BitMatrix(tuple(rows), n))

    while current_rank() < n - 1:
        if samples >= budget:
            raise StageFailure(f"mask rank stuck below {n - 1} after {samples} samples")
        rows.append(oracle.sample_fourier(rng).bits)
        samples += 1

    basis = null_space_basis(BitMatrix(tuple(rows), n)) if rows else [BitVector(n, 1)]
    candidates = [v for v in basis if not v.is_zero()]
    if len(candidates) != 1:
        raise StageFailure(f"nullspace dimension {len(candidates)} != 1")
    mask = candidates[0]
    if oracle.query(0) != oracle.query(mask.bits):
        raise StageFailure("recovered mask fails the oracle check")
    return SimonResult(mask=mask, samples_used=samples)


def _trivial_phase_state(
    oracle: HiddenOracle,
    rng: Random,
    params: AlgoParams,
    stats: RunStats,
    support: Optional[list[int]] = None,
) -> RoundOutput:
    """Two nested doubling rounds; the output state carries an empty phase."""
    size = oracle.n if support is None else len(support)

    def fresh() -> CosetSample:
        return sample_coset_state(oracle, rng, support=support)

    def doubled_once() -> CosetSample:
        out, retries = phase_double_round(fresh, size, rng, params.round_retries)
        stats.retries += retries
        return out.sample

    out, retries = phase_double_round(doubled_once, size, rng, params.round_retries)
    stats.retries += retries
    return out


def simon_finish(
    state_source: Callable[[], RoundOutput],
    n: int,
    rng: Random,
    extra_budget: int = 10,
) -> BitVector:
    """Recover the shift from Hadamard measurements of trivial-phase states."""
    rows: list[int] = []
    used = 0
    budget = n + extra_budget

    def current_rank() -> int:
        if not rows:
            return 0
        return rank(BitMatrix(tuple(rows), n))

    while current_rank() < n - 1:
        if used >= budget:
            raise StageFailure(f"shift rank stuck below {n - 1} after {used} states")
        y = hadamard_measure(state_source().state, rng)
        rows.append(y.bits)
        used += 1

    basis = null_space_basis(BitMatrix(tuple(rows), n)) if rows else [BitVector(n, 1)]
    candidates = [v for v in basis if not v.is_zero()]
    if len(candidates) != 1:
        raise StageFailure(f"shift nullspace dimension {len(candidates)} != 1")
    return candidates[0]


def stage_a_determine_t(
    oracle: HiddenOracle,
    rng: Random,
    params: AlgoParams = AlgoParams(),
    stats: Optional[RunStats] = None,
) -> Z2Vector:
    """Recover the reflection pattern of the hidden involution."""
    stats = stats if stats is not None else RunStats()

    def source() -> RoundOutput:
        return _trivial_phase_state(oracle, rng, params, stats)

    return simon_finish(source, oracle.n, rng, params.mask_extra_budget)


def stage_b_parity(
    oracle: HiddenOracle,
    t: Z2Vector,
    rng: Random,
    params: AlgoParams = AlgoParams(),
    stats: Optional[RunStats] = None,
) -> Z2Vector:
    """Recover the rotation-exponent parities on the support of t.

    Each support-restricted doubling round yields a visible coefficient
    vector p and a sign; the sign's bit c satisfies p . parities = c.
    Equations accumulate until the system has full rank, then it is solved.
    Returns a full-length vector, zero off the support.
    """
    stats = stats if stats is not None else RunStats()
    support = t.support()
    sigma = len(support)
    if sigma == 0:
        raise ValueError("t must be nonzero")

    rows: list[int] = []
    rhs_bits: list[int] = []
    budget = sigma + params.parity_extra_budget
    used = 0
    while True:
        if rows and rank(BitMatrix(tuple(rows), sigma)) == sigma:
            break
        if used >= budget:
            raise StageFailure(f"parity system rank deficient after {used} rounds")
        round_out, retries = phase_double_round(
            lambda: sample_coset_state(oracle, rng, support=support),
            sigma,
            rng,
            params.round_retries,
        )
        stats.retries += retries
        p_bits = 0
        for pos, p in enumerate(round_out.sample.coeffs):
            p_bits |= (p & 1) << pos
        _, sign = psi_pm_measure(round_out.state, rng)
        rows.append(p_bits)
        rhs_bits.append(0 if sign == 1 else 1)
        used += 1

    system = BitMatrix(tuple(rows), sigma)
    rhs = BitVector.from_bits(rhs_bits)
    solution = solve(system, rhs)
    if solution is None:
        raise StageFailure("parity equations are inconsistent")
    full = 0
    for pos, i in enumerate(support):
        full |= solution[pos] << i
    return Z2Vector(t.n, full)


def _component_ancilla_intact(
    oracle: HiddenOracle,
    support: list[int],
    rng: Random,
    params: AlgoParams,
    stats: RunStats,
) -> bool:
    """True when doubled samples from the oracle stay orthogonal to the
    all-ones restricted shift; any odd-weight measurement is a violation."""
    sigma = len(support)
    for _ in range(params.stage_c_samples):
        out = _trivial_phase_state(oracle, rng, params, stats, support=support)
        y = hadamard_measure(out.state, rng)
        if y.weight() & 1:
            return False
    return True


def stage_c_full_l(
    oracle: HiddenOracle,
    t: Z2Vector,
    parities: Z2Vector,
    rng: Random,
    params: AlgoParams = AlgoParams(),
    stats: Optional[RunStats] = None,
) -> Z4Vector:
    """Resolve each rotation exponent within its parity class.

    For each support component, attach the parity-matched ancilla and test
    whether the extended oracle still produces orthogonal samples: if so
    the exponent is the class representative (0 or 1), otherwise the other
    member (2 or 3).  Components outside the support cost nothing.
    """
    stats = stats if stats is not None else RunStats()
    support = t.support()
    digits = [0] * t.n
    for i in support:
        if parities[i] == 0:
            ext = extended_oracle(oracle, ancilla_for_even_class(i))
            base_value, other_value = 0, 2
        else:
            ext = extended_oracle(oracle, ancilla_for_odd_class(i))
            base_value, other_value = 1, 3
        intact = _component_ancilla_intact(ext, support, rng, params, stats)
        digits[i] = base_value if intact else other_value
    return Z4Vector.from_digits(digits)


@dataclass(frozen=True)
class RecoveryResult:
    label: Optional[InvolutionLabel]
    queries: int
    retries: int
    restarts: int
    success: bool
    breakdown: dict
    failure_reason: Optional[str] = None


def _verify_label(
    oracle: HiddenOracle, label: InvolutionLabel, rng: Random, checks: int
) -> bool:
    """Spot-check the hiding promise for the recovered subgroup."""
    h = involution_element(label)
    for _ in range(checks):
        g = random_d4n_element(oracle.n, rng)
        if oracle.query(g) != oracle.query(d4n_mul(g, h)):
            return False
    return True


def solve_hidden_involution(
    oracle: HiddenOracle,
    rng: Random,
    params: AlgoParams = AlgoParams(),
) -> RecoveryResult:
    """Run the three stages, verify the recovered label, restart on failure."""
    stats = RunStats()
    start = oracle.query_count
    failure = "unknown"
    for attempt in range(params.restarts + 1):
        if attempt:
            stats.restarts += 1
        try:
            before = oracle.query_count
            t = stage_a_determine_t(oracle, rng, params, stats)
            stats.add_stage("stage_a", oracle.query_count - before)

            before = oracle.query_count
            parities = stage_b_parity(oracle, t, rng, params, stats)
            stats.add_stage("stage_b", oracle.query_count - before)

            before = oracle.query_count
            l = stage_c_full_l(oracle, t, parities, rng, params, stats)
            stats.add_stage("stage_c", oracle.query_count - before)

            label = InvolutionLabel(t, l)
        except (StageFailure, RoundFailure) as exc:
            failure = str(exc)
            continue

        before = oracle.query_count
        verified = _verify_label(oracle, label, rng, params.verify_checks)
        stats.add_stage("verify", oracle.query_count - before)
        if verified:
            return RecoveryResult(
                label=label,
                queries=oracle.query_count - start,
                retries=stats.retries,
                restarts=stats.restarts,
                success=True,
                breakdown=dict(stats.stage_queries),
            )
        failure = "recovered label failed verification"

    return RecoveryResult(
        label=None,
        queries=oracle.query_count - start,
        retries=stats.retries,
        restarts=stats.restarts,
        success=False,
        breakdown=dict(stats.stage_queries),
        failure_reason=failure,
    )
