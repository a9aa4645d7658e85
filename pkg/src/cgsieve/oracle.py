"""Hiding functions for planted involutions, with query counting.

The oracle layer enforces the information boundary: algorithm code sees
only `n`, `query`, and the query counter.  Attributes with a `_sealed`
prefix exist for the simulation kernel and the test-only audit module;
algorithm modules never touch them (a test scans for violations).
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random
from typing import Optional

from .gf2 import BitVector
from .groups import (
    D4Element,
    D4nElement,
    InvolutionLabel,
    d4n_mul,
    involution_element,
)

Tag = tuple  # opaque query answer; equal tags mark equal-coset inputs


class _QueryCounter:
    """Shared mutable counter; one increment per oracle use."""

    __slots__ = ("count",)

    def __init__(self) -> None:
        self.count = 0

    def increment(self) -> None:
        self.count += 1


class HiddenOracle:
    """Function constant and distinct on left cosets of a planted order-two subgroup.

    Answers are canonical coset representatives (the minimum element of
    the coset under a fixed total order), so the promise holds exactly and
    runs are reproducible.  Not thread-safe: confine each instance to one
    thread, or guard the counter externally.
    """

    def __init__(self, label: InvolutionLabel, counter: Optional[_QueryCounter] = None):
        self.n = label.n
        self._sealed_label = label
        self._sealed_involution = involution_element(label)
        self._counter = counter if counter is not None else _QueryCounter()

    @property
    def query_count(self) -> int:
        return self._counter.count

    def query(self, g: D4nElement) -> Tag:
        if g.n != self.n:
            raise ValueError(f"element length {g.n} != oracle size {self.n}")
        self._counter.increment()
        return self._tag(g)

    # -- internals below this line are off limits to algorithm code --

    def _tag(self, g: D4nElement) -> Tag:
        partner = d4n_mul(g, self._sealed_involution)
        rep = min(g, partner, key=D4nElement.sort_key)
        return rep.sort_key()

    def _sealed_label_arrays(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Planted (t, l) as flat digit tuples, for the simulation kernel."""
        return self._sealed_label.t.to_tuple(), self._sealed_label.l.digits

    def _sealed_ancilla(self) -> Optional[AncillaFunction]:
        return None

    def _record_sample(self) -> None:
        """Count one superposition-preparation event."""
        self._counter.increment()


@dataclass(frozen=True)
class AncillaFunction:
    """Total function on the eight single-component symmetries, attached at one slot.

    `table[t * 4 + k]` is the value at r^t s^k.
    """

    component: int
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.component < 0:
            raise ValueError("component index must be nonnegative")
        if len(self.table) != 8:
            raise ValueError(f"table must have 8 entries, got {len(self.table)}")

    def value(self, e: D4Element) -> int:
        return self.table[e.t * 4 + e.k]

    def constant_on_cosets_of(self, h: D4Element) -> bool:
        """Whether the function is constant on every left coset of {e, h}."""
        from .groups import D4_ELEMENTS, d4_mul

        return all(self.value(d4_mul(x, h)) == self.value(x) for x in D4_ELEMENTS)


# Value at r^t s^k depends on k only, folding k and -k together, so it is
# constant on cosets of {e, r} but separates even-rotation cosets of {e, r s^2}.
_EVEN_CLASS_ROW = (0, 1, 2, 1)
# Distinct rows for t = 0 and t = 1, constant on cosets of {e, r s} but not
# on the even-rotation cosets of {e, r s^3}.
_ODD_CLASS_ROWS = (0, 0, 1, 0, 0, 0, 0, 1)


def ancilla_for_even_class(component: int) -> AncillaFunction:
    """Distinguishes the subgroup pair {e, r} (constant) from {e, r s^2}."""
    return AncillaFunction(component, _EVEN_CLASS_ROW + _EVEN_CLASS_ROW)


def ancilla_for_odd_class(component: int) -> AncillaFunction:
    """Distinguishes the subgroup pair {e, r s} (constant) from {e, r s^3}."""
    return AncillaFunction(component, _ODD_CLASS_ROWS)


class ExtendedOracle(HiddenOracle):
    """Base oracle augmented with an ancilla value at one component.

    If the ancilla is constant on the planted subgroup's cosets at that
    component, the pair function hides the same subgroup; otherwise the
    coset pairing breaks wherever the ancilla separates a coset.
    """

    def __init__(self, base: HiddenOracle, ancilla: AncillaFunction):
        if ancilla.component >= base.n:
            raise ValueError(
                f"ancilla component {ancilla.component} out of range for n={base.n}"
            )
        super().__init__(base._sealed_label, counter=base._counter)
        self._ancilla = ancilla

    def query(self, g: D4nElement) -> Tag:
        if g.n != self.n:
            raise ValueError(f"element length {g.n} != oracle size {self.n}")
        self._counter.increment()
        base_tag = self._tag(g)
        return (base_tag, self._ancilla.value(g.component(self._ancilla.component)))

    def _sealed_ancilla(self) -> Optional[AncillaFunction]:
        return self._ancilla


def plant(label: InvolutionLabel, n: int) -> HiddenOracle:
    """Seal a label into a fresh oracle."""
    if label.n != n:
        raise ValueError(f"label size {label.n} != requested n={n}")
    return HiddenOracle(label)


def extended_oracle(o: HiddenOracle, a: AncillaFunction) -> HiddenOracle:
    """Augment o with an ancilla; shares o's query counter."""
    return ExtendedOracle(o, a)


class XorMaskOracle:
    """Hiding function for a nonzero XOR mask on n-bit strings.

    `query` answers with the canonical member of {x, x ^ mask};
    `sample_fourier` simulates one standard-method round, returning a
    uniform vector orthogonal to the mask.  Both count one query.
    """

    def __init__(self, mask: BitVector):
        if mask.is_zero():
            raise ValueError("mask must be nonzero")
        self.n = mask.n
        self._sealed_mask = mask
        self._counter = _QueryCounter()

    @property
    def query_count(self) -> int:
        return self._counter.count

    def query(self, x: int) -> int:
        if not 0 <= x < (1 << self.n):
            raise ValueError(f"input 0x{x:x} out of range for n={self.n}")
        self._counter.increment()
        return min(x, x ^ self._sealed_mask.bits)

    def sample_fourier(self, rng: Random) -> BitVector:
        """Uniform y with y . mask = 0; costs one query."""
        self._counter.increment()
        z = self._sealed_mask.bits
        pivot = z & (-z)
        full = (1 << self.n) - 1
        rest = rng.getrandbits(self.n) & full & ~pivot
        parity = (rest & z).bit_count() & 1
        return BitVector(self.n, rest | (pivot if parity else 0))
