"""Exact arithmetic for the order-eight square-symmetry group and its n-fold products.

Group elements are written r^t s^k with t in {0,1} (reflection bit) and
k in {0,1,2,3} (quarter-turn exponent), subject to r^2 = e, s^4 = e and
r s r = s^-1.  Products of n copies are stored componentwise.  All values
are immutable and hashable; every binary operation checks lengths.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random
from typing import Iterable, Iterator

from .gf2 import BitVector

# Length-n vector over GF(2); componentwise addition is XOR and self-inverse.
Z2Vector = BitVector


@dataclass(frozen=True)
class Z4Vector:
    """Fixed-length vector of integers mod 4."""

    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.digits) < 1:
            raise ValueError("Z4Vector must have length >= 1")
        for i, d in enumerate(self.digits):
            if d not in (0, 1, 2, 3):
                raise ValueError(f"digit {i} is {d}, expected 0..3")

    @classmethod
    def from_digits(cls, digits: Iterable[int]) -> "Z4Vector":
        return cls(tuple(int(d) % 4 for d in digits))

    @classmethod
    def zeros(cls, n: int) -> "Z4Vector":
        return cls((0,) * n)

    @property
    def n(self) -> int:
        return len(self.digits)

    def __len__(self) -> int:
        return len(self.digits)

    def __getitem__(self, i: int) -> int:
        return self.digits[i]

    def __add__(self, other: "Z4Vector") -> "Z4Vector":
        self._check_length(other)
        return Z4Vector(tuple((a + b) % 4 for a, b in zip(self.digits, other.digits)))

    def __neg__(self) -> "Z4Vector":
        return Z4Vector(tuple((-d) % 4 for d in self.digits))

    def _check_length(self, other: "Z4Vector") -> None:
        if len(self.digits) != len(other.digits):
            raise ValueError(f"length mismatch: {len(self.digits)} vs {len(other.digits)}")


@dataclass(frozen=True)
class D4Element:
    """One square symmetry r^t s^k."""

    t: int
    k: int

    def __post_init__(self) -> None:
        if self.t not in (0, 1):
            raise ValueError(f"reflection bit must be 0 or 1, got {self.t}")
        if self.k not in (0, 1, 2, 3):
            raise ValueError(f"rotation exponent must be 0..3, got {self.k}")


D4_IDENTITY = D4Element(0, 0)
D4_ELEMENTS = tuple(D4Element(t, k) for t in (0, 1) for k in (0, 1, 2, 3))


def d4_mul(a: D4Element, b: D4Element) -> D4Element:
    """Group product; the right factor's reflection conjugates the left rotation."""
    k = (b.k - a.k if b.t else b.k + a.k) % 4
    return D4Element(a.t ^ b.t, k)


def d4_inverse(a: D4Element) -> D4Element:
    if a.t:
        return a
    return D4Element(0, (-a.k) % 4)


@dataclass(frozen=True)
class D4nElement:
    """Element of the n-fold product, stored as parallel reflection/rotation vectors."""

    t: Z2Vector
    k: Z4Vector

    def __post_init__(self) -> None:
        if self.t.n != self.k.n:
            raise ValueError(f"length mismatch: t has {self.t.n}, k has {self.k.n}")

    @classmethod
    def identity(cls, n: int) -> "D4nElement":
        return cls(Z2Vector.zeros(n), Z4Vector.zeros(n))

    @classmethod
    def from_components(cls, comps: Iterable[D4Element]) -> "D4nElement":
        comps = list(comps)
        return cls(
            Z2Vector.from_bits(c.t for c in comps),
            Z4Vector.from_digits(c.k for c in comps),
        )

    @property
    def n(self) -> int:
        return self.t.n

    def component(self, i: int) -> D4Element:
        return D4Element(self.t[i], self.k[i])

    def sort_key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return (self.t.to_tuple(), self.k.digits)


def d4n_mul(a: D4nElement, b: D4nElement) -> D4nElement:
    if a.n != b.n:
        raise ValueError(f"length mismatch: {a.n} vs {b.n}")
    ks = tuple(
        (bk - ak if bt else bk + ak) % 4
        for ak, bk, bt in zip(a.k.digits, b.k.digits, b.t.to_tuple())
    )
    return D4nElement(a.t ^ b.t, Z4Vector(ks))


def d4n_inverse(a: D4nElement) -> D4nElement:
    ks = tuple(k if t else (-k) % 4 for k, t in zip(a.k.digits, a.t.to_tuple()))
    return D4nElement(a.t, Z4Vector(ks))


def all_d4n_elements(n: int) -> Iterator[D4nElement]:
    """Enumerate all 8^n elements (intended for n <= 2 ground-truth checks)."""
    def rec(i: int, comps: list[D4Element]) -> Iterator[D4nElement]:
        if i == n:
            yield D4nElement.from_components(comps)
            return
        for e in D4_ELEMENTS:
            comps.append(e)
            yield from rec(i + 1, comps)
            comps.pop()

    yield from rec(0, [])


# Valid per-component (t_i, l_i) pairs of an order-two subgroup label.
COMPONENT_LABEL_PAIRS = ((0, 0), (1, 0), (1, 1), (1, 2), (1, 3))


@dataclass(frozen=True)
class InvolutionLabel:
    """Label (t, l) of the order-two subgroup {e, x} with x = prod_i r^{t_i} s^{l_i}.

    t must be nonzero and l_i = 0 wherever t_i = 0, so the labelled
    element squares to the identity.
    """

    t: Z2Vector
    l: Z4Vector

    def __post_init__(self) -> None:
        if self.t.n != self.l.n:
            raise ValueError(f"length mismatch: t has {self.t.n}, l has {self.l.n}")
        if self.t.is_zero():
            raise ValueError("trivial subgroup label (t = 0) is not supported")
        for i in range(self.t.n):
            if self.t[i] == 0 and self.l[i] != 0:
                raise ValueError(f"component {i}: l must be 0 where t is 0, got {self.l[i]}")

    @property
    def n(self) -> int:
        return self.t.n

    def to_json_dict(self) -> dict:
        return {"n": self.n, "t": list(self.t.to_tuple()), "l": list(self.l.digits)}

    @classmethod
    def from_json_dict(cls, data: dict) -> "InvolutionLabel":
        n = int(data["n"])
        t = Z2Vector.from_bits(int(b) for b in data["t"])
        l = Z4Vector.from_digits(int(d) for d in data["l"])
        if t.n != n or l.n != n:
            raise ValueError(f"label vectors do not match n={n}")
        return cls(t, l)


def involution_element(label: InvolutionLabel) -> D4nElement:
    """The non-identity member of the labelled subgroup."""
    return D4nElement(label.t, label.l)


ClassLabel = tuple[tuple[int, int], ...]


def conjugacy_class(label: InvolutionLabel) -> ClassLabel:
    """Canonical conjugacy-class encoding: per-component (t_i, l_i mod 2).

    Two labels map to the same value exactly when their subgroups are
    conjugate in the product group (conjugation can shift each rotation
    exponent by 2 but preserves its parity).
    """
    return tuple((label.t[i], label.l[i] & 1) for i in range(label.n))


def all_involution_labels(n: int) -> Iterator[InvolutionLabel]:
    """Enumerate every valid label (5^n - 1 of them)."""
    def rec(i: int, ts: list[int], ls: list[int]) -> Iterator[InvolutionLabel]:
        if i == n:
            if any(ts):
                yield InvolutionLabel(Z2Vector.from_bits(ts), Z4Vector.from_digits(ls))
            return
        for t, l in COMPONENT_LABEL_PAIRS:
            ts.append(t)
            ls.append(l)
            yield from rec(i + 1, ts, ls)
            ts.pop()
            ls.pop()

    yield from rec(0, [], [])


def random_involution_label(n: int, rng: Random) -> InvolutionLabel:
    """Uniform draw over all valid labels (rejection on the all-zero t)."""
    while True:
        pairs = [COMPONENT_LABEL_PAIRS[rng.randrange(5)] for _ in range(n)]
        if any(t for t, _ in pairs):
            return InvolutionLabel(
                Z2Vector.from_bits(t for t, _ in pairs),
                Z4Vector.from_digits(l for _, l in pairs),
            )


def random_d4n_element(n: int, rng: Random) -> D4nElement:
    return D4nElement(
        Z2Vector(n, rng.getrandbits(n)),
        Z4Vector(tuple((rng.getrandbits(2 * n) >> (2 * i)) & 3 for i in range(n))),
    )
