"""Dense bit-packed linear algebra over GF(2).

Rows are Python ints (bit i = column i), so a row update is a single
word-parallel XOR regardless of width.  Matrices and vectors are
immutable; every operation returns fresh objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random
from typing import Iterable, Optional, Sequence


@dataclass(frozen=True)
class BitVector:
    """Fixed-length vector over GF(2), packed into an int (bit i = entry i)."""

    n: int
    bits: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"BitVector length must be >= 1, got {self.n}")
        if not 0 <= self.bits < (1 << self.n):
            raise ValueError(f"bits 0x{self.bits:x} out of range for length {self.n}")

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitVector":
        vals = list(bits)
        packed = 0
        for i, b in enumerate(vals):
            if b not in (0, 1):
                raise ValueError(f"entry {i} is {b}, expected 0 or 1")
            packed |= b << i
        return cls(len(vals), packed)

    @classmethod
    def zeros(cls, n: int) -> "BitVector":
        return cls(n, 0)

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        self._check_length(other)
        return BitVector(self.n, self.bits ^ other.bits)

    __add__ = __xor__  # GF(2) addition is XOR

    def dot(self, other: "BitVector") -> int:
        self._check_length(other)
        return (self.bits & other.bits).bit_count() & 1

    def weight(self) -> int:
        return self.bits.bit_count()

    def is_zero(self) -> bool:
        return self.bits == 0

    def to_tuple(self) -> tuple[int, ...]:
        return tuple((self.bits >> i) & 1 for i in range(self.n))

    def support(self) -> list[int]:
        return [i for i in range(self.n) if (self.bits >> i) & 1]

    def _check_length(self, other: "BitVector") -> None:
        if self.n != other.n:
            raise ValueError(f"length mismatch: {self.n} vs {other.n}")


@dataclass(frozen=True)
class BitMatrix:
    """Row-major bit-packed matrix over GF(2)."""

    rows: tuple[int, ...]
    cols: int

    def __post_init__(self) -> None:
        if len(self.rows) < 1 or self.cols < 1:
            raise ValueError("BitMatrix needs at least one row and one column")
        mask = (1 << self.cols) - 1
        for i, r in enumerate(self.rows):
            if r & ~mask:
                raise ValueError(f"row {i} has bits beyond column {self.cols - 1}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "BitMatrix":
        if not rows:
            raise ValueError("empty matrix")
        cols = len(rows[0])
        packed = []
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
            packed.append(BitVector.from_bits(r).bits)
        return cls(tuple(packed), cols)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.rows[i])

    def mul_vector(self, v: BitVector) -> BitVector:
        if v.n != self.cols:
            raise ValueError(f"vector length {v.n} != cols {self.cols}")
        out = 0
        for i, r in enumerate(self.rows):
            out |= ((r & v.bits).bit_count() & 1) << i
        return BitVector(self.n_rows, out)

    def is_zero(self) -> bool:
        return all(r == 0 for r in self.rows)


def row_reduce(m: BitMatrix) -> tuple[BitMatrix, int, list[int]]:
    """Reduced row-echelon form with leftmost pivots.

    Returns (reduced matrix of the same shape, rank, pivot column list).
    """
    work = list(m.rows)
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        pivot = None
        for i in range(r, len(work)):
            if (work[i] >> c) & 1:
                pivot = i
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        for i in range(len(work)):
            if i != r and ((work[i] >> c) & 1):
                work[i] ^= work[r]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return BitMatrix(tuple(work), m.cols), r, pivots


def rank(m: BitMatrix) -> int:
    return row_reduce(m)[1]


def null_space_basis(m: BitMatrix) -> list[BitVector]:
    """Basis of {v : m v = 0}; size is cols - rank(m)."""
    reduced, rk, pivots = row_reduce(m)
    pivot_set = set(pivots)
    free_cols = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for f in free_cols:
        v = 1 << f
        for i, c in enumerate(pivots):
            if (reduced.rows[i] >> f) & 1:
                v |= 1 << c
        basis.append(BitVector(m.cols, v))
    return basis


def solve(m: BitMatrix, b: BitVector) -> Optional[BitVector]:
    """Any particular solution of m x = b, or None if inconsistent."""
    if b.n != m.n_rows:
        raise ValueError(f"rhs length {b.n} != rows {m.n_rows}")
    aug_rows = tuple(r | (((b.bits >> i) & 1) << m.cols) for i, r in enumerate(m.rows))
    reduced, _, pivots = row_reduce(BitMatrix(aug_rows, m.cols + 1))
    if m.cols in pivots:
        return None
    x = 0
    for i, c in enumerate(pivots):
        if (reduced.rows[i] >> m.cols) & 1:
            x |= 1 << c
    return BitVector(m.cols, x)


def sample_nonzero_null_vector(m: BitMatrix, rng: Random) -> Optional[BitVector]:
    """Uniform sample from the nullspace minus zero, or None if trivial."""
    basis = null_space_basis(m)
    if not basis:
        return None
    combo = rng.randrange(1, 1 << len(basis))
    v = 0
    for i, vec in enumerate(basis):
        if (combo >> i) & 1:
            v ^= vec.bits
    return BitVector(m.cols, v)
