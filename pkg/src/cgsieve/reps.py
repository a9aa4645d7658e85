"""Representation matrices of the square-symmetry group and their tensor calculus.

Provides the five irreducible representations, the 2x2 family D_j indexed
by j mod 4 (reducible for even j), the series D_i (x) D_j = D_{i+j} (+) D_{i-j},
and the two-bit transform |x,y> -> |x^y, x> that enacts that basis change.
All matrix entries are fourth roots of unity or zero, so deviations of the
verified identities are pure float noise (<= 1e-12).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .gf2 import BitVector
from .groups import D4_ELEMENTS, D4Element, d4_mul

OMEGA = 1j  # principal fourth root of unity

IRREP_NAMES = ("t", "a", "r", "ra", "2dim")


def irrep_eval(name: str, g: D4Element) -> np.ndarray:
    """Matrix of the named irreducible representation at g.

    The four one-dimensional irreps are the sign characters of the
    reflection bit and rotation parity; "2dim" is the faithful 2x2 irrep.
    """
    if name == "t":
        return np.array([[1.0 + 0j]])
    if name == "a":
        return np.array([[(-1.0) ** g.t + 0j]])
    if name == "r":
        return np.array([[(-1.0) ** g.k + 0j]])
    if name == "ra":
        return np.array([[(-1.0) ** (g.k + g.t) + 0j]])
    if name == "2dim":
        return redrep_eval(1, g)
    raise ValueError(f"unknown irrep {name!r}; expected one of {IRREP_NAMES}")


def redrep_eval(j: int, g: D4Element) -> np.ndarray:
    """2x2 family member D_j at g: diagonal phases for rotations, antidiagonal
    for reflections.  Reducible for j in {0, 2}; D_1 and D_3 are equivalent."""
    j = j % 4
    diag = OMEGA ** ((j * g.k) % 4)
    anti = OMEGA ** ((-j * g.k) % 4)
    if g.t == 0:
        return np.array([[diag, 0], [0, anti]])
    return np.array([[0, anti], [diag, 0]])


@dataclass(frozen=True)
class CGOutcome:
    """Labels of the two summands of D_i (x) D_j, each appearing once."""

    plus: int
    minus: int
    multiplicity_dim: int = 2


def cg_series(i: int, j: int) -> CGOutcome:
    return CGOutcome(plus=(i + j) % 4, minus=(i - j) % 4)


def double_cnot_matrix() -> np.ndarray:
    """Permutation taking |x, y> to |x ^ y, x> on two bits."""
    u = np.zeros((4, 4), dtype=complex)
    for x in (0, 1):
        for y in (0, 1):
            u[((x ^ y) << 1) | x, (x << 1) | y] = 1
    return u


def verify_cg_conjugation(i: int, j: int) -> float:
    """Max entrywise deviation of U (D_i (x) D_j) U^dag from D_{i+j} (+) D_{i-j}
    over all eight group elements."""
    u = double_cnot_matrix()
    out = cg_series(i, j)
    dev = 0.0
    for g in D4_ELEMENTS:
        lhs = u @ np.kron(redrep_eval(i, g), redrep_eval(j, g)) @ u.conj().T
        rhs = np.zeros((4, 4), dtype=complex)
        rhs[:2, :2] = redrep_eval(out.plus, g)
        rhs[2:, 2:] = redrep_eval(out.minus, g)
        dev = max(dev, float(np.max(np.abs(lhs - rhs))))
    return dev


def verify_x_conjugation(j: int) -> float:
    """Max deviation of X D_j(g) X from D_{-j}(g) over all eight elements."""
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    dev = 0.0
    for g in D4_ELEMENTS:
        lhs = x @ redrep_eval(j, g) @ x
        rhs = redrep_eval((-j) % 4, g)
        dev = max(dev, float(np.max(np.abs(lhs - rhs))))
    return dev


def character(name: str) -> dict[D4Element, complex]:
    return {g: complex(np.trace(irrep_eval(name, g))) for g in D4_ELEMENTS}


def redrep_character(j: int) -> dict[D4Element, complex]:
    return {g: complex(np.trace(redrep_eval(j, g))) for g in D4_ELEMENTS}


def _char_inner(chi1: dict[D4Element, complex], chi2: dict[D4Element, complex]) -> complex:
    return sum(chi1[g] * chi2[g].conjugate() for g in D4_ELEMENTS) / 8


def decompose_redrep(j: int) -> dict[str, int]:
    """Irrep multiplicities of D_j via character inner products."""
    chi = redrep_character(j)
    out: dict[str, int] = {}
    for name in IRREP_NAMES:
        inner = _char_inner(chi, character(name))
        mult = round(inner.real)
        if abs(inner - mult) > 1e-12:
            raise ArithmeticError(f"non-integer multiplicity {inner} for irrep {name}")
        if mult:
            out[name] = mult
    return out


def homomorphism_deviation(matrices: dict[D4Element, np.ndarray]) -> float:
    """Max deviation of M(g) M(h) from M(gh) over all 64 pairs."""
    dev = 0.0
    for g in D4_ELEMENTS:
        for h in D4_ELEMENTS:
            lhs = matrices[g] @ matrices[h]
            rhs = matrices[d4_mul(g, h)]
            dev = max(dev, float(np.max(np.abs(lhs - rhs))))
    return dev


def unitarity_deviation(matrices: dict[D4Element, np.ndarray]) -> float:
    dev = 0.0
    for g in D4_ELEMENTS:
        m = matrices[g]
        dev = max(dev, float(np.max(np.abs(m @ m.conj().T - np.eye(m.shape[0])))))
    return dev


def character_orthonormality_deviation() -> float:
    """Max deviation of the irrep character Gram matrix from the identity."""
    dev = 0.0
    for i, n1 in enumerate(IRREP_NAMES):
        for j, n2 in enumerate(IRREP_NAMES):
            inner = _char_inner(character(n1), character(n2))
            dev = max(dev, abs(inner - (1 if i == j else 0)))
    return dev


def identity_suite() -> dict:
    """Run every representation identity; used by the verify-reps command."""
    homomorphism = {}
    unitarity = {}
    for name in IRREP_NAMES:
        mats = {g: irrep_eval(name, g) for g in D4_ELEMENTS}
        homomorphism[name] = homomorphism_deviation(mats)
        unitarity[name] = unitarity_deviation(mats)
    for j in range(4):
        mats = {g: redrep_eval(j, g) for g in D4_ELEMENTS}
        homomorphism[f"redrep_{j}"] = homomorphism_deviation(mats)
        unitarity[f"redrep_{j}"] = unitarity_deviation(mats)
    cg = {f"{i},{j}": verify_cg_conjugation(i, j) for i in range(4) for j in range(4)}
    xconj = {str(j): verify_x_conjugation(j) for j in range(4)}
    decomps = {str(j): decompose_redrep(j) for j in range(4)}
    char_dev = character_orthonormality_deviation()
    max_dev = max(
        max(homomorphism.values()),
        max(unitarity.values()),
        max(cg.values()),
        max(xconj.values()),
        char_dev,
    )
    return {
        "homomorphism": homomorphism,
        "unitarity": unitarity,
        "cg_conjugation": cg,
        "x_conjugation": xconj,
        "decompositions": decomps,
        "characters_orthonormal_dev": char_dev,
        "max_deviation": max_dev,
        "pass": max_dev <= 1e-12,
    }


def cg_series_z2n(r1: BitVector, r2: BitVector) -> BitVector:
    """Combine two Fourier labels of the n-bit parity group into one.

    Tensoring two sign characters multiplies them, so the combined label is
    the XOR of the inputs.  This is the elementary step behind eliminating
    rows of measured labels when recovering a hidden XOR mask: adding two
    equations y1 . z = 0 and y2 . z = 0 is the same as passing to the
    combined label (y1 ^ y2).
    """
    if r1.n != r2.n:
        raise ValueError(f"length mismatch: {r1.n} vs {r2.n}")
    return r1 ^ r2
