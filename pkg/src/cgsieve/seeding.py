"""Deterministic seed derivation for parallel, reproducible trials.

Child streams are derived by hashing the master seed with a path of
labels, so trial k's stream is independent of how many workers ran or in
which order, and stable across platforms and Python versions.
"""

from __future__ import annotations

import hashlib
from random import Random


def derive_seed(master: int, *path: object) -> int:
    material = repr((int(master),) + tuple(path)).encode()
    return int.from_bytes(hashlib.sha256(material).digest()[:8], "big")


def derive_rng(master: int, *path: object) -> Random:
    return Random(derive_seed(master, *path))
