"""Seeded random streams.

A run has one 64-bit master seed. Each consumer gets its own independent
stream from ``SeedSequence(seed, spawn_key=(purpose, index))`` so that adding
draws in one phase never shifts the numbers seen by another.
"""
from __future__ import annotations

import numpy as np

EXTRACT = 0
BASE = 1
STARS = 2
EXTEND = 3
BENCH = 4


def stream(seed: int, purpose: int, index: int = 0) -> np.random.Generator:
    ss = np.random.SeedSequence(int(seed) & ((1 << 64) - 1), spawn_key=(purpose, index))
    return np.random.Generator(np.random.PCG64(ss))
