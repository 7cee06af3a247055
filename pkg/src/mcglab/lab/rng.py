"""Counter-based random streams keyed by (seed, sample index).

Each sample draws from its own Philox stream, so results do not depend on
how samples are split among workers.
"""
from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1


def stream(seed: int, index: int) -> np.random.Generator:
    key = np.array([seed & _MASK, index & _MASK], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))
