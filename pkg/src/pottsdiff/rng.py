"""Deterministic random-stream derivation.

Every consumer of randomness in a run draws from its own counter-based
Philox stream keyed by (master seed, purpose, tick).  Streams are therefore
independent of each other and of evaluation order, which is what makes runs
bit-reproducible regardless of how the per-tick work is scheduled.

Stream ids (part of the reproducibility contract, do not renumber):
    REWIRE      network rewiring, consumed once at construction
    UTILITIES   heterogeneous utility shuffle, consumed once
    INNOVATORS  innovator placement, one stream per tick
    DECISIONS   agent decision draws, one stream per tick
"""

from __future__ import annotations

import numpy as np

REWIRE = 0
UTILITIES = 1
INNOVATORS = 2
DECISIONS = 3

_TICK_BITS = 48


def substream(seed: int, purpose: int, tick: int = 0) -> np.random.Generator:
    """Return the generator for one (seed, purpose, tick) triple."""
    if seed < 0:
        raise ValueError("seed must be non-negative")
    key = np.array([seed, (purpose << _TICK_BITS) + tick], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))
