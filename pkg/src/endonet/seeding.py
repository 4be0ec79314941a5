"""Deterministic RNG construction.

Every stochastic routine in this package receives a Generator built here.
Streams are addressed by a master seed plus an integer key path, so any
replication can be reproduced in isolation without replaying the ones
before it.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np


def make_rng(master_seed: int, key: Sequence[int] = ()) -> np.random.Generator:
    """Return a PCG64 Generator for the stream addressed by ``key``.

    The same (master_seed, key) pair always yields an identical stream,
    on any platform and regardless of how many other streams were made.
    """
    seq = np.random.SeedSequence(master_seed, spawn_key=tuple(key))
    return np.random.default_rng(seq)
