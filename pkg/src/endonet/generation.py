"""Growth of fitness-weighted preferential attachment networks.

A network starts as a complete graph on the first m0 nodes, so every
node has positive degree before the first arrival. Each later node
joins by connecting to m distinct existing targets, every target drawn
with probability proportional to fitness_j * degree_j. The same
selection law, with an arbitrary per-candidate weight in place of
fitness, also drives the rewiring step of the tribe model, so the
sampling core lives here and is shared.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .graph import SocialGraph

__all__ = [
    "GrowthParams",
    "generate_network",
    "grow_edge_array",
    "pick_from_cumulative",
    "select_by_kernel",
]


@dataclass(frozen=True)
class GrowthParams:
    """Seed clique size m0 and edge budget m of each arriving node."""

    m0: int = 3
    m: int = 2

    def __post_init__(self):
        if self.m0 < 2:
            raise ConfigError(f"m0 must be at least 2, got {self.m0}")
        if not 1 <= self.m <= self.m0:
            raise ConfigError(
                f"m must be in [1, m0], got m={self.m} with m0={self.m0}"
            )


def pick_from_cumulative(cum: np.ndarray, rng: np.random.Generator) -> int:
    """Index drawn in proportion to consecutive differences of ``cum``.

    ``cum`` is an inclusive prefix sum of nonnegative scores. Returns -1
    when the total mass is zero so the caller can apply its own uniform
    fallback. A zero-mass slot is never selected: its interval is empty,
    and the walk-back below covers the one boundary case where the drawn
    point rounds up onto the total.
    """
    total = cum[-1]
    if total <= 0.0:
        return -1
    x = rng.random() * total
    j = int(np.searchsorted(cum, x, side="right"))
    if j >= cum.size:
        j = cum.size - 1
    while cum[j] - (cum[j - 1] if j else 0.0) == 0.0:
        j -= 1
    return j


def select_by_kernel(candidates, weights, degrees, rng: np.random.Generator) -> int:
    """One candidate drawn with probability w_j * degree_j / sum of scores.

    When every score is zero the draw falls back to uniform over the
    candidates; this keeps degenerate profiles runnable instead of
    aborting a long experiment.
    """
    cand = np.asarray(candidates, dtype=np.int64)
    if cand.size == 0:
        raise ValueError("select_by_kernel needs at least one candidate")
    w = np.asarray(weights, dtype=np.float64)
    d = np.asarray(degrees, dtype=np.float64)
    if w.shape != cand.shape or d.shape != cand.shape:
        raise ValueError("weights and degrees must match candidates in length")
    if np.any(w < 0.0) or np.any(d < 0.0):
        raise ValueError("weights and degrees must be nonnegative")
    j = pick_from_cumulative(np.cumsum(w * d), rng)
    if j < 0:
        j = int(rng.integers(cand.size))
    return int(cand[j])


def grow_edge_array(
    n: int,
    params: GrowthParams,
    fitness: np.ndarray,
    rng: np.random.Generator,
) -> np.ndarray:
    """Edge list of one grown network as an (E, 2) int array with a < b.

    This is the array-level fast path: the reinforcement model rebuilds
    the network every period and only needs endpoint pairs. Edges appear
    in construction order, clique pairs first and then m per arrival.
    E is always m0*(m0-1)/2 + m*(n - m0). Degrees are updated once per
    arrival, after its m picks, so the m targets of one arrival are
    scored against the same snapshot; picks within an arrival are
    without replacement, renormalizing over the remaining candidates.
    """
    m0, m = params.m0, params.m
    f = np.asarray(fitness, dtype=np.float64)
    if n < m0:
        raise ConfigError(f"n must be at least m0={m0}, got {n}")
    if f.shape != (n,):
        raise ConfigError(f"fitness must have length n={n}, got shape {f.shape}")
    if not np.all(np.isfinite(f)):
        raise ConfigError("generation fitness must be finite")
    if np.any(f < 0.0):
        raise ConfigError("generation fitness must be nonnegative")

    edges = np.empty((m0 * (m0 - 1) // 2 + m * (n - m0), 2), dtype=np.int64)
    k = 0
    for i in range(m0):
        for j in range(i + 1, m0):
            edges[k, 0] = i
            edges[k, 1] = j
            k += 1
    deg = np.zeros(n, dtype=np.float64)
    deg[:m0] = m0 - 1
    score = f * deg

    for v in range(m0, n):
        live = score[:v].copy()
        chosen: list[int] = []
        for _ in range(m):
            j = pick_from_cumulative(np.cumsum(live), rng)
            if j < 0:
                # all remaining scores are zero: uniform over the rest
                pool = [t for t in range(v) if t not in chosen]
                j = pool[int(rng.integers(len(pool)))]
            chosen.append(j)
            live[j] = 0.0
        for j in chosen:
            edges[k, 0] = j
            edges[k, 1] = v
            k += 1
            deg[j] += 1.0
            score[j] = f[j] * deg[j]
        deg[v] = float(m)
        score[v] = f[v] * deg[v]
    return edges


def generate_network(
    n: int,
    params: GrowthParams,
    fitness: np.ndarray,
    rng: np.random.Generator,
) -> SocialGraph:
    """Grow a network and return it with every edge at q = 1, n = 0."""
    arr = grow_edge_array(n, params, fitness, rng)
    g = SocialGraph(n)
    for a, b in arr:
        g.add_edge(int(a), int(b))
    return g
