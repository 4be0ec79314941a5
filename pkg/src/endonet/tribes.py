"""Tribe formation: bounded-confidence exchange on a decaying network.

Agents carry a real fitness value, drawn standard normal at the start,
and live on a persistent network grown with uniform weights. Each
period has five stages, in this order:

1. S shocks. Every shock picks one edge uniformly at random. If the
   endpoint values are within the confidence threshold epsilon they
   both move to their midpoint and the edge books one success.
2. Every edge's survival weight decays: q <- min(1, alpha**(1-n) * q),
   with n the edge's success count this period. Idle edges weaken,
   once-used edges hold, busy edges recover toward 1.
3. Every edge draws u ~ Uniform(0, 1) and dies iff q < u, so q is the
   survival probability.
4. Every dead edge is rewired: one endpoint, chosen by coin flip,
   keeps the stub and picks a new partner over the whole agent space
   with probability proportional to similarity * degree. The old
   partner is eligible again. The fresh edge starts at q = 1, n = 0.
5. All success counters reset for the next period.

Two similarity kernels are available: a smooth reciprocal kernel and a
hard in-group kernel that scores everyone beyond the threshold with a
small constant weight. Under the hard kernel, like seeks like until
the graph can fall apart into disconnected tribes.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .generation import GrowthParams, generate_network, pick_from_cumulative
from .graph import EmptyGraphError, SocialGraph, connected_components
from .seeding import make_rng

__all__ = [
    "KERNEL_INGROUP",
    "KERNEL_RECIPROCAL",
    "PeriodMetrics",
    "TribeMetrics",
    "TribesConfig",
    "bounded_confidence_update",
    "count_groups",
    "decay_q",
    "rewire_target",
    "similarity_weight",
    "simulate_tribes",
    "step_period",
]

KERNEL_RECIPROCAL = "reciprocal"
KERNEL_INGROUP = "ingroup"
_KERNELS = (KERNEL_RECIPROCAL, KERNEL_INGROUP)

# floor against floating point underflow; q must stay positive
_TINY = sys.float_info.min


@dataclass(frozen=True)
class TribesConfig:
    n: int
    shocks: int = 10
    periods: int = 200
    alpha: float = 0.9
    epsilon: float = 0.5
    kernel: str = KERNEL_RECIPROCAL
    out_weight: float = 0.01
    growth: GrowthParams = GrowthParams()
    group_gap: float = 1e-3
    sum_rule: bool = False
    replications: int = 1
    master_seed: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise ConfigError(f"n must be at least 2, got {self.n}")
        if self.n < self.growth.m0:
            raise ConfigError(
                f"n must be at least m0={self.growth.m0}, got {self.n}"
            )
        if self.shocks < 0:
            raise ConfigError(f"shocks must be nonnegative, got {self.shocks}")
        if self.periods < 0:
            raise ConfigError(f"periods must be nonnegative, got {self.periods}")
        if not 0.0 < self.alpha < 1.0:
            raise ConfigError(f"alpha must be in (0, 1), got {self.alpha}")
        if self.epsilon < 0.0:
            raise ConfigError(f"epsilon must be nonnegative, got {self.epsilon}")
        if self.kernel not in _KERNELS:
            raise ConfigError(
                f"kernel must be one of {_KERNELS}, got {self.kernel!r}"
            )
        if not 0.0 < self.out_weight <= 1.0:
            raise ConfigError(
                f"out_weight must be in (0, 1], got {self.out_weight}"
            )
        if not self.group_gap > 0.0:
            raise ConfigError(f"group_gap must be positive, got {self.group_gap}")
        if self.replications < 1:
            raise ConfigError(
                f"replications must be at least 1, got {self.replications}"
            )


def bounded_confidence_update(
    fa: float,
    fb: float,
    epsilon: float,
    sum_rule: bool = False,
) -> tuple[float, float, bool]:
    """Midpoint exchange gated by the confidence threshold.

    Default gate: the exchange happens iff |fa - fb| <= epsilon, the
    usual reading of bounded confidence. With sum_rule=True the gate is
    |fa + fb| <= epsilon instead; that variant is kept runnable so the
    two conventions can be compared directly, but it is not the
    default.
    """
    gap = abs(fa + fb) if sum_rule else abs(fa - fb)
    if gap <= epsilon:
        mid = 0.5 * (fa + fb)
        return mid, mid, True
    return fa, fb, False


def decay_q(q: float, n: int, alpha: float) -> float:
    """Survival weight after one period with n successes on the edge.

    alpha**(1 - n) shrinks idle edges (n = 0), leaves once-used edges
    untouched (n = 1) and strengthens busier ones, clamped into (0, 1].
    The floor keeps q positive when extreme parameters underflow.
    """
    try:
        out = alpha ** (1 - n) * q
    except OverflowError:
        # alpha**(1-n) alone exceeds the float range; go through logs
        out = math.exp((1 - n) * math.log(alpha) + math.log(q))
    if out < _TINY:
        out = _TINY
    return out if out < 1.0 else 1.0


def similarity_weight(
    fi: float,
    fj: float,
    kernel: str,
    epsilon: float = 0.0,
    out_weight: float = 0.01,
) -> float:
    """Pairwise similarity in (0, 1].

    reciprocal: 1 / (1 + |fi - fj|), a smooth preference for near peers.
    ingroup: 1 when |fi - fj| < epsilon (strictly), out_weight beyond,
    a hard split between in-group and out-group.
    """
    gap = abs(fi - fj)
    if kernel == KERNEL_RECIPROCAL:
        return 1.0 / (1.0 + gap)
    if kernel == KERNEL_INGROUP:
        return 1.0 if gap < epsilon else out_weight
    raise ValueError(f"unknown kernel {kernel!r}")


def rewire_target(
    i: int,
    g: SocialGraph,
    fitness: np.ndarray,
    config: TribesConfig,
    rng: np.random.Generator,
) -> int:
    """New partner for agent i, drawn over the whole agent space.

    Candidate j scores similarity(i, j) * degree(j), so isolated agents
    are never drawn and well-connected similar agents dominate. The
    previous partner is eligible again. When every score is zero the
    draw falls back to uniform over j != i.
    """
    f = np.asarray(fitness, dtype=np.float64)
    gap = np.abs(f - f[i])
    if config.kernel == KERNEL_RECIPROCAL:
        w = 1.0 / (1.0 + gap)
    else:
        w = np.where(gap < config.epsilon, 1.0, config.out_weight)
    scores = w * g.degree_array()
    scores[i] = 0.0
    j = pick_from_cumulative(np.cumsum(scores), rng)
    if j < 0:
        j = int(rng.integers(g.node_count - 1))
        if j >= i:
            j += 1
    return j


@dataclass(frozen=True)
class PeriodMetrics:
    """What one period did: deaths, clustering, and rewiring outcomes."""

    deaths: int
    successes: int
    groups: int
    components: int
    collisions: int


def step_period(
    g: SocialGraph,
    fitness: np.ndarray,
    config: TribesConfig,
    rng: np.random.Generator,
) -> PeriodMetrics:
    """Advance the graph and the fitness profile by one period, in place.

    Stages run in the documented order: shocks, decay, survival draws,
    rewiring, counter reset. Deaths are decided for all edges at once,
    before any rewiring, from one uniform vector drawn in edge storage
    order; the dead are then rewired one at a time in that same order,
    which keeps seeded runs reproducible.

    Rewiring collision policy: when the sampled partner is already a
    neighbor of the stub keeper, the draw is retried up to n times; if
    every retry collides, the existing edge to the last sampled partner
    is refreshed to q = 1 instead of adding a new edge, and the
    period's collision count goes up by one. Each
    collision therefore shrinks the edge count by exactly one; with no
    collisions the edge count is conserved.
    """
    if g.edge_count == 0:
        raise EmptyGraphError("step_period needs at least one edge")

    # 1. shocks
    successes = 0
    for _ in range(config.shocks):
        a, b = g.random_edge(rng)
        fa, fb, ok = bounded_confidence_update(
            fitness[a], fitness[b], config.epsilon, config.sum_rule
        )
        if ok:
            fitness[a] = fa
            fitness[b] = fb
            g.get_edge(a, b).n += 1
            successes += 1

    # 2 and 3. decay every edge, then decide every death at once
    states = list(g.edges())
    u = rng.random(len(states))
    dead: list[tuple[int, int]] = []
    for e, ue in zip(states, u):
        e.q = decay_q(e.q, e.n, config.alpha)
        if e.q < ue:
            dead.append((e.a, e.b))

    # 4. rewire the dead, in the order their deaths were decided
    collisions = 0
    for a, b in dead:
        g.remove_edge(a, b)
        keeper = a if rng.integers(2) == 0 else b
        target = -1
        added = False
        for _ in range(g.node_count):
            target = rewire_target(keeper, g, fitness, config, rng)
            if not g.has_edge(keeper, target):
                g.add_edge(keeper, target, 1.0)
                added = True
                break
        if not added:
            g.get_edge(keeper, target).q = 1.0
            collisions += 1

    # 5. reset the per-period success counters
    for e in g.edges():
        e.n = 0

    return PeriodMetrics(
        deaths=len(dead),
        successes=successes,
        groups=count_groups(fitness, config.group_gap),
        components=len(connected_components(g)),
        collisions=collisions,
    )


@dataclass
class TribeMetrics:
    """Per-period series plus the final snapshot of one replication."""

    group_counts: np.ndarray
    deaths: np.ndarray
    component_counts: np.ndarray
    successes: np.ndarray
    collisions: np.ndarray
    initial_fitness: np.ndarray
    fitness: np.ndarray
    graph: SocialGraph

    def deaths_per_period(self) -> float | None:
        """Mean deaths per period, None for a zero-period run."""
        if self.deaths.size == 0:
            return None
        return float(np.mean(self.deaths))


def simulate_tribes(
    config: TribesConfig,
    rng: np.random.Generator | None = None,
) -> TribeMetrics:
    """Run T periods from a standard normal profile on a fresh network.

    The starting network is grown with uniform (all ones) weights; the
    normal draws only drive the exchange dynamics. Every edge starts at
    q = 1. With rng omitted, the stream is derived from
    config.master_seed.
    """
    if rng is None:
        rng = make_rng(config.master_seed)
    fitness = rng.standard_normal(config.n)
    g = generate_network(config.n, config.growth, np.ones(config.n), rng)
    t_max = config.periods
    groups = np.empty(t_max, dtype=np.int64)
    deaths = np.empty(t_max, dtype=np.int64)
    components = np.empty(t_max, dtype=np.int64)
    successes = np.empty(t_max, dtype=np.int64)
    collisions = np.empty(t_max, dtype=np.int64)
    initial = fitness.copy()
    for t in range(t_max):
        pm = step_period(g, fitness, config, rng)
        groups[t] = pm.groups
        deaths[t] = pm.deaths
        components[t] = pm.components
        successes[t] = pm.successes
        collisions[t] = pm.collisions
    return TribeMetrics(
        group_counts=groups,
        deaths=deaths,
        component_counts=components,
        successes=successes,
        collisions=collisions,
        initial_fitness=initial,
        fitness=fitness,
        graph=g,
    )


def count_groups(fitness: np.ndarray, group_gap: float) -> int:
    """Clusters in sorted fitness, split wherever a gap exceeds group_gap.

    Values within group_gap of their sorted neighbor sit in one group;
    a strictly larger gap starts the next. The gap only needs to absorb
    floating point residue: agents that reached consensus are equal up
    to rounding.
    """
    if not group_gap > 0.0:
        raise ValueError(f"group_gap must be positive, got {group_gap}")
    f = np.sort(np.asarray(fitness, dtype=np.float64))
    if f.size == 0:
        return 0
    return 1 + int(np.count_nonzero(np.diff(f) > group_gap))
