"""Replication harness: parameter grids, derived seeds, aggregation.

A sweep expands named axis lists into a cartesian grid and runs R
independent replications per grid point. The stream of replication k
at point index p is derived from the master seed with spawn key
(p, k), so any single replication is reproducible in isolation and
results do not depend on scheduling order. Raw per-replication
records are always kept next to the aggregates: every reported mean
or standard deviation can be recomputed from them.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigError
from .graph import connected_components
from .reinforcement import ReinforcementConfig, simulate_reinforcement, summarize
from .seeding import make_rng
from .tribes import TribesConfig, count_groups, simulate_tribes

__all__ = [
    "AggregateRow",
    "ReplicationRecord",
    "SweepResult",
    "SweepSpec",
    "aggregate",
    "apply_point",
    "fixed_ratio_shocks",
    "grid_points",
    "run_replication",
    "run_sweep",
]

_GROWTH_KEYS = frozenset({"m0", "m"})
_SCHEME_KEYS = frozenset({"p", "r"})


def fixed_ratio_shocks(n: int, ratio: float) -> int:
    """Shock count that holds the size to interactions ratio: round(n / ratio).

    The ratio itself is an experiment choice, not something the models
    pin down; sweeps that use it must label it as such.
    """
    if ratio <= 0:
        raise ConfigError(f"ratio must be positive, got {ratio}")
    s = round(n / ratio)
    if s < 1:
        raise ConfigError(f"ratio {ratio} leaves no shocks at n={n}")
    return int(s)


def apply_point(base, point: dict):
    """Base config with one grid point's overrides applied.

    Plain keys replace config fields. m0 and m land in the growth
    parameters, p and r in the reward scheme. A ratio key is applied
    last and derives the shock count from the point's effective n.
    """
    params = dict(point)
    ratio = params.pop("ratio", None)
    growth_over = {k: params.pop(k) for k in list(params) if k in _GROWTH_KEYS}
    scheme_over = {k: params.pop(k) for k in list(params) if k in _SCHEME_KEYS}
    cfg = base
    try:
        if params:
            cfg = replace(cfg, **params)
        if growth_over:
            cfg = replace(cfg, growth=replace(cfg.growth, **growth_over))
        if scheme_over:
            if not isinstance(cfg, ReinforcementConfig):
                raise ConfigError(
                    f"reward keys {sorted(scheme_over)} only apply to the reinforcement model"
                )
            cfg = replace(cfg, scheme=replace(cfg.scheme, **scheme_over))
    except TypeError as exc:
        raise ConfigError(f"unknown parameter in {sorted(point)}: {exc}") from None
    if ratio is not None:
        cfg = replace(cfg, shocks=fixed_ratio_shocks(cfg.n, ratio))
    return cfg


@dataclass(frozen=True)
class SweepSpec:
    """A base config, named axis lists, and a replication count.

    ratio, when set, is applied at every grid point after the axes, so
    a sweep over n can hold the size to interactions ratio fixed.
    """

    base: ReinforcementConfig | TribesConfig
    axes: dict
    replications: int
    ratio: float | None = None

    def __post_init__(self):
        if self.replications < 1:
            raise ConfigError(
                f"replications must be at least 1, got {self.replications}"
            )
        for name, values in self.axes.items():
            if not isinstance(values, (list, tuple)) or len(values) == 0:
                raise ConfigError(f"axis {name!r} must be a nonempty list")


def grid_points(axes: dict) -> list[dict]:
    """Cartesian product of the axes, in declared key order."""
    if not axes:
        return [{}]
    names = list(axes)
    return [
        dict(zip(names, combo))
        for combo in itertools.product(*(axes[k] for k in names))
    ]


@dataclass(frozen=True)
class ReplicationRecord:
    """Raw metrics of one replication at one grid point."""

    point: dict
    rep: int
    spawn_key: tuple[int, int]
    metrics: dict


@dataclass(frozen=True)
class AggregateRow:
    """Mean and sample standard deviation of one metric at one point.

    undefined counts replications whose metric was None; those are
    excluded from mean and std. count is the number that went in.
    """

    point: dict
    metric: str
    mean: float | None
    std: float | None
    undefined: int
    count: int
    note: str = ""


@dataclass
class SweepResult:
    records: list[ReplicationRecord]
    aggregates: list[AggregateRow]


def run_replication(config, rng) -> dict:
    """Metrics of one replication; the set depends on the model."""
    if isinstance(config, ReinforcementConfig):
        res = simulate_reinforcement(config, rng)
        s = summarize(res.fitness)
        return {
            "average_fitness": s.mean,
            "max_to_median": s.max_to_median,
            "max_to_min": s.max_to_min,
        }
    m = simulate_tribes(config, rng)
    if m.deaths.size:
        return {
            "group_count": float(m.group_counts[-1]),
            "deaths_per_period": m.deaths_per_period(),
            "component_count": float(m.component_counts[-1]),
        }
    return {
        "group_count": float(count_groups(m.fitness, config.group_gap)),
        "deaths_per_period": None,
        "component_count": float(len(connected_components(m.graph))),
    }


def _job(task):
    config, point, point_index, rep, master_seed = task
    rng = make_rng(master_seed, (point_index, rep))
    return ReplicationRecord(
        point=point,
        rep=rep,
        spawn_key=(point_index, rep),
        metrics=run_replication(config, rng),
    )


def run_sweep(spec: SweepSpec, jobs: int = 1) -> SweepResult:
    """Run the whole grid and aggregate.

    jobs > 1 fans replications out to worker processes; the result is
    identical either way because every replication owns a derived
    stream and records are assembled in grid order.
    """
    points = grid_points(spec.axes)
    seed = spec.base.master_seed
    tasks = []
    for pi, point in enumerate(points):
        full = dict(point)
        if spec.ratio is not None:
            full["ratio"] = spec.ratio
        config = apply_point(spec.base, full)
        for rep in range(spec.replications):
            tasks.append((config, point, pi, rep, seed))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_job, tasks, chunksize=16))
    else:
        records = [_job(t) for t in tasks]
    return SweepResult(records=records, aggregates=aggregate(records))


def aggregate(records: list[ReplicationRecord]) -> list[AggregateRow]:
    """Mean and sample std (n - 1 denominator) per point and metric.

    None metrics are excluded and counted as undefined. A single
    defined value reports std 0 and the note single-sample.
    """
    order: list[tuple] = []
    by_point: dict[tuple, tuple[dict, dict]] = {}
    for rec in records:
        key = tuple(rec.point.items())
        if key not in by_point:
            by_point[key] = (rec.point, {})
            order.append(key)
        _, metrics = by_point[key]
        for name, value in rec.metrics.items():
            metrics.setdefault(name, []).append(value)

    rows: list[AggregateRow] = []
    for key in order:
        point, metrics = by_point[key]
        for name, values in metrics.items():
            defined = [v for v in values if v is not None]
            undefined = len(values) - len(defined)
            if not defined:
                rows.append(AggregateRow(point, name, None, None, undefined, 0))
                continue
            mean = float(np.mean(defined))
            if len(defined) > 1:
                std = float(np.std(defined, ddof=1))
                note = ""
            else:
                std = 0.0
                note = "single-sample"
            rows.append(
                AggregateRow(point, name, mean, std, undefined, len(defined), note)
            )
    return rows
