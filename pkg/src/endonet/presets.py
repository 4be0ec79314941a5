"""Named, ready-to-run experiment setups.

Every preset pins a full parameter set, including the values the
models themselves leave open (shock counts, period counts, the size to
interactions ratio, growth parameters, seeds). Those are this tool's
choices; the presets command prints them in full so nobody mistakes a
preset for the only defensible setup.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import ConfigError
from .generation import GrowthParams
from .montecarlo import SweepSpec
from .reinforcement import ReinforcementConfig, RewardScheme
from .tribes import KERNEL_INGROUP, KERNEL_RECIPROCAL, TribesConfig

__all__ = ["PRESETS", "Preset", "get_preset", "preset_names"]

_SEED = 20260822


@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    build: Callable[[], object]


def _m1_base(p: float, shocks: int) -> ReinforcementConfig:
    return ReinforcementConfig(
        n=50,
        shocks=shocks,
        periods=46,
        scheme=RewardScheme(p=p, r=0.05),
        master_seed=_SEED,
    )


def _m1_fixed_shocks() -> SweepSpec:
    return SweepSpec(
        base=_m1_base(p=1.0, shocks=20),
        axes={"n": [50, 100, 200, 400]},
        replications=500,
    )


def _m1_fixed_ratio() -> SweepSpec:
    return SweepSpec(
        base=_m1_base(p=1.0, shocks=10),
        axes={"n": [50, 100, 200, 400]},
        replications=500,
        ratio=5.0,
    )


def _m1_mixed_shocks() -> SweepSpec:
    return SweepSpec(
        base=_m1_base(p=0.5, shocks=20),
        axes={"n": [50, 100, 200, 400]},
        replications=500,
    )


def _m1_mixed_ratio() -> SweepSpec:
    return SweepSpec(
        base=_m1_base(p=0.5, shocks=10),
        axes={"n": [50, 100, 200, 400]},
        replications=500,
        ratio=5.0,
    )


def _m2_threshold_sweep(alpha: float) -> Callable[[], SweepSpec]:
    def build() -> SweepSpec:
        return SweepSpec(
            base=TribesConfig(
                n=80, shocks=10, periods=200, alpha=alpha, master_seed=_SEED
            ),
            axes={"epsilon": [0.2, 0.5, 1.0, 1.5, 2.0]},
            replications=50,
        )

    return build


def _m2_snapshot(kernel: str, epsilon: float) -> Callable[[], TribesConfig]:
    # dense start (m0=16, m=14): on a sparse default network both kernels
    # fragment through degree-0 absorption alone, which hides the kernel
    # difference; density is what lets the reciprocal kernel hold the
    # graph together while the in-group kernel still splits it
    def build() -> TribesConfig:
        return TribesConfig(
            n=40,
            shocks=20,
            periods=300,
            alpha=0.99,
            epsilon=epsilon,
            kernel=kernel,
            growth=GrowthParams(m0=16, m=14),
            master_seed=_SEED,
        )

    return build


PRESETS: dict[str, Preset] = {
    p.name: p
    for p in [
        Preset(
            "m1-fixed-shocks",
            "reinforcement sweep over n with the shock count held at 20 "
            "(p=1, T=46, R=500); mean fitness falls as n grows",
            _m1_fixed_shocks,
        ),
        Preset(
            "m1-fixed-ratio",
            "reinforcement sweep over n with n/shocks held at 5 "
            "(p=1, T=46, R=500); mean fitness stays level while the "
            "max to median ratio creeps up with n",
            _m1_fixed_ratio,
        ),
        Preset(
            "m1-mixed-shocks",
            "reinforcement sweep over n with signed rewards (p=0.5) and "
            "the shock count held at 20 (T=46, R=500)",
            _m1_mixed_shocks,
        ),
        Preset(
            "m1-mixed-ratio",
            "reinforcement sweep over n with signed rewards (p=0.5) and "
            "n/shocks held at 5 (T=46, R=500)",
            _m1_mixed_ratio,
        ),
        Preset(
            "m2-threshold-sweep",
            "tribes sweep over epsilon at n=80, 10 shocks, alpha=0.9, "
            "T=200, R=50; low thresholds leave many small groups and "
            "high edge turnover",
            _m2_threshold_sweep(0.9),
        ),
        Preset(
            "m2-threshold-sweep-alpha99",
            "same epsilon sweep with slower edge decay (alpha=0.99)",
            _m2_threshold_sweep(0.99),
        ),
        Preset(
            "m2-snapshot-reciprocal-eps05",
            "single tribes run for graph export: n=40, 20 shocks, "
            "alpha=0.99, T=300, epsilon=0.5, reciprocal kernel on a "
            "dense start (m0=16, m=14); usually stays one component",
            _m2_snapshot(KERNEL_RECIPROCAL, 0.5),
        ),
        Preset(
            "m2-snapshot-reciprocal-eps15",
            "single tribes run for graph export: epsilon=1.5, "
            "reciprocal kernel, dense start",
            _m2_snapshot(KERNEL_RECIPROCAL, 1.5),
        ),
        Preset(
            "m2-snapshot-ingroup-eps05",
            "single tribes run for graph export: epsilon=0.5, in-group "
            "kernel (out_weight=0.01), dense start; usually splits into "
            "disconnected tribes",
            _m2_snapshot(KERNEL_INGROUP, 0.5),
        ),
        Preset(
            "m2-snapshot-ingroup-eps15",
            "single tribes run for graph export: epsilon=1.5, in-group "
            "kernel (out_weight=0.01), dense start",
            _m2_snapshot(KERNEL_INGROUP, 1.5),
        ),
    ]
}


def preset_names() -> list[str]:
    return list(PRESETS)


def get_preset(name: str):
    """Build the config or sweep spec behind a preset name."""
    try:
        preset = PRESETS[name]
    except KeyError:
        known = ", ".join(PRESETS)
        raise ConfigError(f"unknown preset {name!r}; known presets: {known}") from None
    return preset.build()
