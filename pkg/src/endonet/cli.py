"""Command line front end.

Single runs, sweeps, presets and graph export. Every run prints its
effective master seed; rerunning with --seed <that value> (and
--no-timestamp) reproduces the output files byte for byte.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import ConfigError
from .io import (
    ResultTable,
    config_dict,
    export_dot,
    export_edge_list,
    load_config,
    run_metadata,
    write_records,
    write_results,
)
from .montecarlo import SweepSpec, apply_point, run_sweep
from .presets import PRESETS, get_preset
from .reinforcement import ReinforcementConfig, simulate_reinforcement, summarize
from .seeding import make_rng
from .tribes import TribesConfig, simulate_tribes

__all__ = ["main"]


def _parse_set(text: str) -> tuple[str, object]:
    if "=" not in text:
        raise ConfigError(f"--set expects key=value, got {text!r}")
    key, raw = text.split("=", 1)
    key = key.strip()
    try:
        value = tomllib.loads(f"v = {raw}")["v"]
    except tomllib.TOMLDecodeError:
        value = raw  # bare word: treat as a string
    return key, value


def _resolve(args, model_cls):
    """Config or sweep spec from --preset or --config plus overrides."""
    if args.preset and args.config:
        raise ConfigError("give either --preset or --config, not both")
    if args.preset:
        obj = get_preset(args.preset)
    elif args.config:
        obj = load_config(args.config)
    else:
        raise ConfigError("one of --preset or --config is required")

    overrides = dict(_parse_set(s) for s in args.set or [])
    if getattr(args, "sum_rule", False):
        overrides["sum_rule"] = True
    if args.seed is not None:
        overrides["master_seed"] = int(args.seed)

    if isinstance(obj, SweepSpec):
        spec_over = {}
        for key in ("replications", "ratio"):
            if key in overrides:
                spec_over[key] = overrides.pop(key)
        base = apply_point(obj.base, overrides) if overrides else obj.base
        obj = replace(obj, base=base, **spec_over)
        model = type(obj.base)
    else:
        obj = apply_point(obj, overrides) if overrides else obj
        model = type(obj)

    if model is not model_cls:
        want = "reinforcement" if model_cls is ReinforcementConfig else "tribes"
        raise ConfigError(f"this command needs a {want} config")
    return obj


def _as_sweep(obj) -> SweepSpec:
    if isinstance(obj, SweepSpec):
        return obj
    return SweepSpec(base=obj, axes={}, replications=obj.replications)


def _single_config(obj):
    if isinstance(obj, SweepSpec):
        print("note: sweep config given; running its base config once")
        return obj.base
    return obj


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _fmt(value) -> str:
    if value is None:
        return "-"
    return f"{value:.6g}"


def _print_aggregates(rows) -> None:
    for row in rows:
        point = ";".join(f"{k}={v}" for k, v in row.point.items()) or "-"
        line = (
            f"  {point:<24} {row.metric:<18} mean={_fmt(row.mean):<12} "
            f"std={_fmt(row.std)}"
        )
        if row.undefined:
            line += f" undefined={row.undefined}"
        print(line)


def _run_sweep_command(args, model_cls) -> int:
    spec = _as_sweep(_resolve(args, model_cls))
    seed = spec.base.master_seed
    print(f"master seed: {seed}")
    jobs = args.jobs if args.jobs else (os.cpu_count() or 1)
    result = run_sweep(spec, jobs=jobs)
    meta = run_metadata(spec, seed, timestamp=not args.no_timestamp)
    out = _out_dir(args)
    records_path = write_records(result.records, out / "records.json", meta)
    table = ResultTable(rows=result.aggregates, metadata=meta)
    results_path = write_results(table, out / f"results.{args.format}", args.format)
    _print_aggregates(result.aggregates)
    print(f"wrote {records_path}")
    print(f"wrote {results_path}")
    return 0


def cmd_model1_run(args) -> int:
    config = _single_config(_resolve(args, ReinforcementConfig))
    seed = config.master_seed
    print(f"master seed: {seed}")
    res = simulate_reinforcement(config, make_rng(seed, (0, 0)))
    s = summarize(res.fitness)
    out = _out_dir(args)
    meta = run_metadata(config, seed, timestamp=not args.no_timestamp)
    payload = {
        "metadata": meta,
        "summary": {
            "mean": s.mean,
            "max_to_median": s.max_to_median,
            "max_to_min": s.max_to_min,
            "degenerate_periods": res.degenerate_periods,
        },
        "per_period_mean": res.trajectory.mean(axis=1).tolist(),
        "final_fitness": res.fitness.tolist(),
    }
    path = out / "model1_run.json"
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {path}")
    if args.format == "csv":
        csv_path = out / "model1_run.csv"
        with csv_path.open("w", encoding="utf-8", newline="") as fh:
            fh.write("period,mean,max,median,min\n")
            for t, row in enumerate(res.trajectory):
                fh.write(
                    f"{t},{np.mean(row)!r},{np.max(row)!r},"
                    f"{np.median(row)!r},{np.min(row)!r}\n"
                )
        print(f"wrote {csv_path}")
    print(
        f"mean fitness {_fmt(s.mean)}, max/median {_fmt(s.max_to_median)}, "
        f"max/min {_fmt(s.max_to_min)}"
    )
    return 0


def cmd_model2_run(args) -> int:
    config = _single_config(_resolve(args, TribesConfig))
    seed = config.master_seed
    print(f"master seed: {seed}")
    m = simulate_tribes(config, make_rng(seed, (0, 0)))
    out = _out_dir(args)
    meta = run_metadata(config, seed, timestamp=not args.no_timestamp)
    payload = {
        "metadata": meta,
        "per_period": {
            "deaths": m.deaths.tolist(),
            "successes": m.successes.tolist(),
            "groups": m.group_counts.tolist(),
            "components": m.component_counts.tolist(),
            "collisions": m.collisions.tolist(),
        },
        "final": {
            "group_count": int(m.group_counts[-1]) if m.group_counts.size else None,
            "component_count": (
                int(m.component_counts[-1]) if m.component_counts.size else None
            ),
            "deaths_per_period": m.deaths_per_period(),
            "fitness_mean": float(np.mean(m.fitness)),
            "fitness_min": float(np.min(m.fitness)),
            "fitness_max": float(np.max(m.fitness)),
        },
        "final_fitness": m.fitness.tolist(),
    }
    path = out / "model2_run.json"
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {path}")
    if args.format == "csv":
        csv_path = out / "model2_run.csv"
        with csv_path.open("w", encoding="utf-8", newline="") as fh:
            fh.write("period,deaths,successes,groups,components,collisions\n")
            for t in range(m.deaths.size):
                fh.write(
                    f"{t},{m.deaths[t]},{m.successes[t]},{m.group_counts[t]},"
                    f"{m.component_counts[t]},{m.collisions[t]}\n"
                )
        print(f"wrote {csv_path}")
    final = payload["final"]
    print(
        f"final groups {final['group_count']}, components "
        f"{final['component_count']}, deaths/period {_fmt(final['deaths_per_period'])}"
    )
    return 0


def cmd_export_graph(args) -> int:
    config = _single_config(_resolve(args, TribesConfig))
    seed = config.master_seed
    print(f"master seed: {seed}")
    m = simulate_tribes(config, make_rng(seed, (0, 0)))
    out = _out_dir(args)
    meta = run_metadata(config, seed, timestamp=not args.no_timestamp)
    dot_path = export_dot(m.graph, m.fitness, out / "graph.dot")
    edges_path = export_edge_list(m.graph, out / "graph_edges.txt")
    meta_payload = {
        "metadata": meta,
        "final": {
            "group_count": int(m.group_counts[-1]) if m.group_counts.size else None,
            "component_count": (
                int(m.component_counts[-1]) if m.component_counts.size else None
            ),
        },
    }
    meta_path = out / "graph_meta.json"
    meta_path.write_text(json.dumps(meta_payload, indent=2) + "\n", encoding="utf-8")
    for p in (dot_path, edges_path, meta_path):
        print(f"wrote {p}")
    return 0


def cmd_model1_sweep(args) -> int:
    return _run_sweep_command(args, ReinforcementConfig)


def cmd_model2_sweep(args) -> int:
    return _run_sweep_command(args, TribesConfig)


def cmd_presets(args) -> int:
    for preset in PRESETS.values():
        print(preset.name)
        print(f"    {preset.description}")
        print(f"    {json.dumps(config_dict(preset.build()), sort_keys=True)}")
    print(
        "Values the models leave open (shocks, periods, ratio, growth, "
        "seeds) are endonet's choices, not canonical ones."
    )
    return 0


def _add_common(p: argparse.ArgumentParser, sum_rule: bool = False) -> None:
    p.add_argument("--config", help="TOML config file")
    p.add_argument("--preset", help="named preset (see the presets command)")
    p.add_argument(
        "--set",
        action="append",
        metavar="KEY=VALUE",
        help="override one config value; repeatable",
    )
    p.add_argument("--out", default=".", help="output directory (default: .)")
    p.add_argument("--seed", type=int, help="master seed override")
    p.add_argument(
        "--format",
        choices=("csv", "json"),
        default="csv",
        help="tabular output format (default: csv)",
    )
    p.add_argument(
        "--jobs",
        type=int,
        default=0,
        help="worker processes for sweeps (default: machine parallelism)",
    )
    p.add_argument(
        "--no-timestamp",
        action="store_true",
        help="omit the timestamp from output metadata",
    )
    if sum_rule:
        p.add_argument(
            "--sum-rule",
            action="store_true",
            dest="sum_rule",
            help="gate exchanges on |fa+fb| <= epsilon instead of |fa-fb|",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="endonet",
        description="Deterministic simulator for endogenous social networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("model1-run", help="one reinforcement replication")
    _add_common(p)
    p.set_defaults(func=cmd_model1_run)

    p = sub.add_parser("model1-sweep", help="reinforcement Monte Carlo sweep")
    _add_common(p)
    p.set_defaults(func=cmd_model1_sweep)

    p = sub.add_parser("model2-run", help="one tribes replication")
    _add_common(p, sum_rule=True)
    p.set_defaults(func=cmd_model2_run)

    p = sub.add_parser("model2-sweep", help="tribes Monte Carlo sweep")
    _add_common(p, sum_rule=True)
    p.set_defaults(func=cmd_model2_sweep)

    p = sub.add_parser(
        "export-graph", help="run the tribes model once and export the graph"
    )
    _add_common(p, sum_rule=True)
    p.set_defaults(func=cmd_export_graph)

    p = sub.add_parser("presets", help="list built-in presets")
    p.set_defaults(func=cmd_presets)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # runtime failure, not a usage problem
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
