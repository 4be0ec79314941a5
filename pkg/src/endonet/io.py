"""Serialization: config files, result tables, graph snapshots.

Configs are TOML. Results go out as CSV (UTF-8, comma delimiter,
period decimal point, header row) or JSON (records plus a metadata
block). Graph snapshots go out as DOT for external rendering and as a
plain edge list, one "i j q" triple per line. Every output embeds the
effective config and the master seed, so any single file is enough to
reproduce the run that made it.
"""

from __future__ import annotations

import csv
import json
import sys
from dataclasses import asdict, dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import ConfigError
from .generation import GrowthParams
from .graph import SocialGraph
from .montecarlo import AggregateRow, ReplicationRecord, SweepSpec, fixed_ratio_shocks
from .reinforcement import ReinforcementConfig, RewardScheme
from .tribes import TribesConfig

__all__ = [
    "RESULT_COLUMNS",
    "ResultTable",
    "config_dict",
    "export_dot",
    "export_edge_list",
    "load_config",
    "load_edge_list",
    "read_results_csv",
    "read_results_json",
    "run_metadata",
    "write_records",
    "write_results",
]

_VERSION = "0.1.0"

_M1_PARAM_KEYS = frozenset(
    {"n", "shocks", "periods", "p", "r", "initial_fitness", "replications",
     "master_seed", "ratio"}
)
_M2_PARAM_KEYS = frozenset(
    {"n", "shocks", "periods", "alpha", "epsilon", "kernel", "out_weight",
     "group_gap", "sum_rule", "replications", "master_seed"}
)
_GROWTH_KEYS = frozenset({"m0", "m"})


def _check_keys(given, allowed, where):
    unknown = sorted(set(given) - set(allowed))
    if unknown:
        raise ConfigError(f"unknown {where} key(s): {', '.join(unknown)}")


def _build_model1(params: dict, growth: GrowthParams) -> ReinforcementConfig:
    _check_keys(params, _M1_PARAM_KEYS, "reinforcement parameter")
    params = dict(params)
    ratio = params.pop("ratio", None)
    if ratio is not None and "shocks" in params:
        raise ConfigError("give either shocks or ratio, not both")
    scheme = RewardScheme(p=params.pop("p", 1.0), r=params.pop("r", 0.05))
    try:
        cfg = ReinforcementConfig(scheme=scheme, growth=growth, **params)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None
    if ratio is not None:
        cfg = replace(cfg, shocks=fixed_ratio_shocks(cfg.n, ratio))
    return cfg


def _build_model2(params: dict, growth: GrowthParams) -> TribesConfig:
    _check_keys(params, _M2_PARAM_KEYS, "tribes parameter")
    try:
        return TribesConfig(growth=growth, **params)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None


def load_config(path) -> ReinforcementConfig | TribesConfig | SweepSpec:
    """Parse and validate a TOML config file.

    Layout: a top level model key ("reinforcement" or "tribes"), a
    [params] table of model parameters, an optional [growth] table with
    m0 and m, and an optional [sweep] table (replications, ratio, and
    [sweep.axes] lists) that turns the file into a sweep. Defaults are
    filled for everything omitted and echoed back in output metadata.
    """
    path = Path(path)
    try:
        raw = tomllib.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from None

    _check_keys(raw, {"model", "params", "growth", "sweep"}, "top-level")
    model = raw.get("model")
    if model not in ("reinforcement", "tribes"):
        raise ConfigError(
            f"model must be 'reinforcement' or 'tribes', got {model!r}"
        )
    params = raw.get("params", {})
    if "n" not in params:
        raise ConfigError("params.n is required")
    growth_raw = raw.get("growth", {})
    _check_keys(growth_raw, _GROWTH_KEYS, "growth")
    growth = GrowthParams(**growth_raw)

    if model == "reinforcement":
        cfg = _build_model1(params, growth)
        axis_keys = (_M1_PARAM_KEYS | _GROWTH_KEYS) - {"replications", "master_seed"}
    else:
        cfg = _build_model2(params, growth)
        axis_keys = (_M2_PARAM_KEYS | _GROWTH_KEYS) - {"replications", "master_seed"}

    sweep = raw.get("sweep")
    if sweep is None:
        return cfg
    _check_keys(sweep, {"replications", "ratio", "axes"}, "sweep")
    axes = sweep.get("axes", {})
    _check_keys(axes, axis_keys, "sweep axis")
    return SweepSpec(
        base=cfg,
        axes=dict(axes),
        replications=sweep.get("replications", cfg.replications),
        ratio=sweep.get("ratio"),
    )


def config_dict(obj) -> dict:
    """Effective configuration as a plain dict, defaults included."""
    if isinstance(obj, SweepSpec):
        return {
            "model": config_dict(obj.base)["model"],
            "base": config_dict(obj.base),
            "axes": {k: list(v) for k, v in obj.axes.items()},
            "replications": obj.replications,
            "ratio": obj.ratio,
        }
    if isinstance(obj, ReinforcementConfig):
        return {"model": "reinforcement", **asdict(obj)}
    if isinstance(obj, TribesConfig):
        return {"model": "tribes", **asdict(obj)}
    raise TypeError(f"not a config object: {type(obj).__name__}")


def run_metadata(config_or_spec, master_seed: int, timestamp: bool = True) -> dict:
    """Metadata block embedded in every output file."""
    meta = {
        "tool": "endonet",
        "version": _VERSION,
        "master_seed": int(master_seed),
        "config": config_dict(config_or_spec),
    }
    if timestamp:
        meta["created"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return meta


RESULT_COLUMNS = ["point", "metric", "mean", "std", "undefined", "count", "note"]


@dataclass
class ResultTable:
    """Aggregate rows plus the metadata that makes them reproducible."""

    rows: list[AggregateRow]
    metadata: dict = field(default_factory=dict)
    columns: tuple = tuple(RESULT_COLUMNS)


def _point_label(point: dict) -> str:
    if not point:
        return "-"
    return ";".join(f"{k}={v}" for k, v in point.items())


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_results(table: ResultTable, path, fmt: str = "csv") -> Path:
    """Write a result table as CSV or JSON.

    CSV carries the metadata in '#' comment lines above the header and
    leaves undefined cells empty; JSON mirrors the rows as records and
    uses null. The table must not be empty.
    """
    if not table.rows:
        raise ValueError("refusing to write an empty result table")
    path = Path(path)
    if fmt == "csv":
        with path.open("w", encoding="utf-8", newline="") as fh:
            fh.write(f"# endonet {_VERSION} results\n")
            fh.write(f"# metadata = {json.dumps(table.metadata, sort_keys=True)}\n")
            writer = csv.writer(fh)
            writer.writerow(table.columns)
            for row in table.rows:
                writer.writerow(
                    [
                        _point_label(row.point),
                        row.metric,
                        _cell(row.mean),
                        _cell(row.std),
                        row.undefined,
                        row.count,
                        row.note,
                    ]
                )
    elif fmt == "json":
        payload = {
            "metadata": table.metadata,
            "columns": list(table.columns),
            "rows": [asdict(row) for row in table.rows],
        }
        path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    else:
        raise ConfigError(f"format must be 'csv' or 'json', got {fmt!r}")
    return path


def read_results_json(path) -> dict:
    """Load a JSON result file back as a plain dict."""
    return json.loads(Path(path).read_text(encoding="utf-8"))


def read_results_csv(path) -> tuple[dict, list[dict]]:
    """Load a CSV result file back as (metadata, row dicts).

    Numeric cells come back as floats or ints, empty cells as None.
    """
    metadata: dict = {}
    rows: list[dict] = []
    with Path(path).open(encoding="utf-8", newline="") as fh:
        header: list[str] | None = None
        for line in fh:
            if line.startswith("#"):
                text = line[1:].strip()
                if text.startswith("metadata = "):
                    metadata = json.loads(text[len("metadata = "):])
                continue
            cells = next(csv.reader([line]))
            if header is None:
                header = cells
                continue
            row: dict = dict(zip(header, cells))
            for name in ("mean", "std"):
                row[name] = float(row[name]) if row[name] != "" else None
            for name in ("undefined", "count"):
                row[name] = int(row[name])
            rows.append(row)
    return metadata, rows


def write_records(records: list[ReplicationRecord], path, metadata: dict) -> Path:
    """Persist raw per-replication records as JSON."""
    path = Path(path)
    payload = {
        "metadata": metadata,
        "records": [asdict(rec) for rec in records],
    }
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return path


def export_dot(g: SocialGraph, fitness, path) -> Path:
    """Write the graph as DOT: fitness on nodes, q on edges.

    Node lines come in index order and edge lines in sorted endpoint
    order, so an identical graph always produces byte-identical output.
    Values are printed to 6 decimals.
    """
    f = np.asarray(fitness, dtype=np.float64)
    if f.shape != (g.node_count,):
        raise ValueError(
            f"fitness must have length {g.node_count}, got shape {f.shape}"
        )
    lines = ["graph social {"]
    for i in range(g.node_count):
        lines.append(f'    {i} [label="{f[i]:.6f}"];')
    for e in sorted(g.edges(), key=lambda e: (e.a, e.b)):
        lines.append(f'    {e.a} -- {e.b} [label="{e.q:.6f}"];')
    lines.append("}")
    path = Path(path)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def export_edge_list(g: SocialGraph, path) -> Path:
    """Write one "i j q" triple per line, sorted by endpoints.

    q is printed with repr so parsing the file back restores the exact
    float.
    """
    lines = [
        f"{e.a} {e.b} {e.q!r}"
        for e in sorted(g.edges(), key=lambda e: (e.a, e.b))
    ]
    path = Path(path)
    path.write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")
    return path


def load_edge_list(path) -> list[tuple[int, int, float]]:
    """Parse an edge list file back into (a, b, q) triples."""
    triples: list[tuple[int, int, float]] = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 'i j q', got {line!r}")
        triples.append((int(parts[0]), int(parts[1]), float(parts[2])))
    return triples
