"""Batch runner: cartesian parameter sweeps over a base config.

Each axis is a config key path plus a list of values; the sweep runs
every combination, one trajectory CSV (plus metadata sidecar) per run,
and finally writes sweep_index.json listing every run exactly once
with its exit status.  Runs are independent, so they execute in
parallel worker processes up to the configured parallelism.
"""

from __future__ import annotations

import copy
import itertools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any

from .config import ConfigError, parse_config
from .integrator import IntegrationError, simulate
from .output import decimate, trajectory_summary, write_sidecar, write_trajectory_csv

__all__ = ["SweepSpec", "run_sweep", "parse_axis"]


@dataclass(frozen=True)
class SweepSpec:
    base_text: str
    axes: tuple[tuple[str, tuple[Any, ...]], ...]
    parallelism: int = 1

    def __post_init__(self) -> None:
        if not self.axes:
            raise ValueError("a sweep needs at least one axis")
        if any(len(values) == 0 for _, values in self.axes):
            raise ValueError("every axis needs at least one value")
        if self.parallelism < 1:
            raise ValueError(f"parallelism must be >= 1, got {self.parallelism}")

    @property
    def total_runs(self) -> int:
        total = 1
        for _, values in self.axes:
            total *= len(values)
        return total


def parse_axis(text: str) -> tuple[str, tuple[Any, ...]]:
    """CLI axis syntax: "pump.p=0.001|0.01" ('|' separates values)."""
    key, sep, values = text.partition("=")
    if not sep or not key or not values:
        raise ValueError(f"axis must look like key.path=v1|v2, got {text!r}")
    parsed = []
    for token in values.split("|"):
        try:
            parsed.append(json.loads(token))
        except json.JSONDecodeError:
            parsed.append(token)
    return key.strip(), tuple(parsed)


def _set_path(obj: dict, path: str, value: Any) -> None:
    parts = path.split(".")
    node = obj
    for part in parts[:-1]:
        node = node.setdefault(part, {})
        if not isinstance(node, dict):
            raise ValueError(f"cannot descend into non-object at {part!r} in {path!r}")
    node[parts[-1]] = value


def _execute(job: tuple[str, str, str]) -> dict[str, Any]:
    variant_text, csv_path, run_label = job
    entry: dict[str, Any] = {"run": run_label, "csv": os.path.basename(csv_path)}
    try:
        cfg = parse_config(variant_text)
    except ConfigError as exc:
        entry.update(status=1, csv=None, message=str(exc))
        return entry
    try:
        traj = simulate(cfg.initial, cfg.params, cfg.controller, cfg.integrator)
    except IntegrationError as exc:
        write_trajectory_csv(decimate(exc.trajectory.records), csv_path)
        write_sidecar(csv_path, variant_text, "error", truncated=True,
                      extra={"message": str(exc), "label": run_label})
        entry.update(status=2, message=str(exc))
        return entry
    write_trajectory_csv(decimate(traj.records), csv_path)
    write_sidecar(csv_path, variant_text, traj.termination,
                  extra={"label": run_label, "summary": trajectory_summary(traj)})
    entry.update(status=0, termination=traj.termination)
    return entry


def run_sweep(spec: SweepSpec, out_dir: str) -> list[dict[str, Any]]:
    """Returns the index entries; also writes <out_dir>/sweep_index.json."""
    try:
        base = json.loads(spec.base_text) if spec.base_text.strip() else {}
    except json.JSONDecodeError as exc:
        raise ValueError(f"base config is not valid JSON: {exc}") from exc
    if not isinstance(base, dict):
        raise ValueError("base config must be a JSON object")

    os.makedirs(out_dir, exist_ok=True)
    base_label = base.get("label", "run")
    width = max(3, len(str(spec.total_runs - 1)))

    jobs: list[tuple[str, str, str]] = []
    overrides_per_run: list[dict[str, Any]] = []
    paths = [axis for axis, _ in spec.axes]
    for i, combo in enumerate(itertools.product(*(values for _, values in spec.axes))):
        variant = copy.deepcopy(base)
        overrides = dict(zip(paths, combo))
        for path, value in overrides.items():
            _set_path(variant, path, value)
        label = f"{base_label}_{i:0{width}d}"
        _set_path(variant, "label", label)
        csv_path = os.path.join(out_dir, f"{label}.csv")
        _set_path(variant, "output", csv_path)
        jobs.append((json.dumps(variant, ensure_ascii=False), csv_path, label))
        overrides_per_run.append(overrides)

    if spec.parallelism == 1:
        results = [_execute(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=spec.parallelism) as pool:
            results = list(pool.map(_execute, jobs))

    index = []
    for entry, overrides in zip(results, overrides_per_run):
        entry["overrides"] = overrides
        index.append(entry)
    index_path = os.path.join(out_dir, "sweep_index.json")
    with open(index_path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(index, fh, indent=2, ensure_ascii=False)
        fh.write("\n")
    return index
