"""Shared CSV loading and deterministic rendering.

The renderers consume the simulator's file formats and nothing else: a
twelve-column trajectory CSV (with an optional .meta.json sidecar next
to it) or a five-column equilibrium-curve CSV.  Every physics number
comes out of those files; this package only rescales for display
(seconds, uK, mG) and draws.  Images carry no timestamps, so rendering
the same bytes twice gives identical files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Callable, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = [
    "TRAJECTORY_COLUMNS",
    "EQUILIBRIUM_COLUMNS",
    "SchemaError",
    "load_columns",
    "load_trajectory",
    "load_equilibrium",
    "load_sidecar",
    "run_label",
    "warn_if_empty",
    "save",
    "render_main",
]

TRAJECTORY_COLUMNS = [
    "t_s", "T_K", "B_T", "eta", "N1", "N2", "Vbar_m3",
    "n0_m-3", "rho", "Gamma_sc_s-1", "beta_fwd_m3s-1", "chi_inst",
]
EQUILIBRIUM_COLUMNS = ["B_T", "eta_B0", "T_eq_K", "ratio", "residual"]

LINESTYLES = ["-", ":", "--"]  # variant order used throughout


class SchemaError(ValueError):
    """Input file does not carry the expected column layout."""


def load_columns(path: str, expected: Sequence[str]) -> dict[str, np.ndarray]:
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n").split(",")
        missing = [c for c in expected if c not in header]
        if missing:
            raise SchemaError(f"{path}: missing column(s) {', '.join(missing)}")
        if header != list(expected):
            raise SchemaError(f"{path}: unexpected column layout {header!r}")
        rows = []
        for k, line in enumerate(fh, start=2):
            line = line.rstrip("\n")
            if not line:
                continue
            values = line.split(",")
            if len(values) != len(expected):
                raise SchemaError(f"{path}: line {k} has {len(values)} fields, expected {len(expected)}")
            rows.append([float(v) for v in values])
    table = np.array(rows, dtype=float) if rows else np.empty((0, len(expected)))
    return {name: table[:, j] for j, name in enumerate(expected)}


def load_trajectory(path: str) -> dict[str, np.ndarray]:
    return load_columns(path, TRAJECTORY_COLUMNS)


def load_equilibrium(path: str) -> dict[str, np.ndarray]:
    return load_columns(path, EQUILIBRIUM_COLUMNS)


def load_sidecar(csv_path: str) -> dict | None:
    meta = csv_path + ".meta.json"
    if not os.path.exists(meta):
        return None
    with open(meta, encoding="utf-8") as fh:
        return json.load(fh)


def run_label(csv_path: str, sidecar: dict | None) -> str:
    if sidecar and isinstance(sidecar.get("label"), str):
        return sidecar["label"]
    return os.path.splitext(os.path.basename(csv_path))[0]


def warn_if_empty(path: str, data: dict[str, np.ndarray]) -> bool:
    if len(next(iter(data.values()))) == 0:
        print(f"warning: {path} has no data rows, drawing empty axes", file=sys.stderr)
        return True
    return False


def save(fig, path: str) -> None:
    # suppress per-format timestamps so identical inputs give identical bytes
    metadata: dict | None
    if path.endswith(".svg"):
        metadata = {"Date": None}
    elif path.endswith(".pdf"):
        metadata = {"CreationDate": None}
    else:
        metadata = {"Software": "demagfigs"}
    fig.savefig(path, dpi=150, metadata=metadata)


def render_main(
    build: Callable[[list[str]], "plt.Figure"],
    argv: list[str] | None,
    min_inputs: int,
    max_inputs: int,
    description: str,
) -> int:
    parser = argparse.ArgumentParser(description=description)
    parser.add_argument("--input", nargs="+", required=True, metavar="CSV", help="input CSV file(s)")
    parser.add_argument("--output", required=True, help="image path (.png, .svg or .pdf)")
    args = parser.parse_args(argv)
    if not min_inputs <= len(args.input) <= max_inputs:
        wanted = str(min_inputs) if min_inputs == max_inputs else f"{min_inputs} to {max_inputs}"
        print(f"expected {wanted} input file(s), got {len(args.input)}", file=sys.stderr)
        return 1
    try:
        fig = build(args.input)
    except (SchemaError, OSError) as exc:
        print(str(exc), file=sys.stderr)
        return 1
    try:
        save(fig, args.output)
    finally:
        plt.close(fig)
    return 0
