"""Trajectory and table serialization.

CSV files carry full-precision decimal floats (repr round-trip, so
read-back is bit-exact), UTF-8, LF line endings.  Long trajectories
are decimated to at most 10^4 rows by uniform-in-time thinning that
always keeps the first and last record.  Each CSV gets a JSON sidecar
at <path>.meta.json recording the resolved config, constants table,
build id, and termination reason.
"""

from __future__ import annotations

import json
import platform
from dataclasses import fields
from typing import Any, Iterable, Sequence

from . import __version__
from .constants import CONST
from .integrator import Trajectory, TrajectoryRecord

__all__ = [
    "TRAJECTORY_HEADER",
    "decimate",
    "write_trajectory_csv",
    "read_trajectory_csv",
    "write_table_csv",
    "write_sidecar",
    "sidecar_path",
    "build_id",
    "trajectory_summary",
]

TRAJECTORY_HEADER = "t_s,T_K,B_T,eta,N1,N2,Vbar_m3,n0_m-3,rho,Gamma_sc_s-1,beta_fwd_m3s-1,chi_inst"

_FIELDS = [f.name for f in fields(TrajectoryRecord)]
MAX_ROWS = 10_000


def decimate(records: Sequence[TrajectoryRecord], max_rows: int = MAX_ROWS) -> list[TrajectoryRecord]:
    """Thin to <= max_rows keeping endpoints, nearest record per uniform time."""
    if len(records) <= max_rows:
        return list(records)
    t0, t1 = records[0].t, records[-1].t
    keep: list[int] = []
    j = 0
    for k in range(max_rows):
        target = t0 + (t1 - t0) * k / (max_rows - 1)
        while j + 1 < len(records) and abs(records[j + 1].t - target) <= abs(records[j].t - target):
            j += 1
        if not keep or keep[-1] != j:
            keep.append(j)
    if keep[-1] != len(records) - 1:
        keep.append(len(records) - 1)
    return [records[i] for i in keep]


def write_trajectory_csv(records: Iterable[TrajectoryRecord], path: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(TRAJECTORY_HEADER + "\n")
            for r in records:
                fh.write(",".join(repr(getattr(r, name)) for name in _FIELDS) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write trajectory CSV {path}: {exc}") from exc


def read_trajectory_csv(path: str) -> list[TrajectoryRecord]:
    with open(path, encoding="utf-8", newline="") as fh:
        header = fh.readline().rstrip("\n")
        if header != TRAJECTORY_HEADER:
            raise ValueError(f"{path}: unexpected header {header!r}")
        out = []
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            values = [float(tok) for tok in line.split(",")]
            if len(values) != len(_FIELDS):
                raise ValueError(f"{path}: row with {len(values)} fields, expected {len(_FIELDS)}")
            out.append(TrajectoryRecord(**dict(zip(_FIELDS, values))))
    return out


def write_table_csv(path: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(",".join(header) + "\n")
            for row in rows:
                fh.write(",".join(repr(v) if isinstance(v, float) else str(v) for v in row) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write CSV {path}: {exc}") from exc


def build_id() -> str:
    return f"demagcool {__version__} / python {platform.python_version()}"


def sidecar_path(csv_path: str) -> str:
    return csv_path + ".meta.json"


def write_sidecar(
    csv_path: str,
    config_text: str | None,
    termination: str | None,
    extra: dict[str, Any] | None = None,
    truncated: bool = False,
) -> str:
    """Metadata next to a CSV; returns the sidecar path."""
    payload: dict[str, Any] = {
        "build": build_id(),
        "constants": {
            "hbar_J_s": CONST.hbar,
            "k_B_J_K": CONST.k_B,
            "mu_B_J_T": CONST.mu_B,
            "mu_0_T_m_A": CONST.mu_0,
        },
    }
    if config_text is not None:
        payload["config"] = json.loads(config_text)
    if termination is not None:
        payload["termination"] = termination
    payload["truncated"] = bool(truncated)
    if extra:
        payload.update(extra)
    path = sidecar_path(csv_path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2, ensure_ascii=False)
        fh.write("\n")
    return path


def trajectory_summary(traj: Trajectory) -> dict[str, Any]:
    first, last = traj.records[0], traj.records[-1]
    rho_peak = max(r.rho for r in traj.records)
    return {
        "t_end_s": last.t,
        "T_final_K": last.T,
        "B_final_T": last.B,
        "N_final": last.N1 + last.N2,
        "rho_initial": first.rho,
        "rho_final": last.rho,
        "rho_peak": rho_peak,
        "steps_accepted": traj.n_accepted,
        "steps_rejected": traj.n_rejected,
        "population_clamps": traj.clamp_events,
    }
