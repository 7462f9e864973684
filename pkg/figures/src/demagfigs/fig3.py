"""Temperature (solid, left axis) and field (dashed, right axis) over one run.

If the trajectory's sidecar carries analytic reference values, two
overlays are added: the initial-slope cooling line (dotted) and the
temperature equivalent of the mean pumping energy (dash-dotted).  An
inset repeats the first 8 s, where both curves fall linearly.
"""

from __future__ import annotations

import sys

import matplotlib.pyplot as plt
import numpy as np

from .common import load_sidecar, load_trajectory, render_main, warn_if_empty


def _draw(ax_T, ax_B, t, T_uK, B_mG, reference) -> None:
    ax_T.plot(t, T_uK, "-", color="C0")
    ax_B.plot(t, B_mG, "--", color="C1")
    if reference and len(t):
        rate = reference.get("initial_cooling_rate_K_s")
        if rate is not None:
            linear = T_uK[0] + rate * 1e6 * t
            ax_T.plot(t[linear > 0.0], linear[linear > 0.0], ":", color="C2")
        pump = reference.get("pump_energy_temperature_K")
        if pump is not None:
            ax_T.axhline(pump * 1e6, linestyle="-.", color="C3", linewidth=1.0)


def build(paths: list[str]) -> plt.Figure:
    data = load_trajectory(paths[0])
    sidecar = load_sidecar(paths[0])
    reference = (sidecar or {}).get("analytic_reference")
    empty = warn_if_empty(paths[0], data)

    t = data["t_s"]
    T_uK = data["T_K"] * 1e6
    B_mG = data["B_T"] / 1e-7

    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    fig.subplots_adjust(left=0.12, right=0.86, top=0.95, bottom=0.12)
    right = ax.twinx()
    _draw(ax, right, t, T_uK, B_mG, reference)
    ax.set_xlabel("t (s)")
    ax.set_ylabel("T (uK)", color="C0")
    right.set_ylabel("B (mG)", color="C1")
    ax.set_yscale("log")
    right.set_yscale("log")

    if not empty:
        inset = fig.add_axes((0.38, 0.52, 0.28, 0.3))
        inset_B = inset.twinx()
        early = t <= 8.0
        _draw(inset, inset_B, t[early], T_uK[early], B_mG[early], reference)
        inset.set_ylim(bottom=0.0)
        inset_B.set_ylim(bottom=0.0)
        inset.set_xlabel("t (s)", fontsize=8)
        inset.tick_params(labelsize=8)
        inset_B.tick_params(labelsize=8)
    return fig


def main(argv: list[str] | None = None) -> int:
    return render_main(build, argv, 1, 1, __doc__)


if __name__ == "__main__":
    sys.exit(main())
