"""Phase-space density against atom number, log-log, for up to three runs.

Cooling moves a curve up and to the left; its slope is the efficiency
chi, decades of phase-space density gained per e-fold of atoms lost.
"""

from __future__ import annotations

import sys

import matplotlib.pyplot as plt

from .common import LINESTYLES, load_sidecar, load_trajectory, render_main, run_label, warn_if_empty


def build(paths: list[str]) -> plt.Figure:
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    drew_any = False
    for i, path in enumerate(paths):
        data = load_trajectory(path)
        if warn_if_empty(path, data):
            continue
        ax.loglog(
            data["N1"] + data["N2"],
            data["rho"],
            LINESTYLES[i % len(LINESTYLES)],
            color=f"C{i}",
            label=run_label(path, load_sidecar(path)),
        )
        drew_any = True
    ax.set_xlabel("N")
    ax.set_ylabel("phase-space density")
    if drew_any:
        ax.legend(loc="lower left", fontsize=9)
    fig.tight_layout()
    return fig


def main(argv: list[str] | None = None) -> int:
    return render_main(build, argv, 1, 3, __doc__)


if __name__ == "__main__":
    sys.exit(main())
