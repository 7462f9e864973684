"""Atom number over time for up to three runs, with a peak-density inset."""

from __future__ import annotations

import sys

import matplotlib.pyplot as plt

from .common import LINESTYLES, load_sidecar, load_trajectory, render_main, run_label, warn_if_empty


def build(paths: list[str]) -> plt.Figure:
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    fig.subplots_adjust(left=0.12, right=0.95, top=0.95, bottom=0.12)
    inset = fig.add_axes((0.22, 0.24, 0.3, 0.32))
    drew_any = False
    for i, path in enumerate(paths):
        data = load_trajectory(path)
        if warn_if_empty(path, data):
            continue
        style = LINESTYLES[i % len(LINESTYLES)]
        color = f"C{i}"
        label = run_label(path, load_sidecar(path))
        ax.semilogy(data["t_s"], data["N1"] + data["N2"], style, color=color, label=label)
        inset.semilogy(data["t_s"], data["n0_m-3"], style, color=color)
        drew_any = True
    ax.set_xlabel("t (s)")
    ax.set_ylabel("N")
    inset.set_xlabel("t (s)", fontsize=8)
    inset.set_ylabel("n0 (m^-3)", fontsize=8)
    inset.tick_params(labelsize=8)
    if drew_any:
        ax.legend(loc="upper right", fontsize=9)
    return fig


def main(argv: list[str] | None = None) -> int:
    return render_main(build, argv, 1, 3, __doc__)


if __name__ == "__main__":
    sys.exit(main())
