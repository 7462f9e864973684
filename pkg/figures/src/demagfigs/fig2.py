"""Equilibrium temperature after a sudden field quench, one curve per input file."""

from __future__ import annotations

import sys

import matplotlib.pyplot as plt

from .common import LINESTYLES, load_equilibrium, render_main, run_label, warn_if_empty


def build(paths: list[str]) -> plt.Figure:
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    for i, path in enumerate(paths):
        data = load_equilibrium(path)
        if warn_if_empty(path, data):
            continue
        nonzero = data["B_T"] > 0.0
        ax.semilogx(
            data["B_T"][nonzero] / 1e-7,
            data["ratio"][nonzero],
            LINESTYLES[i % len(LINESTYLES)],
            label=run_label(path, None),
        )
    ax.set_xlabel("B (mG)")
    ax.set_ylabel("T_eq / T0")
    ax.set_ylim(top=1.02)
    if len(paths) > 1:
        ax.legend()
    fig.tight_layout()
    return fig


def main(argv: list[str] | None = None) -> int:
    return render_main(build, argv, 1, 8, __doc__)


if __name__ == "__main__":
    sys.exit(main())
