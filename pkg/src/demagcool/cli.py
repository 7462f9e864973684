"""Command line front end.

Subcommands:

    simulate           closed-loop cooling run from a JSON config
    equilibrium-curve  T_eq/T0 versus field for a sudden quench
    rate-profile       analytic cooling rate versus eta_B
    optimal-eta        eta_B maximising the analytic cooling rate
    sweep              cartesian parameter sweep over a base config
    schema             machine-readable config schema

Internally everything is SI; at this boundary temperatures are in uK
and magnetic fields in gauss.  Exit codes: 0 success, 1 bad config or
arguments, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import sys

__all__ = ["main"]

_UK = 1e-6
_GAUSS = 1e-4


def _parse_eta_range(text: str) -> list[float]:
    """start:step:stop, inclusive of both ends (up to rounding)."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"expected start:step:stop, got {text!r}")
    try:
        start, step, stop = (float(p) for p in parts)
    except ValueError:
        raise ValueError(f"expected three numbers in start:step:stop, got {text!r}") from None
    if step <= 0:
        raise ValueError(f"step must be positive, got {step}")
    if stop < start:
        raise ValueError(f"stop {stop} lies below start {start}")
    if start < 0:
        raise ValueError(f"eta cannot be negative, got start {start}")
    n = int(round((stop - start) / step))
    grid = [start + k * step for k in range(n + 1)]
    while grid and grid[-1] > stop + 1e-9 * max(1.0, abs(stop)):
        grid.pop()
    return grid


def _cmd_simulate(args: argparse.Namespace) -> int:
    from .collisions import cooling_rate_estimate, optimal_eta
    from .config import ConfigError, load_config, render_config
    from .core import eta_B, pump_temperature
    from .integrator import IntegrationError, simulate
    from .output import decimate, sidecar_path, trajectory_summary, write_sidecar, write_trajectory_csv

    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"config error in {args.config}:\n{exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"cannot read {args.config}: {exc}", file=sys.stderr)
        return 1

    csv_path = args.output or cfg.output
    config_text = render_config(cfg)
    species = cfg.species
    eta_opt = optimal_eta(species.spin_S)
    reference = {
        "eta_opt": eta_opt,
        "initial_cooling_rate_K_s": cooling_rate_estimate(
            cfg.initial.T, cfg.initial.N, cfg.trap, eta_opt, species
        ),
        "pump_energy_temperature_K": pump_temperature(species),
    }

    try:
        traj = simulate(cfg.initial, cfg.params, cfg.controller, cfg.integrator)
    except IntegrationError as exc:
        write_trajectory_csv(decimate(exc.trajectory.records), csv_path)
        write_sidecar(
            csv_path, config_text, "error", truncated=True,
            extra={"label": cfg.label, "message": str(exc), "analytic_reference": reference},
        )
        print(f"integration failed: {exc}", file=sys.stderr)
        print(f"partial trajectory flushed to {csv_path}", file=sys.stderr)
        return 2

    write_trajectory_csv(decimate(traj.records), csv_path)
    write_sidecar(
        csv_path, config_text, traj.termination,
        extra={
            "label": cfg.label,
            "summary": trajectory_summary(traj),
            "analytic_reference": reference,
        },
    )
    last = traj.final
    gain = traj.records[-1].rho / traj.records[0].rho if traj.records[0].rho > 0 else float("nan")
    print(f"run {cfg.label!r}: {traj.termination} at t = {last.t:.3f} s")
    print(
        f"  T = {last.T / _UK:.4g} uK   B = {last.B / (_GAUSS * 1e-3):.4g} mG   "
        f"N = {last.N1 + last.N2:.4g}   eta = {eta_B(last.B, last.T):.3f}"
    )
    print(f"  rho = {last.rho:.4g} (gain {gain:.3g})")
    print(f"  wrote {csv_path} and {sidecar_path(csv_path)}")
    return 0


def _cmd_equilibrium_curve(args: argparse.Namespace) -> int:
    import math

    from .equilibrium import equilibrium_curve
    from .output import write_table_csv

    if args.t0 <= 0 or args.b_min <= 0 or args.b_max < args.b_min or args.points < 2:
        print("need t0 > 0, 0 < b-min <= b-max, points >= 2", file=sys.stderr)
        return 1
    lo, hi = math.log(args.b_min * _GAUSS), math.log(args.b_max * _GAUSS)
    grid = [0.0] + [
        math.exp(lo + (hi - lo) * k / (args.points - 1)) for k in range(args.points)
    ]
    try:
        points = equilibrium_curve(args.t0 * _UK, args.spin, args.alpha, grid)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    write_table_csv(
        args.output,
        ["B_T", "eta_B0", "T_eq_K", "ratio", "residual"],
        ([p.B, p.eta_B0, p.T_eq, p.ratio, p.residual] for p in points),
    )
    print(f"wrote {args.output} ({len(points)} points, S = {args.spin}, T0 = {args.t0} uK)")
    return 0


def _cmd_rate_profile(args: argparse.Namespace) -> int:
    import dataclasses
    import math

    from .collisions import cooling_rate_estimate, optimal_eta
    from .core import HarmonicTrap, chromium_52
    from .output import write_table_csv

    try:
        grid = _parse_eta_range(args.eta)
        eta_opt = optimal_eta(args.spin)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    if args.t <= 0 or args.n <= 0 or args.omega <= 0:
        print("need t > 0, n > 0, omega > 0", file=sys.stderr)
        return 1
    if not grid:
        print(f"empty eta grid from {args.eta!r}", file=sys.stderr)
        return 1

    species = chromium_52()
    if args.spin != species.spin_S:
        species = dataclasses.replace(species, spin_S=args.spin)
    trap = HarmonicTrap(2.0 * math.pi * args.omega)
    T = args.t * _UK

    marked = min(range(len(grid)), key=lambda i: abs(grid[i] - eta_opt))
    rows = (
        [eta, cooling_rate_estimate(T, args.n, trap, eta, species), int(i == marked)]
        for i, eta in enumerate(grid)
    )
    write_table_csv(args.output, ["eta", "Tdot_K_s", "is_optimum"], rows)
    print(f"wrote {args.output} ({len(grid)} points; optimum near eta = {eta_opt:.5f})")
    return 0


def _cmd_optimal_eta(args: argparse.Namespace) -> int:
    from .collisions import optimal_eta

    try:
        value = optimal_eta(args.spin, args.tol)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    print(f"{value:.6f}")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    from .sweep import SweepSpec, parse_axis, run_sweep

    try:
        with open(args.config, encoding="utf-8") as fh:
            base_text = fh.read()
    except OSError as exc:
        print(f"cannot read {args.config}: {exc}", file=sys.stderr)
        return 1
    try:
        axes = tuple(parse_axis(a) for a in args.axis)
        spec = SweepSpec(base_text=base_text, axes=axes, parallelism=args.parallelism)
        index = run_sweep(spec, args.out_dir)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    worst = 0
    for entry in index:
        worst = max(worst, entry["status"])
        note = entry.get("termination") or entry.get("message", "")
        print(f"  {entry['run']}: status {entry['status']} {note}")
    print(f"wrote {len(index)} runs and sweep_index.json under {args.out_dir}")
    return worst


def _cmd_schema(args: argparse.Namespace) -> int:
    from .config import schema_json

    text = schema_json()
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        print(f"wrote {args.output}")
    else:
        print(text, end="" if text.endswith("\n") else "\n")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="demagcool",
        description="Demagnetisation cooling of a trapped dipolar gas.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="closed-loop cooling run from a JSON config")
    p.add_argument("--config", required=True, help="path to JSON run config")
    p.add_argument("--output", default=None, help="trajectory CSV path (overrides config)")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("equilibrium-curve", help="T_eq/T0 versus field for a sudden quench")
    p.add_argument("--spin", type=float, default=3.0, help="spin quantum number S")
    p.add_argument("--t0", type=float, default=200.0, help="initial temperature (uK)")
    p.add_argument("--b-min", type=float, default=1e-3, help="lowest nonzero field (gauss)")
    p.add_argument("--b-max", type=float, default=10.0, help="highest field (gauss)")
    p.add_argument("--points", type=int, default=60, help="log-spaced nonzero field points")
    p.add_argument("--alpha", type=float, default=1.5, help="trap potential exponent sum")
    p.add_argument("--output", default="equilibrium_curve.csv")
    p.set_defaults(func=_cmd_equilibrium_curve)

    p = sub.add_parser("rate-profile", help="analytic cooling rate versus eta_B")
    p.add_argument("--spin", type=float, default=3.0, help="spin quantum number S")
    p.add_argument("--eta", default="0:0.01:5", help="grid as start:step:stop")
    p.add_argument("--t", type=float, default=200.0, help="temperature (uK)")
    p.add_argument("--n", type=float, default=5e6, help="atom number")
    p.add_argument("--omega", type=float, default=500.0, help="mean trap frequency (Hz)")
    p.add_argument("--output", default="rate_profile.csv")
    p.set_defaults(func=_cmd_rate_profile)

    p = sub.add_parser("optimal-eta", help="eta_B maximising the analytic cooling rate")
    p.add_argument("--spin", type=float, required=True, help="spin quantum number S")
    p.add_argument("--tol", type=float, default=1e-6, help="search tolerance")
    p.set_defaults(func=_cmd_optimal_eta)

    p = sub.add_parser("sweep", help="cartesian parameter sweep over a base config")
    p.add_argument("--config", required=True, help="base JSON config")
    p.add_argument(
        "--axis", action="append", required=True, metavar="KEY=V1|V2",
        help="config key path and values, e.g. pump.p=0.001|0.01 (repeatable)",
    )
    p.add_argument("--out-dir", required=True, help="directory for per-run CSVs and the index")
    p.add_argument("--parallelism", type=int, default=1, help="worker processes")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("schema", help="machine-readable config schema")
    p.add_argument("--output", default=None, help="write to file instead of stdout")
    p.set_defaults(func=_cmd_schema)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
