"""Run configuration: strict JSON with explicit unit suffixes.

Every physical quantity is a string "<value> <unit>" ("200 uK",
"10 mG"); a bare number where a unit is expected is an error, as is an
unknown key anywhere.  Validation reports every problem at once, each
with its key path and line number, rather than stopping at the first.

Minimal baseline config::

    {
      "trap": {"mean_frequency": "500 Hz"},
      "initial": {"N1": 5e6, "T": "200 uK"}
    }

Everything else (chromium-52 species, losses, pump window, controller
and integrator settings) has documented defaults; `schema_json` emits
the full key table.  `render_config` writes canonical SI units and
`parse_config(render_config(c)) == c` holds exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any, Callable

from .collisions import Heaviside, SymmetryFunction
from .constants import ATOMIC_MASS_KG
from .control import ControllerConfig
from .core import (
    GasState,
    HarmonicTrap,
    LossParams,
    PowerLawTrap,
    PumpParams,
    SpeciesModel,
)
from .integrator import IntegratorConfig
from .kinetics import ModelParams

__all__ = [
    "ConfigIssue",
    "ConfigError",
    "RunConfig",
    "parse_config",
    "load_config",
    "render_config",
    "schema_json",
]

_TWO_PI = 2.0 * math.pi

# conversion factor to the canonical SI unit (first entry renders)
_UNITS: dict[str, dict[str, float]] = {
    "temperature": {"K": 1.0, "mK": 1e-3, "uK": 1e-6, "µK": 1e-6, "nK": 1e-9},
    "time": {"s": 1.0, "ms": 1e-3, "us": 1e-6, "µs": 1e-6, "min": 60.0},
    "rate": {"1/s": 1.0, "/s": 1.0},
    "field": {"T": 1.0, "mT": 1e-3, "uT": 1e-6, "µT": 1e-6, "G": 1e-4, "mG": 1e-7},
    "length": {"m": 1.0, "mm": 1e-3, "um": 1e-6, "µm": 1e-6, "nm": 1e-9},
    "mass": {"kg": 1.0, "u": ATOMIC_MASS_KG},
    "angular_frequency": {"rad/s": 1.0, "Hz": _TWO_PI, "kHz": _TWO_PI * 1e3},
    "volume": {"m^3": 1.0},
    "three_body": {"m^6/s": 1.0},
}


@dataclass(frozen=True)
class ConfigIssue:
    path: str
    line: int
    message: str

    def __str__(self) -> str:
        return f"{self.path} (line {self.line}): {self.message}"


class ConfigError(ValueError):
    def __init__(self, issues: list[ConfigIssue]):
        self.issues = sorted(issues, key=lambda i: (i.line, i.path))
        super().__init__("\n".join(str(i) for i in self.issues))


@dataclass(frozen=True)
class RunConfig:
    label: str
    output: str
    initial: GasState
    params: ModelParams
    controller: ControllerConfig
    integrator: IntegratorConfig

    @property
    def species(self) -> SpeciesModel:
        return self.params.species

    @property
    def trap(self):
        return self.params.trap

    @property
    def loss(self) -> LossParams:
        return self.params.loss

    @property
    def pump(self) -> PumpParams:
        return self.params.pump

    @property
    def xsec(self):
        return self.params.cross_section


# --- positional JSON reader -------------------------------------------------
# stdlib json cannot report which line a key sits on, and the error
# contract requires it, so the reader is written out here.  Standard
# JSON only; no extensions.


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.n = len(text)
        self.i = 0
        self.line = 1
        self.positions: dict[tuple[str, ...], int] = {}
        self.issues: list[ConfigIssue] = []

    def fail(self, message: str) -> None:
        raise ConfigError([ConfigIssue("$", self.line, message)])

    def skip_ws(self) -> None:
        while self.i < self.n and self.text[self.i] in " \t\r\n":
            if self.text[self.i] == "\n":
                self.line += 1
            self.i += 1

    def peek(self) -> str:
        return self.text[self.i] if self.i < self.n else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            self.fail(f"expected {ch!r}, found {self.peek()!r}")
        self.i += 1

    def parse(self) -> Any:
        self.skip_ws()
        if self.i >= self.n:
            return {}
        value = self.value(())
        self.skip_ws()
        if self.i < self.n:
            self.fail("trailing data after the top-level value")
        return value

    def value(self, path: tuple[str, ...]) -> Any:
        c = self.peek()
        if c == "{":
            return self.object(path)
        if c == "[":
            return self.array(path)
        if c == '"':
            return self.string()
        if c == "t" and self.text.startswith("true", self.i):
            self.i += 4
            return True
        if c == "f" and self.text.startswith("false", self.i):
            self.i += 5
            return False
        if c == "n" and self.text.startswith("null", self.i):
            self.i += 4
            return None
        if c == "-" or c.isdigit():
            return self.number()
        self.fail(f"unexpected character {c!r}")

    def object(self, path: tuple[str, ...]) -> dict:
        self.expect("{")
        out: dict[str, Any] = {}
        self.skip_ws()
        if self.peek() == "}":
            self.i += 1
            return out
        while True:
            self.skip_ws()
            key_line = self.line
            if self.peek() != '"':
                self.fail("expected a string key")
            key = self.string()
            child = path + (key,)
            if key in out:
                self.issues.append(
                    ConfigIssue(".".join(child), key_line, "duplicate key")
                )
            self.positions[child] = key_line
            self.skip_ws()
            self.expect(":")
            self.skip_ws()
            out[key] = self.value(child)
            self.skip_ws()
            if self.peek() == ",":
                self.i += 1
                continue
            self.expect("}")
            return out

    def array(self, path: tuple[str, ...]) -> list:
        self.expect("[")
        out: list[Any] = []
        self.skip_ws()
        if self.peek() == "]":
            self.i += 1
            return out
        while True:
            self.skip_ws()
            out.append(self.value(path + (str(len(out)),)))
            self.skip_ws()
            if self.peek() == ",":
                self.i += 1
                continue
            self.expect("]")
            return out

    _ESCAPES = {'"': '"', "\\": "\\", "/": "/", "b": "\b", "f": "\f", "n": "\n", "r": "\r", "t": "\t"}

    def string(self) -> str:
        self.expect('"')
        parts: list[str] = []
        while True:
            if self.i >= self.n:
                self.fail("unterminated string")
            c = self.text[self.i]
            self.i += 1
            if c == '"':
                return "".join(parts)
            if c == "\n":
                self.fail("newline inside string")
            if c == "\\":
                e = self.text[self.i : self.i + 1]
                self.i += 1
                if e in self._ESCAPES:
                    parts.append(self._ESCAPES[e])
                elif e == "u":
                    hex4 = self.text[self.i : self.i + 4]
                    self.i += 4
                    try:
                        parts.append(chr(int(hex4, 16)))
                    except ValueError:
                        self.fail(f"bad unicode escape \\u{hex4}")
                else:
                    self.fail(f"bad escape \\{e}")
            else:
                parts.append(c)

    def number(self) -> float:
        start = self.i
        if self.peek() == "-":
            self.i += 1
        while self.peek().isdigit():
            self.i += 1
        is_int = True
        if self.peek() == ".":
            is_int = False
            self.i += 1
            while self.peek().isdigit():
                self.i += 1
        if self.peek() in "eE":
            is_int = False
            self.i += 1
            if self.peek() in "+-":
                self.i += 1
            while self.peek().isdigit():
                self.i += 1
        raw = self.text[start : self.i]
        try:
            return int(raw) if is_int else float(raw)
        except ValueError:
            self.fail(f"bad number {raw!r}")


# --- schema ------------------------------------------------------------------


@dataclass(frozen=True)
class _Key:
    path: tuple[str, ...]
    kind: str  # "quantity:<dim>" | "number" | "string" | "enum:<a|b>" | "numbers3"
    required: bool = False
    default: Any = None
    when: tuple[str, ...] | None = None  # (sibling key, value) gating this key
    check: Callable[[Any], str | None] | None = None
    help: str = ""


def _positive(v: float) -> str | None:
    return None if v > 0 else "must be positive"


def _non_negative(v: float) -> str | None:
    return None if v >= 0 else "must be non-negative"


def _unit_fraction(v: float) -> str | None:
    return None if 0.0 <= v < 1.0 else "must lie in [0, 1)"


def _open_fraction(v: float) -> str | None:
    return None if 0.0 < v < 1.0 else "must lie in (0, 1)"


def _spin(v: float) -> str | None:
    if v > 0 and math.isclose(v * 2.0, round(v * 2.0)):
        return None
    return "must be a positive multiple of 1/2"


_SCHEMA: tuple[_Key, ...] = (
    _Key(("label",), "string", default="run", help="run label echoed in outputs"),
    _Key(("output",), "string", default="trajectory.csv", help="trajectory CSV path"),
    _Key(("species", "mass"), "quantity:mass", default=51.9405 * ATOMIC_MASS_KG,
         check=_positive, help="atomic mass"),
    _Key(("species", "spin_S"), "number", default=3.0, check=_spin,
         help="electronic spin quantum number S"),
    _Key(("species", "pump_wavelength"), "quantity:length", default=427.60e-9,
         check=_positive, help="optical pumping wavelength"),
    _Key(("species", "kappa"), "number", default=0.25, check=_unit_fraction,
         help="branching probability back into state 2 per pump cycle"),
    _Key(("trap", "kind"), "enum:harmonic|power_law", default="harmonic",
         help="trap potential family"),
    _Key(("trap", "mean_frequency"), "quantity:angular_frequency", required=True,
         when=("kind", "harmonic"), check=_positive,
         help="mean trap frequency (Hz converts to rad/s)"),
    _Key(("trap", "exponents"), "numbers3", required=True, when=("kind", "power_law"),
         help="power-law exponents n1, n2, n3 (each >= 1)"),
    _Key(("trap", "vbar_ref"), "quantity:volume", required=True,
         when=("kind", "power_law"), check=_positive,
         help="mean volume at the reference temperature"),
    _Key(("trap", "t_ref"), "quantity:temperature", required=True,
         when=("kind", "power_law"), check=_positive, help="reference temperature"),
    _Key(("initial", "N1"), "number", required=True, check=_non_negative,
         help="initial dark-state atom number"),
    _Key(("initial", "N2"), "number", default=0.0, check=_non_negative,
         help="initial excited-state atom number"),
    _Key(("initial", "T"), "quantity:temperature", required=True, check=_positive,
         help="initial temperature"),
    _Key(("loss", "tau_bg"), "quantity:time", default=200.0, check=_positive,
         help="background-gas 1/e lifetime"),
    _Key(("loss", "L_3b"), "quantity:three_body", default=1e-41, check=_non_negative,
         help="three-body loss rate constant"),
    _Key(("pump", "p"), "number", default=1e-3, check=_unit_fraction,
         help="polarisation impurity"),
    _Key(("pump", "target_ratio"), "number", default=0.02, check=_open_fraction,
         help="servo target for N2/N1"),
    _Key(("pump", "gamma_min"), "quantity:rate", default=30.0, check=_non_negative,
         help="lower pump scattering-rate clamp"),
    _Key(("pump", "gamma_max"), "quantity:rate", default=2000.0, check=_non_negative,
         help="upper pump scattering-rate clamp"),
    _Key(("xsec", "model"), "enum:heaviside|symmetry_table", default="heaviside",
         help="density-of-states factor model"),
    _Key(("xsec", "table"), "string", required=True, when=("model", "symmetry_table"),
         help="two-column file with x, h(x) samples"),
    _Key(("controller", "eta_min"), "number", default=0.2, check=_positive,
         help="lower optimiser bound on eta_B"),
    _Key(("controller", "eta_max"), "number", default=10.0, check=_positive,
         help="upper optimiser bound on eta_B"),
    _Key(("controller", "optimizer_tol"), "number", default=1e-3, check=_open_fraction,
         help="golden-section termination width"),
    _Key(("controller", "objective"), "enum:chi_instantaneous|cooling_rate",
         default="chi_instantaneous", help="per-step field optimisation objective"),
    _Key(("integrator", "rel_tol"), "number", default=1e-8, check=_open_fraction,
         help="relative error tolerance"),
    _Key(("integrator", "abs_tol_atoms"), "number", default=1.0, check=_positive,
         help="absolute tolerance for populations (atoms)"),
    _Key(("integrator", "abs_tol_temperature"), "quantity:temperature", default=1e-9,
         check=_positive, help="absolute tolerance for temperature"),
    _Key(("integrator", "dt_init"), "quantity:time", default=1e-3, check=_positive,
         help="initial step size"),
    _Key(("integrator", "dt_min"), "quantity:time", default=1e-6, check=_positive,
         help="smallest allowed step"),
    _Key(("integrator", "dt_max"), "quantity:time", default=0.1, check=_positive,
         help="largest allowed step"),
    _Key(("integrator", "t_max"), "quantity:time", default=40.0, check=_positive,
         help="integration horizon"),
    _Key(("integrator", "T_floor"), "quantity:temperature", default=1e-9,
         check=_positive, help="terminate when T falls to this value"),
    _Key(("integrator", "N_floor"), "number", default=100.0, check=_non_negative,
         help="terminate when the atom number falls to this value"),
    _Key(("integrator", "stall_window"), "quantity:time", default=1.0, check=_positive,
         help="sustained non-increasing-rho window that ends a run"),
)

_CANON_UNIT = {dim: next(iter(units)) for dim, units in _UNITS.items()}


def _line_of(positions: dict, path: tuple[str, ...]) -> int:
    for depth in range(len(path), 0, -1):
        line = positions.get(path[:depth])
        if line is not None:
            return line
    return 1


def _get(data: dict, path: tuple[str, ...]):
    node: Any = data
    for part in path:
        if not isinstance(node, dict) or part not in node:
            return _MISSING
        node = node[part]
    return node


_MISSING = object()


def _coerce(key: _Key, raw: Any, line: int, issues: list[ConfigIssue]):
    path = ".".join(key.path)
    if key.kind.startswith("quantity:"):
        dim = key.kind.split(":", 1)[1]
        units = _UNITS[dim]
        if isinstance(raw, (int, float)) and not isinstance(raw, bool):
            issues.append(ConfigIssue(path, line, (
                f"missing unit: write a string like \"{raw} {_CANON_UNIT[dim]}\""
            )))
            return _MISSING
        if not isinstance(raw, str):
            issues.append(ConfigIssue(path, line, f"expected a quantity string, got {type(raw).__name__}"))
            return _MISSING
        parts = raw.split()
        if len(parts) != 2:
            issues.append(ConfigIssue(path, line, f"expected \"<value> <unit>\", got {raw!r}"))
            return _MISSING
        num, unit = parts
        try:
            value = float(num)
        except ValueError:
            issues.append(ConfigIssue(path, line, f"bad numeric value {num!r}"))
            return _MISSING
        if unit not in units:
            issues.append(ConfigIssue(path, line, (
                f"unknown unit {unit!r}; expected one of {', '.join(units)}"
            )))
            return _MISSING
        value *= units[unit]
    elif key.kind == "number":
        if isinstance(raw, bool) or not isinstance(raw, (int, float)):
            issues.append(ConfigIssue(path, line, f"expected a number, got {type(raw).__name__}"))
            return _MISSING
        value = float(raw)
    elif key.kind == "string":
        if not isinstance(raw, str):
            issues.append(ConfigIssue(path, line, f"expected a string, got {type(raw).__name__}"))
            return _MISSING
        value = raw
    elif key.kind.startswith("enum:"):
        options = key.kind.split(":", 1)[1].split("|")
        if raw not in options:
            issues.append(ConfigIssue(path, line, f"expected one of {options}, got {raw!r}"))
            return _MISSING
        value = raw
    elif key.kind == "numbers3":
        if (not isinstance(raw, list) or len(raw) != 3
                or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in raw)):
            issues.append(ConfigIssue(path, line, "expected a list of three numbers"))
            return _MISSING
        value = tuple(float(v) for v in raw)
    else:  # pragma: no cover - schema author error
        raise AssertionError(key.kind)

    if key.check is not None and key.kind != "numbers3":
        problem = key.check(value)
        if problem is not None:
            issues.append(ConfigIssue(path, line, problem))
            return _MISSING
    return value


def parse_config(text: str) -> RunConfig:
    """Parse and fully validate; raises ConfigError listing every problem."""
    scanner = _Scanner(text)
    data = scanner.parse()
    issues = list(scanner.issues)
    if not isinstance(data, dict):
        raise ConfigError([ConfigIssue("$", 1, "top level must be an object")])
    positions = scanner.positions

    # variant selectors drive conditional requirements below
    selected: dict[tuple[str, ...], str] = {}
    for key in _SCHEMA:
        if key.kind.startswith("enum:") and key.when is None:
            raw = _get(data, key.path)
            options = key.kind.split(":", 1)[1].split("|")
            if raw is _MISSING or raw not in options:
                selected[key.path] = str(key.default)
            else:
                selected[key.path] = raw

    values: dict[tuple[str, ...], Any] = {}
    active_paths: set[tuple[str, ...]] = set()
    for key in _SCHEMA:
        active = key.when is None or selected.get(key.path[:-1] + (key.when[0],)) == key.when[1]
        raw = _get(data, key.path)
        if not active:
            if raw is not _MISSING:
                gate = key.path[:-1] + (key.when[0],)
                issues.append(ConfigIssue(
                    ".".join(key.path), _line_of(positions, key.path),
                    f"not allowed when {'.'.join(gate)} is "
                    f"{selected.get(gate)!r}",
                ))
            continue
        active_paths.add(key.path)
        if raw is _MISSING:
            if key.required:
                issues.append(ConfigIssue(
                    ".".join(key.path), _line_of(positions, key.path),
                    "required key is missing",
                ))
            else:
                values[key.path] = key.default
            continue
        value = _coerce(key, raw, _line_of(positions, key.path), issues)
        if value is not _MISSING:
            values[key.path] = value

    # unknown keys: anything not claimed by an active or gated schema path
    known = {k.path for k in _SCHEMA}
    sections = {p[:1] for p in known} | {p[:2] for p in known if len(p) > 2}
    for path, line in sorted(positions.items(), key=lambda kv: (kv[1], kv[0])):
        if path in known or path in sections:
            continue
        parent = path[:-1]
        if parent in known:  # element inside a leaf value (e.g. exponents[0])
            continue
        issues.append(ConfigIssue(".".join(path), line, "unknown key"))

    def have(*path: str) -> bool:
        return tuple(path) in values

    # relational checks, reported at the key that breaks the relation
    def relation(at: tuple[str, ...], ok: bool, message: str) -> None:
        if not ok:
            issues.append(ConfigIssue(".".join(at), _line_of(positions, at), message))

    if have("pump", "gamma_min") and have("pump", "gamma_max"):
        relation(("pump", "gamma_max"),
                 values[("pump", "gamma_min")] <= values[("pump", "gamma_max")],
                 "gamma_max must be >= gamma_min")
    if have("controller", "eta_min") and have("controller", "eta_max"):
        relation(("controller", "eta_max"),
                 values[("controller", "eta_min")] < values[("controller", "eta_max")],
                 "eta_max must be > eta_min")
    if have("integrator", "dt_min") and have("integrator", "dt_max"):
        relation(("integrator", "dt_max"),
                 values[("integrator", "dt_min")] <= values[("integrator", "dt_max")],
                 "dt_max must be >= dt_min")
    if have("integrator", "dt_min") and have("integrator", "dt_max") and have("integrator", "dt_init"):
        relation(("integrator", "dt_init"),
                 values[("integrator", "dt_min")] <= values[("integrator", "dt_init")]
                 <= values[("integrator", "dt_max")],
                 "dt_init must lie within [dt_min, dt_max]")
    if have("initial", "N1") and have("initial", "N2"):
        relation(("initial", "N1"),
                 values[("initial", "N1")] + values[("initial", "N2")] > 0,
                 "N1 + N2 must be positive")
    if have("trap", "exponents"):
        exps = values[("trap", "exponents")]
        if any(n < 1 for n in exps):
            issues.append(ConfigIssue(
                "trap.exponents", _line_of(positions, ("trap", "exponents")),
                "exponents must each be >= 1",
            ))
            values.pop(("trap", "exponents"))

    if issues:
        raise ConfigError(issues)

    def v(*path: str):
        return values[tuple(path)]

    species = SpeciesModel(
        mass=v("species", "mass"),
        spin_S=v("species", "spin_S"),
        pump_wavelength=v("species", "pump_wavelength"),
        kappa=v("species", "kappa"),
    )
    if selected[("trap", "kind")] == "harmonic":
        trap = HarmonicTrap(mean_angular_frequency=v("trap", "mean_frequency"))
    else:
        trap = PowerLawTrap(
            exponents=v("trap", "exponents"),
            vbar_ref=v("trap", "vbar_ref"),
            t_ref=v("trap", "t_ref"),
        )
    if selected[("xsec", "model")] == "heaviside":
        xsec = Heaviside()
    else:
        try:
            xsec = SymmetryFunction.from_table(v("xsec", "table"))
        except (OSError, ValueError) as exc:
            raise ConfigError([ConfigIssue(
                "xsec.table", _line_of(positions, ("xsec", "table")), str(exc)
            )]) from exc
    params = ModelParams(
        species=species,
        trap=trap,
        loss=LossParams(tau_bg=v("loss", "tau_bg"), L_3b=v("loss", "L_3b")),
        pump=PumpParams(
            p=v("pump", "p"),
            target_ratio=v("pump", "target_ratio"),
            gamma_min=v("pump", "gamma_min"),
            gamma_max=v("pump", "gamma_max"),
        ),
        cross_section=xsec,
    )
    controller = ControllerConfig(
        eta_min=v("controller", "eta_min"),
        eta_max=v("controller", "eta_max"),
        optimizer_tol=v("controller", "optimizer_tol"),
        objective=v("controller", "objective"),
    )
    integrator = IntegratorConfig(
        rel_tol=v("integrator", "rel_tol"),
        abs_tol_atoms=v("integrator", "abs_tol_atoms"),
        abs_tol_temperature=v("integrator", "abs_tol_temperature"),
        dt_init=v("integrator", "dt_init"),
        dt_min=v("integrator", "dt_min"),
        dt_max=v("integrator", "dt_max"),
        t_max=v("integrator", "t_max"),
        T_floor=v("integrator", "T_floor"),
        N_floor=v("integrator", "N_floor"),
        stall_window=v("integrator", "stall_window"),
    )
    try:
        initial = GasState(N1=v("initial", "N1"), N2=v("initial", "N2"), T=v("initial", "T"))
    except ValueError as exc:
        raise ConfigError([ConfigIssue("initial", _line_of(positions, ("initial",)), str(exc))]) from exc

    return RunConfig(
        label=v("label"),
        output=v("output"),
        initial=initial,
        params=params,
        controller=controller,
        integrator=integrator,
    )


def load_config(path: str) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def _q(value: float, dim: str) -> str:
    return f"{value!r} {_CANON_UNIT[dim]}"


def render_config(config: RunConfig) -> str:
    """Canonical-SI text form; parse_config inverts it exactly."""
    trap = config.trap
    if isinstance(trap, HarmonicTrap):
        trap_obj: dict[str, Any] = {
            "kind": "harmonic",
            "mean_frequency": _q(trap.mean_angular_frequency, "angular_frequency"),
        }
    else:
        trap_obj = {
            "kind": "power_law",
            "exponents": list(trap.exponents),
            "vbar_ref": _q(trap.vbar_ref, "volume"),
            "t_ref": _q(trap.t_ref, "temperature"),
        }
    xsec = config.xsec
    if isinstance(xsec, Heaviside):
        xsec_obj: dict[str, Any] = {"model": "heaviside"}
    else:
        xsec_obj = {"model": "symmetry_table", "table": xsec.table_path}
    obj = {
        "label": config.label,
        "output": config.output,
        "species": {
            "mass": _q(config.species.mass, "mass"),
            "spin_S": config.species.spin_S,
            "pump_wavelength": _q(config.species.pump_wavelength, "length"),
            "kappa": config.species.kappa,
        },
        "trap": trap_obj,
        "initial": {
            "N1": config.initial.N1,
            "N2": config.initial.N2,
            "T": _q(config.initial.T, "temperature"),
        },
        "loss": {
            "tau_bg": _q(config.loss.tau_bg, "time"),
            "L_3b": _q(config.loss.L_3b, "three_body"),
        },
        "pump": {
            "p": config.pump.p,
            "target_ratio": config.pump.target_ratio,
            "gamma_min": _q(config.pump.gamma_min, "rate"),
            "gamma_max": _q(config.pump.gamma_max, "rate"),
        },
        "xsec": xsec_obj,
        "controller": {
            "eta_min": config.controller.eta_min,
            "eta_max": config.controller.eta_max,
            "optimizer_tol": config.controller.optimizer_tol,
            "objective": config.controller.objective,
        },
        "integrator": {
            "rel_tol": config.integrator.rel_tol,
            "abs_tol_atoms": config.integrator.abs_tol_atoms,
            "abs_tol_temperature": _q(config.integrator.abs_tol_temperature, "temperature"),
            "dt_init": _q(config.integrator.dt_init, "time"),
            "dt_min": _q(config.integrator.dt_min, "time"),
            "dt_max": _q(config.integrator.dt_max, "time"),
            "t_max": _q(config.integrator.t_max, "time"),
            "T_floor": _q(config.integrator.T_floor, "temperature"),
            "N_floor": config.integrator.N_floor,
            "stall_window": _q(config.integrator.stall_window, "time"),
        },
    }
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def schema_json() -> str:
    """Key table with kinds, units, defaults; the generated schema file."""
    rows = []
    for key in _SCHEMA:
        row: dict[str, Any] = {
            "key": ".".join(key.path),
            "kind": key.kind.split(":", 1)[0],
            "required": key.required,
            "description": key.help,
        }
        if key.kind.startswith("quantity:"):
            dim = key.kind.split(":", 1)[1]
            row["units"] = list(_UNITS[dim])
        if key.kind.startswith("enum:"):
            row["choices"] = key.kind.split(":", 1)[1].split("|")
        if key.when is not None:
            row["only_when"] = f"{key.path[0]}.{key.when[0]} = {key.when[1]}"
        if not key.required:
            if key.kind.startswith("quantity:"):
                row["default"] = _q(key.default, key.kind.split(":", 1)[1])
            else:
                row["default"] = key.default
        rows.append(row)
    return json.dumps(rows, indent=2, ensure_ascii=False) + "\n"
