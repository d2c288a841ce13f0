"""Command-line front end: config ingestion, sweep orchestration and
CSV/JSON emission of the design tables, stability reports and grid /
tunneling sweeps.

All flags take SI values (amperes, metres, rad/s); ``--units paper``
switches the inputs to the bench units used in the printed tables
(uA, nm, kHz). Sweep row strings are always in table units
("I_uA:d" and "nu_kHz:N" pairs) regardless of the units switch. Output
is written atomically (write-then-rename), ``--output -`` streams to
stdout. Exit codes: 0 success, 2 validation failure, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass, field

from . import doublewell, magnetics, onedgas, singlewell, stability
from .constants import (
    CONSTANTS_VERSION,
    default_mwnt,
    default_rb87,
    defaults_version,
    species_from_dict,
    wire_from_dict,
)
from .errors import DesignError

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_IO = 3

TWO_PI = 2.0 * math.pi
GAUSS_PER_TESLA = 1e4

COMMANDS = (
    "single",
    "sweep-table1",
    "gas",
    "sweep-table2",
    "stability",
    "double",
    "fig3",
    "grid",
)

# Parameters each command accepts (after normalization to SI).
_COMMAND_PARAMS: dict[str, set[str]] = {
    "single": {"I", "d", "chi", "species"},
    "sweep-table1": {"chi", "rows", "species"},
    "gas": {"omega", "omega_z", "N", "species"},
    "sweep-table2": {"omega_z", "rows", "species"},
    "stability": {"I", "d", "y0", "chi", "T", "x0", "species", "wire"},
    "double": {"I", "x0", "y0", "chi", "species"},
    "fig3": {"x0", "chi", "currents", "ratios", "species"},
    "grid": {"mode", "I", "d", "chi", "x0", "y0", "x_offset", "nx", "ny", "species"},
}

_TABLE2_DEFAULT_ROWS = "460:30,460:50,73.8:30,73.8:50,73.8:100,28.76:30,28.76:50,28.76:100"
_FIG3_DEFAULT_RATIOS = "0.5:0.95:0.025"


@dataclass(frozen=True)
class Violation:
    """One failed precondition, naming the owning module and parameter."""

    module: str
    parameter: str
    message: str

    def __str__(self) -> str:
        return f"{self.module}.{self.parameter}: {self.message}"


@dataclass
class RunConfig:
    """Normalized run configuration; params are SI."""

    command: str
    params: dict = field(default_factory=dict)
    output: str = "-"
    fmt: str = "csv"
    units: str = "si"


def _parse_pair_rows(text: str, what: str) -> list[tuple[float, float]]:
    rows = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        left, sep, right = chunk.partition(":")
        if not sep:
            raise ValueError(f"malformed {what} entry {chunk!r}: expected 'a:b'")
        rows.append((float(left), float(right)))
    if not rows:
        raise ValueError(f"empty {what} list")
    return rows


def _parse_float_list(text: str) -> list[float]:
    if ":" in text:
        start_s, stop_s, step_s = text.split(":")
        start, stop, step = float(start_s), float(stop_s), float(step_s)
        if step <= 0.0:
            raise ValueError("grid step must be positive")
        count = int(round((stop - start) / step)) + 1
        if count < 1:
            raise ValueError("empty grid range")
        return [start + i * step for i in range(count)]
    values = [float(v) for v in text.split(",") if v.strip()]
    if not values:
        raise ValueError("empty list")
    return values


def _normalize_params(command: str, raw: dict, units: str) -> dict:
    """Convert bench units to SI where requested and drop unset values."""
    params = {k: v for k, v in raw.items() if v is not None}
    if units == "paper":
        for key in ("I",):
            if key in params:
                params[key] = params[key] * 1e-6  # uA -> A
        for key in ("x0", "y0"):
            if key in params:
                params[key] = params[key] * 1e-9  # nm -> m
        for key in ("omega", "omega_z"):
            if key in params:
                params[key] = TWO_PI * 1e3 * params[key]  # kHz (nu) -> rad/s
        if "currents" in params:
            params["currents"] = [c * 1e-6 for c in params["currents"]]
    return params


def config_from_namespace(ns: argparse.Namespace) -> RunConfig:
    raw = {
        key: getattr(ns, key.replace("-", "_"), None)
        for key in _COMMAND_PARAMS.get(ns.command, set())
        if key not in ("species", "wire")
    }
    if getattr(ns, "currents", None) is not None:
        raw["currents"] = _parse_float_list(ns.currents)
    if getattr(ns, "ratios", None) is not None:
        raw["ratios"] = _parse_float_list(ns.ratios)
    units = ns.units
    params = _normalize_params(ns.command, raw, units)
    if getattr(ns, "species_json", None):
        with open(ns.species_json, encoding="utf-8") as fh:
            params["species"] = json.load(fh)
    if getattr(ns, "wire_json", None):
        with open(ns.wire_json, encoding="utf-8") as fh:
            params["wire"] = json.load(fh)
    return RunConfig(
        command=ns.command,
        params=params,
        output=ns.output,
        fmt=ns.format,
        units="si",  # params are SI from here on
    )


def config_from_document(doc: dict) -> tuple[RunConfig | None, list[Violation]]:
    """Build a RunConfig from a JSON config document; unknown keys are
    rejected."""
    violations: list[Violation] = []
    if "command" not in doc:
        return None, [Violation("cli", "command", "missing 'command' key")]
    command = doc["command"]
    if command not in COMMANDS:
        return None, [Violation("cli", "command", f"unknown command {command!r}")]
    meta_keys = {"command", "output", "format", "units"}
    allowed = _COMMAND_PARAMS[command] | meta_keys | {"ratios", "currents"}
    unknown = set(doc) - allowed
    for key in sorted(unknown):
        violations.append(Violation("cli", key, "unknown configuration key"))
    if violations:
        return None, violations
    units = doc.get("units", "si")
    if units not in ("si", "paper"):
        return None, [Violation("cli", "units", f"unknown units mode {units!r}")]
    raw = {
        k: v
        for k, v in doc.items()
        if k not in meta_keys and k not in ("species", "wire")
    }
    try:
        if "currents" in raw and isinstance(raw["currents"], str):
            raw["currents"] = _parse_float_list(raw["currents"])
        if "ratios" in raw and isinstance(raw["ratios"], str):
            raw["ratios"] = _parse_float_list(raw["ratios"])
    except ValueError as exc:
        return None, [Violation("cli", "ratios", str(exc))]
    params = _normalize_params(command, raw, units)
    if "species" in doc:
        params["species"] = doc["species"]
    if "wire" in doc:
        params["wire"] = doc["wire"]
    return (
        RunConfig(
            command=command,
            params=params,
            output=doc.get("output", "-"),
            fmt=doc.get("format", "csv"),
            units="si",
        ),
        [],
    )


def _species_of(config: RunConfig):
    doc = config.params.get("species")
    return species_from_dict(doc) if doc else default_rb87()


def _wire_of(config: RunConfig):
    doc = config.params.get("wire")
    return wire_from_dict(doc) if doc else default_mwnt()


def validate(config: RunConfig) -> list[Violation]:
    """Precondition check; empty list iff ``run`` would pass validation."""
    v: list[Violation] = []
    p = config.params
    cmd = config.command

    if cmd not in COMMANDS:
        return [Violation("cli", "command", f"unknown command {cmd!r}")]
    if config.fmt not in ("csv", "json"):
        v.append(Violation("cli", "format", f"unknown format {config.fmt!r}"))
    unknown = set(p) - _COMMAND_PARAMS[cmd]
    for key in sorted(unknown):
        v.append(Violation("cli", key, "unknown parameter for this command"))

    def need(key, module):
        if key not in p:
            v.append(Violation(module, key, "required parameter missing"))
            return False
        return True

    def positive(key, module):
        if need(key, module) and not p[key] > 0.0:
            v.append(Violation(module, key, "must be positive"))
            return False
        return key in p

    def chi_ok(module):
        if need("chi", module) and not 0.0 < p["chi"] < 1.0:
            v.append(
                Violation(
                    module,
                    "chi",
                    f"adiabaticity requires 0 < chi < 1 (omega << omega_L), got {p['chi']}",
                )
            )

    if cmd == "single":
        positive("I", "singlewell")
        positive("d", "singlewell")
        chi_ok("singlewell")
    elif cmd == "sweep-table1":
        chi_ok("singlewell")
        if need("rows", "singlewell"):
            try:
                rows = _parse_pair_rows(p["rows"], "I_uA:d")
                for current_ua, d in rows:
                    if current_ua <= 0.0 or d <= 0.0:
                        v.append(
                            Violation("singlewell", "rows", "I and d must be positive")
                        )
                        break
            except ValueError as exc:
                v.append(Violation("singlewell", "rows", str(exc)))
    elif cmd == "gas":
        positive("omega", "onedgas")
        positive("omega_z", "onedgas")
        if need("N", "onedgas") and p["N"] < 1:
            v.append(Violation("onedgas", "N", "need at least one atom"))
        if "omega" in p and "omega_z" in p and not p["omega_z"] < p["omega"]:
            v.append(Violation("onedgas", "omega_z", "requires omega_z < omega"))
    elif cmd == "sweep-table2":
        positive("omega_z", "onedgas")
        rows_text = p.get("rows", _TABLE2_DEFAULT_ROWS)
        try:
            _parse_pair_rows(rows_text, "nu_kHz:N")
        except ValueError as exc:
            v.append(Violation("onedgas", "rows", str(exc)))
    elif cmd == "stability":
        positive("I", "stability")
        chi_ok("stability")
        if "T" in p and p["T"] < 0.0:
            v.append(Violation("stability", "T", "temperature must be non-negative"))
        if "d" not in p and "y0" not in p:
            v.append(Violation("stability", "d", "need d or y0 to fix the trap"))
        if "d" in p and not p["d"] > 0.0:
            v.append(Violation("stability", "d", "must be positive"))
        if "y0" in p and not p["y0"] > 0.0:
            v.append(Violation("stability", "y0", "must be positive"))
        if "x0" in p and not p["x0"] > 0.0:
            v.append(Violation("stability", "x0", "must be positive"))
    elif cmd == "double":
        positive("I", "doublewell")
        chi_ok("doublewell")
        if positive("x0", "doublewell") and positive("y0", "doublewell"):
            if not p["x0"] > p["y0"]:
                v.append(
                    Violation(
                        "doublewell",
                        "x0",
                        f"bistability requires x0 > y0, got x0 = {p['x0']}, y0 = {p['y0']}",
                    )
                )
    elif cmd == "fig3":
        positive("x0", "doublewell")
        chi_ok("doublewell")
        currents = p.get("currents", [200e-6, 1000e-6])
        if any(c <= 0.0 for c in currents):
            v.append(Violation("doublewell", "currents", "currents must be positive"))
        ratios = p.get("ratios", _parse_float_list(_FIG3_DEFAULT_RATIOS))
        if any(not 0.0 < r < 1.0 for r in ratios):
            v.append(
                Violation("doublewell", "ratios", "y0/x0 ratios must lie in (0, 1)")
            )
    elif cmd == "grid":
        mode = p.get("mode", "single")
        if mode not in ("single", "double"):
            v.append(Violation("magnetics", "mode", f"unknown grid mode {mode!r}"))
        elif mode == "single":
            positive("d", "magnetics")
            chi_ok("magnetics")
        else:
            positive("I", "doublewell")
            chi_ok("doublewell")
            if positive("x0", "doublewell") and positive("y0", "doublewell"):
                if not p["x0"] > p["y0"]:
                    v.append(
                        Violation(
                            "doublewell",
                            "x0",
                            "bistability requires x0 > y0 in double mode",
                        )
                    )
        for key in ("nx", "ny"):
            if key in p and p[key] < 2:
                v.append(Violation("magnetics", key, "grid needs at least 2 points"))

    if "species" in p:
        try:
            species_from_dict(p["species"])
        except ValueError as exc:
            v.append(Violation("constants", "species", str(exc)))
    if "wire" in p:
        try:
            wire_from_dict(p["wire"])
        except ValueError as exc:
            v.append(Violation("constants", "wire", str(exc)))
    return v


def _fmt_value(value) -> str:
    if value is None:
        return "NA"
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    return f"{value:.9g}"


def _trap_row(trap: singlewell.SingleWellTrap) -> list:
    return [
        trap.current * 1e6,
        trap.d,
        trap.chi,
        trap.omega / TWO_PI / 1e3,
        trap.y0 * 1e9,
        trap.l0 * 1e9,
        trap.Bx * GAUSS_PER_TESLA,
        trap.Bz * GAUSS_PER_TESLA,
        trap.loss_rate / trap.omega,
    ]


_TRAP_COLUMNS = [
    "I_uA",
    "d",
    "chi",
    "nu_kHz",
    "y0_nm",
    "l0_nm",
    "Bx_G",
    "Bz_G",
    "loss_per_osc",
]

_GAS_COLUMNS = ["nu_kHz", "a1d_nm", "N", "eta", "ell_um", "regime"]


def _gas_row(profile: onedgas.GasProfile) -> list:
    return [
        profile.omega / TWO_PI / 1e3,
        profile.a1d * 1e9,
        profile.n_atoms,
        profile.eta,
        profile.length * 1e6,
        profile.regime,
    ]


def _build_table(config: RunConfig) -> tuple[list[str], list[list], list[str] | None]:
    """Return (columns, rows, formats); formats None means the default."""
    p = config.params
    species = _species_of(config)
    cmd = config.command

    if cmd == "single":
        trap = singlewell.design_from_current_and_d(p["I"], p["d"], p["chi"], species)
        return _TRAP_COLUMNS, [_trap_row(trap)], None

    if cmd == "sweep-table1":
        rows = []
        for current_ua, d in _parse_pair_rows(p["rows"], "I_uA:d"):
            trap = singlewell.design_from_current_and_d(
                current_ua * 1e-6, d, p["chi"], species, warn_weak=False
            )
            rows.append(_trap_row(trap))
        return _TRAP_COLUMNS, rows, None

    if cmd == "gas":
        profile = onedgas.characterize_gas(
            p["omega"], p["omega_z"], int(p["N"]), species
        )
        return _GAS_COLUMNS, [_gas_row(profile)], None

    if cmd == "sweep-table2":
        rows = []
        for nu_khz, n_atoms in _parse_pair_rows(
            p.get("rows", _TABLE2_DEFAULT_ROWS), "nu_kHz:N"
        ):
            profile = onedgas.characterize_gas(
                TWO_PI * 1e3 * nu_khz, p["omega_z"], int(n_atoms), species
            )
            rows.append(_gas_row(profile))
        return _GAS_COLUMNS, rows, None

    if cmd == "double":
        trap = doublewell.design_double(p["I"], p["x0"], p["y0"], p["chi"], species)
        columns = [
            "I_uA",
            "x0_nm",
            "y0_nm",
            "chi",
            "nu_kHz",
            "nu0_kHz",
            "omega_over_omega0",
            "dx",
            "dy",
            "barrier_hbar_omega",
            "gamma_over_omega",
        ]
        row = [
            trap.current * 1e6,
            trap.x0 * 1e9,
            trap.y0 * 1e9,
            trap.chi,
            trap.omega / TWO_PI / 1e3,
            trap.omega0 / TWO_PI / 1e3,
            trap.omega / trap.omega0,
            trap.dx,
            trap.dy,
            trap.barrier_hbar_omega,
            trap.tunneling_ratio,
        ]
        return columns, [row], None

    if cmd == "fig3":
        currents = p.get("currents", [200e-6, 1000e-6])
        ratios = p.get("ratios", _parse_float_list(_FIG3_DEFAULT_RATIOS))
        chi = p["chi"]
        base_x0 = p["x0"]
        omega0 = doublewell.reference_omega0(currents[0], base_x0, chi, species)
        columns = ["y0_over_x0", "omega_over_omega0", "gamma_over_omega", "current_uA"]
        rows = []
        for index, current in enumerate(currents):
            x0 = (
                base_x0
                if index == 0
                else doublewell.matched_separation(current, omega0, chi, species)
            )
            for row in doublewell.fig3_sweep(current, x0, chi, species, ratios):
                rows.append(
                    [row.ratio, row.omega_over_omega0, row.gamma_over_omega, current * 1e6]
                )
        return columns, rows, None

    if cmd == "grid":
        mode = p.get("mode", "single")
        nx = int(p.get("nx", 201))
        ny = int(p.get("ny", 101))
        if mode == "single":
            d, chi = p["d"], p["chi"]
            x_offset = p.get("x_offset", 0.0)
            xs = _linspace(-x_offset - d, -x_offset + d, nx)
            ys = _linspace(0.05 * d, 2.05 * d, ny)

            def evaluate(x, y):
                return magnetics.dimensionless_single_potential(
                    x, y, d, chi, x_offset
                )

        else:
            trap = doublewell.design_double(
                p["I"], p["x0"], p["y0"], p["chi"], species
            )
            dx, dy, chi = trap.dx, trap.dy, trap.chi
            xs = _linspace(-1.5 * dx, 1.5 * dx, nx)
            ys = _linspace(0.1 * dy, 2.1 * dy, ny)

            def evaluate(x, y):
                return magnetics.dimensionless_double_potential(x, y, dx, dy, chi)

        rows = [
            [x, y, value]
            for x, y, value in magnetics.potential_grid(evaluate, xs, ys)
        ]
        columns = magnetics.GRID_CSV_HEADER.split(",")
        return columns, rows, [".8e", ".8e", ".8e"]

    raise DesignError(f"unknown command {cmd!r}")


def _linspace(lo: float, hi: float, n: int) -> list[float]:
    step = (hi - lo) / (n - 1)
    return [lo + i * step for i in range(n)]


def _meta(config: RunConfig) -> dict:
    return {
        "constants_version": CONSTANTS_VERSION,
        "defaults_version": defaults_version(),
        "config": {
            "command": config.command,
            "params": {
                k: v for k, v in sorted(config.params.items()) if k not in ("species", "wire")
            },
            "format": config.fmt,
            "units": "si",
        },
    }


def _render_csv(columns, rows, formats) -> str:
    lines = [",".join(columns)]
    for row in rows:
        if formats is None:
            lines.append(",".join(_fmt_value(v) for v in row))
        else:
            parts = []
            for value, spec in zip(row, formats):
                parts.append("NA" if value is None else format(value, spec))
            lines.append(",".join(parts))
    return "\n".join(lines) + "\n"


def _render_json(columns, rows, config: RunConfig) -> str:
    doc = {"meta": _meta(config), "columns": columns, "rows": rows}
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _write_text(text: str, output: str) -> None:
    if output == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(output))
    fd, tmp_path = tempfile.mkstemp(prefix=".nanotrap-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp_path, output)
    except BaseException:
        try:
            os.unlink(tmp_path)
        except OSError:
            pass
        raise


def run(config: RunConfig) -> int:
    """Execute a validated configuration; artifact bytes are a pure
    function of the configuration."""
    if config.command == "stability":
        p = config.params
        species = _species_of(config)
        wire = _wire_of(config)
        if "y0" in p:
            trap = singlewell.design_from_current_and_y0(
                p["I"], p["y0"], p["chi"], species, warn_weak=False
            )
        else:
            trap = singlewell.design_from_current_and_d(
                p["I"], p["d"], p["chi"], species, warn_weak=False
            )
        report = stability.stability_report(
            trap,
            wire,
            p.get("T", 300.0),
            species,
            pair_half_separation=p.get("x0"),
        )
        if config.fmt == "csv":
            columns = ["metric", "value", "unit", "threshold", "pass"]
            rows = [
                [name, block["value"], block["unit"], block["threshold"], block["pass"]]
                for name, block in sorted(report.to_dict()["metrics"].items())
            ]
            text = _render_csv(columns, rows, None)
        else:
            doc = {"meta": _meta(config), "report": report.to_dict()}
            text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
        _write_text(text, config.output)
        return EXIT_OK

    columns, rows, formats = _build_table(config)
    if config.fmt == "csv":
        text = _render_csv(columns, rows, formats)
    else:
        text = _render_json(columns, rows, config)
    _write_text(text, config.output)
    return EXIT_OK


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--output", "-o", default="-", help="output path, '-' for stdout")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument(
        "--units",
        choices=("si", "paper"),
        default="si",
        help="input units: SI, or bench units (uA, nm, kHz)",
    )
    parser.add_argument("--species-json", default=None, help="atom dataset JSON file")
    parser.add_argument("--wire-json", default=None, help="wire dataset JSON file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nanotrap",
        description="Design calculator for nanowire magnetic atom waveguides",
    )
    parser.add_argument("--config", default=None, help="JSON run configuration")
    sub = parser.add_subparsers(dest="command")

    sp = sub.add_parser("single", help="one single-wire trap design")
    sp.add_argument("--I", type=float, help="wire current [A]")
    sp.add_argument("--d", type=float, help="y0/l0")
    sp.add_argument("--chi", type=float, help="hbar omega/(mu Bz)")
    _add_common(sp)

    sp = sub.add_parser("sweep-table1", help="sweep of (I, d) designs at fixed chi")
    sp.add_argument("--chi", type=float)
    sp.add_argument("--rows", help="comma list of I_uA:d pairs")
    _add_common(sp)

    sp = sub.add_parser("gas", help="1D-gas characterization of one configuration")
    sp.add_argument("--omega", type=float, help="transverse trap frequency [rad/s]")
    sp.add_argument("--omega-z", dest="omega_z", type=float, help="longitudinal frequency [rad/s]")
    sp.add_argument("--N", type=int, help="atom number")
    _add_common(sp)

    sp = sub.add_parser("sweep-table2", help="cloud-size sweep over (nu, N) rows")
    sp.add_argument("--omega-z", dest="omega_z", type=float)
    sp.add_argument("--rows", default=_TABLE2_DEFAULT_ROWS, help="comma list of nu_kHz:N pairs")
    _add_common(sp)

    sp = sub.add_parser("stability", help="destructive-effects report for a trap + wire")
    sp.add_argument("--I", type=float)
    sp.add_argument("--d", type=float, default=None)
    sp.add_argument("--y0", type=float, default=None, help="wire-cloud distance [m]")
    sp.add_argument("--chi", type=float)
    sp.add_argument("--T", type=float, default=300.0, help="temperature [K]")
    sp.add_argument("--x0", type=float, default=None, help="pair half-separation [m]")
    _add_common(sp)

    sp = sub.add_parser("double", help="two-wire bistable trap design")
    sp.add_argument("--I", type=float)
    sp.add_argument("--x0", type=float, help="wire half-separation [m]")
    sp.add_argument("--y0", type=float, help="minima height [m]")
    sp.add_argument("--chi", type=float)
    _add_common(sp)

    sp = sub.add_parser("fig3", help="tunneling-rate sweep over y0/x0")
    sp.add_argument("--x0", type=float, default=200e-9)
    sp.add_argument("--chi", type=float, default=0.067)
    sp.add_argument("--currents", default=None, help="comma list [A]; later entries get x0 matched to the first one's omega0")
    sp.add_argument("--ratios", default=_FIG3_DEFAULT_RATIOS, help="comma list or start:stop:step")
    _add_common(sp)

    sp = sub.add_parser("grid", help="dimensionless potential on a grid")
    sp.add_argument("--mode", choices=("single", "double"), default="single")
    sp.add_argument("--I", type=float, default=None)
    sp.add_argument("--d", type=float, default=None)
    sp.add_argument("--chi", type=float, default=None)
    sp.add_argument("--x0", type=float, default=None)
    sp.add_argument("--y0", type=float, default=None)
    sp.add_argument("--x-offset", dest="x_offset", type=float, default=0.0)
    sp.add_argument("--nx", type=int, default=201)
    sp.add_argument("--ny", type=int, default=101)
    _add_common(sp)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)

    if "--config" in argv:
        config_parser = argparse.ArgumentParser(prog="nanotrap", add_help=False)
        config_parser.add_argument("--config", required=True)
        config_parser.add_argument("--output", "-o", default=None)
        try:
            ns = config_parser.parse_args(argv)
        except SystemExit:
            return EXIT_VALIDATION
        try:
            with open(ns.config, encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as exc:
            print(f"error: cannot read config: {exc}", file=sys.stderr)
            return EXIT_IO
        except json.JSONDecodeError as exc:
            print(f"error: malformed config: {exc}", file=sys.stderr)
            return EXIT_VALIDATION
        config, violations = config_from_document(doc)
        if violations:
            for item in violations:
                print(f"error: {item}", file=sys.stderr)
            return EXIT_VALIDATION
        if ns.output is not None:
            config.output = ns.output
        return _validate_and_run(config)

    parser = build_parser()
    ns = parser.parse_args(argv)
    if ns.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_VALIDATION
    else:
        try:
            config = config_from_namespace(ns)
        except (ValueError, OSError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_VALIDATION if isinstance(exc, ValueError) else EXIT_IO
    return _validate_and_run(config)


def _validate_and_run(config: RunConfig) -> int:
    violations = validate(config)
    if violations:
        for item in violations:
            print(f"error: {item}", file=sys.stderr)
        return EXIT_VALIDATION

    try:
        return run(config)
    except DesignError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
