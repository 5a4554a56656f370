"""Command-line front end for tabulation, verification, and export.

Four subcommands share one deterministic output layer:

* ``tabulate``  -- kernel columns on an x grid, CSV or JSON.
* ``verify``    -- the named invariant suite with measured residuals.
* ``greens``    -- one Green's-combination record, both routes.
* ``coeffs``    -- the symbolic coefficient listing.

Runs are seed-free and serial; two invocations with the same
configuration produce byte-identical output.  Exit codes: 0 success,
1 verification failure, 2 usage or configuration error, 3 numerical
budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import verify as _verify
from .bessel_core import EvalPoint
from .entropy_kernels import (
    DEFAULT_SWITCH,
    GreenParams,
    QKernel,
    greens_combination,
    greens_combination_quadrature,
    p_closed,
    q_asymptotic,
    radial_integral,
)
from .errors import BesselSumError, BudgetError, DomainError
from .oscillatory_quadrature import integral_j0y0_tail
from .resolvent_coeffs import (
    format_coefficient,
    json_terms,
    nonzero_coefficients,
    polynomial_text,
)
from .series_sums import DEFAULT_TRUNCATION, p_direct

SCHEMA_VERSION = 1

TABULATE_COLUMNS = (
    "x",
    "p_direct",
    "p_direct_err",
    "p_closed",
    "p_closed_err",
    "q",
    "q_err",
    "q_asymptotic",
    "q_asymptotic_err",
    "tail_integral",
    "tail_integral_err",
    "status",
)

# The Green's quadrature walks half-periods of the oscillatory kernel;
# its cost is scale free, but the closed form's contour loses phase
# resolution once ln(m^2 r^2) outruns the node density.
_MIN_MR = 1e-3


@dataclass(frozen=True)
class RunConfig:
    """Validated invocation parameters shared by the subcommands."""

    command: str
    x_min: float = 0.1
    x_max: float = 40.0
    count: int = 40
    spacing: str = "log"
    tolerances: Dict[str, float] = field(default_factory=dict)
    output: Optional[str] = None
    fmt: Optional[str] = None

    def __post_init__(self) -> None:
        if self.command not in ("tabulate", "verify", "greens", "coeffs"):
            raise DomainError(f"unknown command {self.command!r}")
        if self.spacing not in ("linear", "log"):
            raise DomainError("spacing must be 'linear' or 'log'")
        if self.fmt is not None and self.fmt not in ("csv", "json"):
            raise DomainError("format must be 'csv' or 'json'")
        if not isinstance(self.count, int) or self.count < 1:
            raise DomainError("count must be a positive integer")
        if not (self.x_min > 0.0 and math.isfinite(self.x_min)):
            raise DomainError("x_min must be positive and finite")
        if not math.isfinite(self.x_max) or self.x_max < self.x_min:
            raise DomainError("x_max must be finite and >= x_min")
        if self.count > 1 and self.x_max <= self.x_min:
            raise DomainError("count > 1 requires x_max > x_min")
        unknown = [
            key
            for key in self.tolerances
            if key not in _verify.check_names()
        ]
        if unknown:
            raise DomainError(f"unknown tolerance keys: {sorted(unknown)}")

    def grid(self) -> np.ndarray:
        if self.count == 1:
            return np.array([self.x_min])
        if self.spacing == "linear":
            return np.linspace(self.x_min, self.x_max, self.count)
        return np.geomspace(self.x_min, self.x_max, self.count)


def _tabulate_row(x: float, kernel: QKernel) -> dict:
    row: Dict[str, object] = {"x": x}
    flagged: List[str] = []

    def cell(name: str, fn) -> Tuple[float, float]:
        try:
            return fn()
        except BesselSumError:
            flagged.append(name)
            return math.nan, math.nan

    point = EvalPoint(x)

    def direct() -> Tuple[float, float]:
        value = p_direct(point)
        # Order-derivative terms are guarded to 1e-10 apiece; beyond
        # x ~ 45 a band-edge run of terms falls back to finite
        # differences whose n-weighted rounding noise accumulates like
        # x^2 * eps / h (measured ceiling 7.4e-9 per unit x^2 margin 3).
        n_terms = DEFAULT_TRUNCATION.n_terms(x)
        error = 1e-10 * math.sqrt(n_terms) + 1e-14
        if x > 45.0:
            error += 2e-11 * x * x
        return value, error

    def q_cell() -> Tuple[float, float]:
        values, errors = kernel.batch(np.array([x]))
        return float(values[0]), float(errors[0])

    row["p_direct"], row["p_direct_err"] = cell("p_direct", direct)
    q_value, q_error = cell("q", q_cell)
    row["q"], row["q_err"] = q_value, q_error

    def closed() -> Tuple[float, float]:
        value = p_closed(point)
        if x < DEFAULT_SWITCH.x_switch:
            return value, row["p_direct_err"]
        return value, 0.25 * q_error + 1e-16

    row["p_closed"], row["p_closed_err"] = cell("p_closed", closed)
    row["q_asymptotic"] = q_asymptotic(point)
    row["q_asymptotic_err"] = 0.0

    def tail() -> Tuple[float, float]:
        estimate = integral_j0y0_tail(x)
        return estimate.value, estimate.error_estimate

    row["tail_integral"], row["tail_integral_err"] = cell("tail_integral", tail)
    row["status"] = "ok" if not flagged else "budget(" + ",".join(flagged) + ")"
    return row


def cmd_tabulate(config: RunConfig) -> Tuple[List[dict], int]:
    """Kernel columns over the configured grid, one row per point."""
    kernel = QKernel()
    rows = [_tabulate_row(float(x), kernel) for x in config.grid()]
    code = 0 if all(row["status"] == "ok" for row in rows) else 3
    return rows, code


def cmd_verify(config: RunConfig) -> Tuple[List[dict], int]:
    """The full named-check suite; exit 0 only when every check passes."""
    findings = _verify.run_checks(tolerances=config.tolerances)
    code = 0 if all(record["passed"] for record in findings) else 1
    return findings, code


def cmd_greens(
    config: RunConfig, r: float, m: float, include_radial: bool
) -> Tuple[List[dict], int]:
    """One record with the closed form, the quadrature, and their gap."""
    if not (r > 0.0 and m > 0.0):
        raise DomainError("r and m must be positive")
    if m * r < _MIN_MR:
        raise DomainError(
            f"mr = {m * r:.3e} below the supported range (mr >= {_MIN_MR})"
        )
    params = GreenParams(r=r, m=m)
    closed = greens_combination(params)
    quadrature = greens_combination_quadrature(params)
    row: Dict[str, object] = {
        "r": r,
        "m": m,
        "closed_form": closed,
        "quadrature": quadrature,
        "abs_difference": abs(closed - quadrature),
        "radial_integral": radial_integral(m) if include_radial else None,
    }
    return [row], 0


def cmd_coeffs(config: RunConfig, l_max: int) -> Tuple[List[dict], int]:
    """All nonzero symbolic coefficients with l <= l_max."""
    if not isinstance(l_max, int) or not 0 <= l_max <= 8:
        raise DomainError("l_max must be an integer in [0, 8]")
    rows = [
        {
            "i": idx.i,
            "j": idx.j,
            "l": idx.l,
            "polynomial": polynomial_text(poly),
            "terms": json_terms(poly),
            "line": format_coefficient(idx),
        }
        for idx, poly in nonzero_coefficients(l_max)
    ]
    return rows, 0


def _csv_value(value: object) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.16e}"
    if value is None:
        return ""
    return str(value)


def _render_csv(rows: List[dict], columns: Tuple[str, ...]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_csv_value(row.get(column)) for column in columns])
    return buffer.getvalue()


def _json_safe(value: object) -> object:
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def _render_json(command: str, config_obj: dict, key: str, rows: List[dict]) -> str:
    payload = {
        "command": command,
        "schema_version": SCHEMA_VERSION,
        "config": config_obj,
        key: [
            {name: _json_safe(value) for name, value in row.items()}
            for row in rows
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def _emit(text: str, output: Optional[str]) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)


def _parse_tolerances(pairs: Optional[List[str]]) -> Dict[str, float]:
    overrides: Dict[str, float] = {}
    for pair in pairs or []:
        key, separator, raw = pair.partition("=")
        if not separator or not key:
            raise DomainError(f"--tol expects KEY=VALUE, got {pair!r}")
        try:
            overrides[key] = float(raw)
        except ValueError as exc:
            raise DomainError(f"--tol value for {key!r} is not a number") from exc
    return overrides


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="besselsum",
        description="Bessel order-derivative sums and Green's-function kernels",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--out", default=None, help="output file (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default=None)
        p.add_argument(
            "--tol",
            action="append",
            metavar="KEY=VAL",
            help="tolerance override (verify only), repeatable",
        )

    p_tab = sub.add_parser("tabulate", help="kernel columns on an x grid")
    p_tab.add_argument("--x-min", type=float, default=0.1)
    p_tab.add_argument("--x-max", type=float, default=40.0)
    p_tab.add_argument("--count", type=int, default=40)
    p_tab.add_argument("--spacing", choices=("linear", "log"), default="log")
    add_common(p_tab)

    p_ver = sub.add_parser("verify", help="run the named invariant suite")
    add_common(p_ver)

    p_grn = sub.add_parser("greens", help="Green's-combination record")
    p_grn.add_argument("--r", type=float, required=True)
    p_grn.add_argument("--m", type=float, required=True)
    p_grn.add_argument(
        "--radial",
        action="store_true",
        help="also compute the radial integral for this m",
    )
    add_common(p_grn)

    p_cf = sub.add_parser("coeffs", help="symbolic coefficient listing")
    p_cf.add_argument("--l-max", type=int, default=4)
    add_common(p_cf)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        tolerances = _parse_tolerances(args.tol)
        if args.command == "tabulate":
            config = RunConfig(
                command="tabulate",
                x_min=args.x_min,
                x_max=args.x_max,
                count=args.count,
                spacing=args.spacing,
                tolerances=tolerances,
                output=args.out,
                fmt=args.format,
            )
            rows, code = cmd_tabulate(config)
            config_obj = {
                "x_min": config.x_min,
                "x_max": config.x_max,
                "count": config.count,
                "spacing": config.spacing,
            }
            if (config.fmt or "csv") == "csv":
                text = _render_csv(rows, TABULATE_COLUMNS)
            else:
                text = _render_json("tabulate", config_obj, "rows", rows)
            _emit(text, config.output)
            return code

        if args.command == "verify":
            config = RunConfig(
                command="verify",
                tolerances=tolerances,
                output=args.out,
                fmt=args.format,
            )
            findings, code = cmd_verify(config)
            config_obj = {"tolerances": dict(sorted(config.tolerances.items()))}
            if (config.fmt or "csv") == "csv":
                text = _render_csv(
                    findings,
                    ("name", "passed", "residual", "tolerance", "details"),
                )
            else:
                text = _render_json("verify", config_obj, "findings", findings)
            _emit(text, config.output)
            return code

        if args.command == "greens":
            config = RunConfig(
                command="greens",
                tolerances=tolerances,
                output=args.out,
                fmt=args.format,
            )
            rows, code = cmd_greens(config, args.r, args.m, args.radial)
            config_obj = {"r": args.r, "m": args.m, "radial": bool(args.radial)}
            columns = (
                "r",
                "m",
                "closed_form",
                "quadrature",
                "abs_difference",
                "radial_integral",
            )
            if (config.fmt or "csv") == "csv":
                text = _render_csv(rows, columns)
            else:
                text = _render_json("greens", config_obj, "rows", rows)
            _emit(text, config.output)
            return code

        config = RunConfig(
            command="coeffs",
            tolerances=tolerances,
            output=args.out,
            fmt=args.format,
        )
        rows, code = cmd_coeffs(config, args.l_max)
        config_obj = {"l_max": args.l_max}
        if config.fmt is None:
            text = "".join(row["line"] + "\n" for row in rows)
        elif config.fmt == "csv":
            text = _render_csv(rows, ("i", "j", "l", "polynomial"))
        else:
            json_rows = [
                {key: row[key] for key in ("i", "j", "l", "polynomial", "terms")}
                for row in rows
            ]
            text = _render_json("coeffs", config_obj, "rows", json_rows)
        _emit(text, config.output)
        return code

    except BudgetError as exc:
        print(f"besselsum: numerical budget exceeded: {exc}", file=sys.stderr)
        return 3
    except BesselSumError as exc:
        print(f"besselsum: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
