"""Command-line front end.

Subcommands
-----------
eval      one configuration, all pressure components
sweep     the Cartesian product of parameter grids
figure1   normalized vacuum pressure against mL at D = 4
limits    exact massless total beside its temperature expansions

Every output carries ``schema_version``. CSV writes it as the first column,
JSON as a key of the top-level object ``{schema_version, command, inputs, rows}``.
Exit status is 0 on success, 1 for invalid input and 2 for a numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import itertools
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor

from . import asymptotics, pressure
from .errors import BudgetError, CasimirError
from .series import SeriesControl

SCHEMA_VERSION = 1
INFINITE = "infinite"
DEFAULT_ROW_CAP = 1_000_000

EVAL_COLUMNS = [
    "schema_version",
    "D",
    "m",
    "L",
    "beta",
    "boundary",
    "field",
    "vacuum",
    "thermal",
    "mixed",
    "total",
    "normalized_vacuum",
    "vacuum_tail_bound",
    "thermal_tail_bound",
    "mixed_tail_bound",
    "vacuum_terms",
    "thermal_terms",
    "mixed_terms",
    "vacuum_method",
    "thermal_method",
    "mixed_method",
    "underflowed",
    "error",
]
FIGURE1_COLUMNS = ["schema_version", "mL", "normalized_pressure"]
LIMITS_COLUMNS = ["schema_version"] + [f.name for f in dataclasses.fields(asymptotics.LimitsReport)]

EXIT_OK, EXIT_INPUT, EXIT_NUMERICAL = 0, 1, 2


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for numerical failure here
    def error(self, message):
        self.print_usage(sys.stderr)
        _emit_error("InputError", message)
        raise SystemExit(EXIT_INPUT)


def _emit_error(kind: str, message: str):
    record = {"schema_version": SCHEMA_VERSION, "error": {"type": kind, "message": message}}
    sys.stderr.write(json.dumps(record, sort_keys=True) + "\n")


# ---------------------------------------------------------------- parsing


def _beta(text: str):
    if str(text).lower() in (INFINITE, "inf"):
        return None
    value = float(text)
    if not 0 < value < math.inf:
        raise argparse.ArgumentTypeError(f"beta must be positive or '{INFINITE}', got {text}")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _control(ns) -> SeriesControl:
    try:
        return SeriesControl(abs_tol=ns.abs_tol, rel_tol=ns.rel_tol, max_terms=ns.max_terms)
    except CasimirError as exc:
        raise InputError(str(exc)) from exc


def _add_common(p):
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", help="output path; standard output when omitted")
    p.add_argument("--abs-tol", type=float, default=SeriesControl.abs_tol)
    p.add_argument("--rel-tol", type=float, default=SeriesControl.rel_tol)
    p.add_argument("--max-terms", type=int, default=SeriesControl.max_terms)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="casimir-torus", description="Casimir pressure on a spatial circle at finite temperature")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="evaluate one configuration")
    _add_common(p)
    p.add_argument("--D", type=int, default=4, help="total Euclidean dimension")
    p.add_argument("--m", type=float, default=0.0, help="mass")
    p.add_argument("--L", type=float, required=True, help="circumference of the spatial circle")
    p.add_argument("--beta", type=_beta, default=None, help=f"inverse temperature or '{INFINITE}' (default)")
    p.add_argument("--dirichlet", action="store_true", help="Dirichlet plates at separation a = L/2")
    p.add_argument("--field", choices=[f.value for f in pressure.Field], default="scalar")

    p = sub.add_parser("sweep", help="evaluate a grid of configurations")
    _add_common(p)
    p.add_argument("--D", type=int, nargs="+", default=None)
    p.add_argument("--m", type=float, nargs="+", default=None)
    p.add_argument("--L", type=float, nargs="+", default=None)
    p.add_argument("--beta", type=_beta, nargs="+", default=None)
    p.add_argument("--spec", help="JSON file with keys D, m, L, beta (lists); flags override it")
    p.add_argument("--jobs", type=_positive_int, default=1, help="worker processes")
    p.add_argument("--max-rows", type=_positive_int, default=DEFAULT_ROW_CAP)

    p = sub.add_parser("figure1", help="normalized vacuum pressure against mL at D = 4, L = 1")
    _add_common(p)
    p.add_argument("--ml", type=float, nargs="+", required=True)

    p = sub.add_parser("limits", help="massless total against its temperature expansions")
    _add_common(p)
    p.add_argument("--L", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    return parser


# ---------------------------------------------------------------- rows


def _beta_out(beta):
    return INFINITE if beta is None else beta


def _evaluate(D, m, L, beta, ctrl, dirichlet=False, field="scalar") -> dict:
    row = {
        "schema_version": SCHEMA_VERSION,
        "D": D,
        "m": m,
        "L": L,
        "beta": _beta_out(beta),
        "boundary": "dirichlet" if dirichlet else "periodic",
        "field": field,
    }
    try:
        cfg = pressure.CavityConfig(D, m, L, beta)
        if dirichlet:
            report = pressure.dirichlet_pressure(L / 2, cfg, field, ctrl)
        else:
            report = pressure.total_pressure(cfg, ctrl)
        # for plates this refers to the equivalent periodic circle of length L
        normalized = pressure.normalized_vacuum_pressure(cfg, ctrl)
    except BudgetError as exc:
        row["error"] = f"BudgetError: {exc}"
        return row
    except CasimirError as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
        return row
    row.update(
        vacuum=report.vacuum,
        thermal=report.thermal,
        mixed=report.mixed,
        total=report.total,
        normalized_vacuum=normalized,
    )
    for name, res in report.convergence.items():
        row[f"{name}_tail_bound"] = res.tail_bound
        row[f"{name}_terms"] = res.terms_used
        row[f"{name}_method"] = res.method
    row["underflowed"] = any(r.underflowed for r in report.convergence.values())
    row["error"] = ""
    return row


def _sweep_row(job):
    (D, m, L, beta), ctrl = job
    return _evaluate(D, m, L, beta, ctrl)


def _row_status(rows) -> int:
    errors = [r.get("error", "") for r in rows]
    if any(e.startswith("BudgetError") for e in errors):
        return EXIT_NUMERICAL
    if any(errors):
        return EXIT_INPUT
    return EXIT_OK


def _sweep_grids(ns) -> dict:
    grids = {"D": [4], "m": None, "L": None, "beta": [None]}
    if ns.spec:
        try:
            with open(ns.spec) as fh:
                spec = json.load(fh)
        except (OSError, ValueError) as exc:
            raise InputError(f"cannot read sweep spec: {exc}") from exc
        aliases = {"dimension_D": "D", "mass": "m", "length_L": "L", "inverse_temperature_beta": "beta"}
        for key, values in spec.items():
            key = aliases.get(key, key)
            if key not in grids:
                raise InputError(f"unknown sweep spec key {key!r}")
            if not isinstance(values, list):
                values = [values]
            try:
                if key == "beta":
                    values = [_beta(v) for v in values]
                elif key == "D":
                    values = [int(v) for v in values]
                else:
                    values = [float(v) for v in values]
            except (ValueError, argparse.ArgumentTypeError) as exc:
                raise InputError(f"bad value in sweep spec: {exc}") from exc
            grids[key] = values
    for key in grids:
        flag = getattr(ns, key)
        if flag is not None:
            grids[key] = flag
    for key, values in grids.items():
        if not values:
            raise InputError(f"sweep grid {key} is missing or empty")
    size = math.prod(len(v) for v in grids.values())
    if size > ns.max_rows:
        raise InputError(f"sweep has {size} rows, above the cap of {ns.max_rows}")
    return grids


# ---------------------------------------------------------------- output


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _json_value(value):
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    return value


def render(command: str, inputs: dict, rows: list[dict], columns: list[str], fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row.get(c)) for c in columns])
        return buf.getvalue()
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "rows": [{c: _json_value(row.get(c)) for c in columns} for row in rows],
    }
    return json.dumps(doc, indent=2) + "\n"


def _write(text: str, path: str | None):
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _echo(ns) -> dict:
    skip = {"command", "format", "out", "spec", "jobs"}
    out = {}
    for key, value in sorted(vars(ns).items()):
        if key in skip:
            continue
        if key == "beta":
            value = [_beta_out(b) for b in value] if isinstance(value, list) else _beta_out(value)
        out[key] = value
    return out


# ---------------------------------------------------------------- commands


def cmd_eval(ns, ctrl):
    row = _evaluate(ns.D, ns.m, ns.L, ns.beta, ctrl, ns.dirichlet, ns.field)
    return [row], EVAL_COLUMNS, _row_status([row])


def cmd_sweep(ns, ctrl):
    grids = _sweep_grids(ns)
    points = list(itertools.product(grids["D"], grids["m"], grids["L"], grids["beta"]))
    jobs = [(p, ctrl) for p in points]
    if ns.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=ns.jobs) as pool:
            rows = list(pool.map(_sweep_row, jobs, chunksize=max(1, len(jobs) // (4 * ns.jobs))))
    else:
        rows = [_sweep_row(j) for j in jobs]
    ns.D, ns.m, ns.L, ns.beta = grids["D"], grids["m"], grids["L"], grids["beta"]
    return rows, EVAL_COLUMNS, _row_status(rows)


def cmd_figure1(ns, ctrl):
    if any(not 0 < x < math.inf for x in ns.ml):
        raise InputError("every mL value must be positive and finite")
    rows = []
    for ml in ns.ml:
        ratio = pressure.normalized_vacuum_pressure(pressure.CavityConfig(4, ml, 1.0), ctrl)
        rows.append({"schema_version": SCHEMA_VERSION, "mL": ml, "normalized_pressure": ratio})
    return rows, FIGURE1_COLUMNS, EXIT_OK


def cmd_limits(ns, ctrl):
    report = asymptotics.limits_report(ns.L, ns.beta, ctrl)
    row = {"schema_version": SCHEMA_VERSION, **dataclasses.asdict(report)}
    return [row], LIMITS_COLUMNS, EXIT_OK


COMMANDS = {"eval": cmd_eval, "sweep": cmd_sweep, "figure1": cmd_figure1, "limits": cmd_limits}


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        ctrl = _control(ns)
        rows, columns, status = COMMANDS[ns.command](ns, ctrl)
        text = render(ns.command, _echo(ns), rows, columns, ns.format)
        _write(text, ns.out)
    except InputError as exc:
        _emit_error("InputError", str(exc))
        return EXIT_INPUT
    except BudgetError as exc:
        _emit_error("BudgetError", str(exc))
        return EXIT_NUMERICAL
    except CasimirError as exc:
        _emit_error(type(exc).__name__, str(exc))
        return EXIT_INPUT
    except OSError as exc:
        _emit_error("OSError", str(exc))
        return EXIT_INPUT
    for row in rows:
        if row.get("error"):
            _emit_error("RowError", row["error"])
    return status


if __name__ == "__main__":
    raise SystemExit(main())
