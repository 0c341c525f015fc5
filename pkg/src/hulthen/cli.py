"""Command-line front end.

Subcommands: ``constants``, ``energy``, ``table``, ``wavefunction``,
``figure1`` and ``compare``.  Output goes to standard output unless
``--out`` is given; CSV is the default format.
"""

import argparse
import math
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path

from . import centrifugal, export, numerov, spectrum, tables, wavefunction
from .errors import ConfigurationError, HulthenError, NoBoundState, ParseError

IO_EXIT = 8

UNIT_KEYS = ("hbar", "mu", "Z", "e")
ORACLE_KEYS = {"rmax": "r_max", "steps": "n_steps", "rmin": "r_min", "grid_tolerance": "grid_tolerance"}
CONFIG_KEYS = set(UNIT_KEYS) | set(ORACLE_KEYS) | {"format", "precision", "out"}


@dataclass
class RunConfig:
    units: dict = field(default_factory=dict)
    output_format: str = "csv"
    output_path: str | None = None
    precision: int | None = None
    oracle: numerov.ShootingConfig = field(default_factory=numerov.ShootingConfig)

    def __post_init__(self):
        if self.precision is not None and not 1 <= self.precision <= 17:
            raise ConfigurationError("precision must lie in [1, 17]")
        if self.output_format not in ("csv", "json"):
            raise ConfigurationError(f"unknown output format {self.output_format!r}")

    def system(self, delta):
        return spectrum.PhysicalSystem(delta, **self.units)

    def digits(self, default):
        return self.precision if self.precision is not None else default


def read_config_file(path):
    """Flat ``key = value`` file; ``#`` starts a comment.  Unknown keys are errors."""
    out = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigurationError(f"cannot read config file {path}: {exc}") from exc
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise ConfigurationError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = value.strip("\"'")
    return out


def build_config(args):
    settings = read_config_file(args.config) if args.config else {}
    for key in CONFIG_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            settings[key] = flag
    try:
        units = {k: float(settings[k]) for k in UNIT_KEYS if k in settings}
        oracle = {}
        for key, attr in ORACLE_KEYS.items():
            if key in settings:
                oracle[attr] = int(settings[key]) if attr == "n_steps" else float(settings[key])
        precision = int(settings["precision"]) if "precision" in settings else None
    except ValueError as exc:
        raise ConfigurationError(f"bad configuration value: {exc}") from exc
    return RunConfig(
        units=units,
        output_format=settings.get("format", "csv"),
        output_path=settings.get("out"),
        precision=precision,
        oracle=replace(numerov.ShootingConfig(), **oracle),
    )


def emit(cfg, text):
    if cfg.output_path:
        try:
            Path(cfg.output_path).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise OSError(f"cannot write {cfg.output_path}: {exc}") from exc
    else:
        sys.stdout.write(text)


# -- subcommands -------------------------------------------------------------


def cmd_constants(args, cfg):
    scheme = centrifugal.PRESENT
    solved = centrifugal.solve_gamma_d0()
    items = [
        ("gamma", scheme.gamma),
        ("d0", scheme.d0),
        ("d0_from_gamma", centrifugal.d0_of_gamma(scheme.gamma)),
        ("d0_consistency_residual", scheme.consistency_residual()),
        ("slope_condition_residual", centrifugal.slope_residual(scheme.gamma)),
        ("slope_root_bracketed", solved.bracketed),
    ]
    if cfg.output_format == "json":
        return export.to_json(dict(items))
    return export.to_csv(("quantity", "value"), items, cfg.digits(17))


def _energy_fields(sys_, q, scheme):
    rec = spectrum.energy(sys_, q, scheme)
    return {
        "state": q.label,
        "n": q.n,
        "l": q.l,
        "N": q.N,
        "delta": sys_.delta,
        "scheme": scheme.kind.value,
        "energy": rec.energy,
        "binding": rec.binding,
        "eps": rec.eps,
        "delta_c": spectrum.critical_screening(sys_, q, scheme),
        "admissible": rec.eps >= 0,
        "above_zero": rec.above_zero,
    }


def cmd_energy(args, cfg):
    q = spectrum.parse_state(args.state)
    sys_ = cfg.system(args.delta)
    scheme = centrifugal.SchemeParams.from_name(args.scheme)
    fields = _energy_fields(sys_, q, scheme)
    if cfg.output_format == "json":
        return export.to_json(fields)
    return export.to_csv(list(fields), [list(fields.values())], cfg.digits(7))


TABLE_COLUMNS = ("present", "usual", "numerov")


def _parse_columns(text):
    cols = tuple(c.strip() for c in text.split(",") if c.strip())
    bad = [c for c in cols if c not in TABLE_COLUMNS]
    if bad:
        raise ParseError(f"unknown table column(s): {', '.join(bad)}")
    return cols


def table_records(table_id, columns, cfg, fixture=None):
    """Recomputed columns beside the published values, one dict per cell."""
    try:
        cells = tables.load_tables(fixture)[table_id]
    except KeyError as exc:
        raise ParseError(f"no table {table_id}") from exc
    records = []
    for cell in cells:
        sys_ = cfg.system(cell.delta)
        rec = {"state": cell.state.label, "delta": cell.delta}
        if "present" in columns:
            v = spectrum.energy(sys_, cell.state, centrifugal.PRESENT).binding
            rec.update(published_present=cell.values["present"], present=v, dev_present=v - cell.values["present"])
        if "usual" in columns:
            v = spectrum.energy(sys_, cell.state, centrifugal.USUAL).binding
            rec.update(published_aim=cell.values["aim"], usual=v, dev_usual=v - cell.values["aim"])
        if "numerov" in columns:
            res = numerov.solve_eigenvalue(sys_, cell.state, cfg.oracle)
            rec.update(
                published_numerical=cell.values["numerical"],
                numerov=res.binding,
                dev_numerov=res.binding - cell.values["numerical"],
                grid_convergence=res.grid_convergence,
            )
        for c in ("previous", "variational", "susy"):
            rec[f"published_{c}"] = cell.values[c]
        rec["suspect"] = ";".join(sorted(cell.suspect))
        records.append(rec)
    return records


def cmd_table(args, cfg):
    columns = _parse_columns(args.columns)
    if args.with_oracle and "numerov" not in columns:
        columns = columns + ("numerov",)
    if not args.with_oracle:
        columns = tuple(c for c in columns if c != "numerov")
    records = table_records(args.table_id, columns, cfg)
    summary = {}
    for c, dev in (("present", "dev_present"), ("usual", "dev_usual"), ("numerov", "dev_numerov")):
        if c in columns:
            summary[f"max_abs_{dev}"] = max(abs(r[dev]) for r in records)
    if cfg.output_format == "json":
        return export.to_json({"table": args.table_id, "cells": records, "summary": summary})
    header = list(records[0])
    comments = [f"{k}={export.fmt(v, 3)}" for k, v in summary.items()]
    rows = [[r[h] for h in header] for r in records]
    return export.to_csv(header, rows, cfg.digits(7), comments)


def cmd_wavefunction(args, cfg):
    q = spectrum.parse_state(args.state)
    if args.critical:
        curve = wavefunction.critical_state(q, cfg.system(1.0), n_points=args.points)
        meta = {
            "state": q.label,
            "delta": curve.delta_c,
            "eps": 0.0,
            "node_count": curve.node_count,
            "normalizable": False,
        }
        if cfg.output_format == "json":
            return export.to_json({**meta, "r": curve.r.tolist(), "u": curve.u.tolist()})
        digits = cfg.digits(17)
        comments = [f"{k}={export.fmt(v, digits)}" for k, v in meta.items()]
        return export.to_csv(("r", "u"), zip(curve.r.tolist(), curve.u.tolist()), digits, comments)
    if args.delta is None:
        raise ParseError("wavefunction needs a screening value unless --critical is given")
    wf = wavefunction.normalize(q, cfg.system(args.delta), n_points=args.points)
    if cfg.output_format == "json":
        return export.wavefunction_json(wf)
    return export.wavefunction_csv(wf, cfg.digits(17))


def cmd_figure1(args, cfg):
    deltas = args.deltas or centrifugal.FIGURE1_DELTAS
    curves = centrifugal.figure1_data(deltas, (args.xmin, args.xmax), args.points)
    if cfg.output_format == "json":
        return export.curves_json(curves)
    digits = cfg.digits(17)
    if cfg.output_path and "{delta}" in cfg.output_path:
        for c in curves:
            path = Path(cfg.output_path.replace("{delta}", f"{c.delta:.3f}"))
            path.write_text(export.curves_csv([c], digits), encoding="utf-8")
        return None
    return export.curves_csv(curves, digits)


def compare_cells(args):
    if args.states:
        states = [spectrum.parse_state(s) for s in args.states.split(",")]
        deltas = [float(d) for d in (args.deltas or "0.025").split(",")]
        return [(q, d) for q in states for d in deltas]
    ids = (1, 2) if args.table == "all" else (int(args.table),)
    loaded = tables.load_tables()
    return [(c.state, c.delta) for i in ids for c in loaded[i]]


def cmd_compare(args, cfg):
    rows, errors = [], []
    base = cfg.system(1.0)
    for q, d in compare_cells(args):
        try:
            rows.extend(numerov.approximation_error_report([(q, d)], base, cfg.oracle))
        except HulthenError as exc:
            errors.append({"state": q.label, "delta": d, "error": str(exc)})
    higher = [r for r in rows if r.l > 0]
    wins = sum(r.present_closer for r in higher)
    ties = sum(r.err_present == r.err_usual for r in rows if r.l == 0)
    summary = {
        "cells": len(rows),
        "l_positive_cells": len(higher),
        "present_closer": wins,
        "s_wave_ties": ties,
        "failed": len(errors),
    }
    if cfg.output_format == "json":
        doc = {
            "rows": [dict(zip(export.REPORT_HEADER, r)) for r in export.report_rows(rows)],
            "errors": errors,
            "summary": summary,
        }
        return export.to_json(doc)
    comments = [f"error: {e['state']} {export.fmt(e['delta'])}: {e['error']}" for e in errors]
    text = export.to_csv(export.REPORT_HEADER, export.report_rows(rows), cfg.digits(7), comments)
    line = ", ".join(f"{k}={v}" for k, v in summary.items())
    return text + f"# summary: {line}\n"


# -- argument parsing ----------------------------------------------------------


def _positive(text):
    try:
        v = float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(ParseError.exit_code, f"{self.prog}: error: {message}\n")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--out", metavar="PATH", default=None)
    common.add_argument("--precision", type=int, default=None, metavar="N")
    common.add_argument("--config", metavar="PATH", default=None, help="flat key = value settings file")
    for key in UNIT_KEYS:
        common.add_argument(f"--{key}", type=_positive, default=None, help=f"override {key}")
    common.add_argument("--rmax", type=_positive, default=None, help="oracle outer radius")
    common.add_argument("--rmin", type=_positive, default=None, help="oracle inner radius")
    common.add_argument("--steps", type=int, default=None, help="oracle initial grid steps")
    common.add_argument("--grid-tolerance", dest="grid_tolerance", type=_positive, default=None)

    p = _Parser(prog="hulthen", description="Hulthen-potential bound states: closed forms and a Numerov oracle.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("constants", parents=[common], help="approximation constants and residuals")
    s.set_defaults(func=cmd_constants)

    s = sub.add_parser("energy", parents=[common], help="closed-form energy of one state")
    s.add_argument("state")
    s.add_argument("delta", type=_positive)
    s.add_argument("--scheme", choices=("present", "usual"), default="present")
    s.set_defaults(func=cmd_energy)

    s = sub.add_parser("table", parents=[common], help="recompute a published table")
    s.add_argument("table_id", type=int, choices=(1, 2))
    s.add_argument("--columns", default="present,usual,numerov")
    s.add_argument("--with-oracle", action="store_true")
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("wavefunction", parents=[common], help="normalized radial function samples")
    s.add_argument("state")
    s.add_argument("delta", type=_positive, nargs="?")
    s.add_argument("--critical", action="store_true", help="zero-energy state at the critical screening")
    s.add_argument("--points", type=int, default=2000)
    s.set_defaults(func=cmd_wavefunction)

    s = sub.add_parser("figure1", parents=[common], help="centrifugal term and its approximation")
    s.add_argument("--deltas", type=_positive, nargs="+", default=None)
    s.add_argument("--xmin", type=_positive, default=0.05)
    s.add_argument("--xmax", type=_positive, default=2.0)
    s.add_argument("--points", type=int, default=400)
    s.set_defaults(func=cmd_figure1)

    s = sub.add_parser("compare", parents=[common], help="closed forms against the Numerov oracle")
    s.add_argument("--table", choices=("1", "2", "all"), default="all")
    s.add_argument("--states", default=None, help="comma-separated labels (overrides --table)")
    s.add_argument("--deltas", default=None, help="comma-separated screenings used with --states")
    s.set_defaults(func=cmd_compare)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = build_config(args)
        text = args.func(args, cfg)
        if text is not None:
            emit(cfg, text)
    except NoBoundState as exc:
        msg = str(exc)
        if exc.delta_max is not None and "delta <=" not in msg:
            msg += f" (bound states need delta <= {exc.delta_max:.7g})"
        print(f"hulthen: {msg}", file=sys.stderr)
        return exc.exit_code
    except HulthenError as exc:
        print(f"hulthen: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"hulthen: {exc}", file=sys.stderr)
        return IO_EXIT
    return 0


if __name__ == "__main__":
    sys.exit(main())
