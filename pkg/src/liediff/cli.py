"""``liediff`` command line.

Inputs are ``builtin:NAME`` or a path to a table file.  Output is text by
default; ``LIEDIFF_FORMAT=json`` changes the default and ``--json`` forces it.
Exit codes: 0 ok, 1 parse/IO or input error, 2 validation failure,
3 acceptance failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import acceptance
from .algebra import ParseError, StructureTable, TableError, builtin, center, emit_table, parse_table, table_to_json, validate
from .cohomology import UnsupportedConfiguration, cohomology_report
from .derivations import report_json
from .diffops import filtration_report
from .linalg import DimensionError, format_rational, parse_rational
from .modules import check_representation, module_filtration_report, parse_representation
from .realizations import (BudgetExceeded, car_first_order, ccr_first_order, format_poly, parse_poly, residual_report_json,
                           verify_intertwining_car, verify_intertwining_ccr)

EXIT_OK, EXIT_INPUT, EXIT_INVALID, EXIT_ACCEPTANCE = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    source: str | None = None
    order: int = 3
    max_degree: int = 3
    fmt: str = "text"
    seed: int = acceptance.DEFAULT_SEED


class InvalidTable(Exception):
    def __init__(self, report):
        super().__init__("table violates the Lie axioms")
        self.report = report


def load_table(source: str) -> StructureTable:
    if source.startswith("builtin:"):
        return builtin(source[len("builtin:"):])
    return parse_table(Path(source).read_text(encoding="utf-8"))


def load_valid_table(source: str) -> StructureTable:
    t = load_table(source)
    report = validate(t)
    if not report.ok:
        raise InvalidTable(report)
    return t


def _emit(data, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(data, sort_keys=True) + "\n")
        return
    for line in _text_lines(data):
        out.write(line + "\n")


def _text_lines(data, prefix: str = "") -> list[str]:
    lines = []
    if isinstance(data, dict):
        for k, v in data.items():
            nested = isinstance(v, dict) or (isinstance(v, list) and v and isinstance(v[0], dict))
            if nested:
                lines.append(f"{prefix}{k}:")
                lines.extend(_text_lines(v, prefix + "  "))
            else:
                lines.append(f"{prefix}{k}: {_scalar(v)}")
    elif isinstance(data, list):
        for item in data:
            if isinstance(item, dict):
                lines.append(prefix + ", ".join(f"{k}={_scalar(v)}" for k, v in item.items()))
            else:
                lines.append(prefix + _scalar(item))
    else:
        lines.append(prefix + _scalar(data))
    return lines


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    return str(v)


# -- commands ----------------------------------------------------------------

def cmd_check(cfg: RunConfig, out) -> int:
    t = load_table(cfg.source)
    report = validate(t)
    data = {"dim": t.dim, "graded": t.graded, "ok": report.ok,
            "violations": [{"kind": v.kind, "indices": [i + 1 for i in v.indices],
                            "residual": [format_rational(x) for x in v.residual]} for v in report.violations]}
    if cfg.fmt == "json":
        _emit(data, "json", out)
    else:
        out.write(f"dim {t.dim}{' (graded)' if t.graded else ''}: "
                  f"{'ok' if report.ok else f'{len(report)} violation(s)'}\n")
        for v in report.violations:
            out.write(v.describe() + "\n")
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_derivations(cfg: RunConfig, out) -> int:
    t = load_valid_table(cfg.source)
    data = report_json(t)
    if cfg.fmt != "json":
        data = {k: v for k, v in data.items() if k != "basis"}
    _emit(data, cfg.fmt, out)
    return EXIT_OK


def cmd_center(cfg: RunConfig, out) -> int:
    t = load_valid_table(cfg.source)
    z = center(t)
    _emit({"dim": z.dim, "basis": [[format_rational(x) for x in v] for v in z.basis]}, cfg.fmt, out)
    return EXIT_OK


def cmd_diff(cfg: RunConfig, out) -> int:
    t = load_valid_table(cfg.source)
    _emit(filtration_report(t, cfg.order), cfg.fmt, out)
    return EXIT_OK


def cmd_module(cfg: RunConfig, out) -> int:
    path = Path(cfg.source)
    rep = parse_representation(path.read_text(encoding="utf-8"), base=path.parent)
    report = validate(rep.algebra)
    if not report.ok:
        raise InvalidTable(report)
    bad = check_representation(rep)
    if bad:
        _emit({"ok": False, "representation_failures": [list(k) if isinstance(k, tuple) else k for k in bad]},
              cfg.fmt, out)
        return EXIT_INVALID
    _emit(module_filtration_report(rep, cfg.order), cfg.fmt, out)
    return EXIT_OK


def cmd_cohomology(cfg: RunConfig, out) -> int:
    t = load_valid_table(cfg.source)
    _emit(cohomology_report(t, cfg.max_degree), cfg.fmt, out)
    return EXIT_OK


def cmd_emit(cfg: RunConfig, out) -> int:
    t = load_table(cfg.source)
    if cfg.fmt == "json":
        _emit(table_to_json(t), "json", out)
    else:
        out.write(emit_table(t))
    return EXIT_OK


def _params(text: str, count: int) -> list:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != count:
        raise ValueError(f"expected {count} comma-separated parameters, got {len(parts)}")
    return [parse_rational(p) for p in parts]


def cmd_realize(args, cfg: RunConfig, out) -> int:
    if args.kind == "ccr":
        params = _params(args.params or "0,0,0,0,0,0", 6)
        f = parse_poly(args.f or "1")
        report = verify_intertwining_ccr(params, f, budget=args.budget)
        data = residual_report_json(report)
        data["delta_f"] = format_poly(ccr_first_order(*params, budget=args.budget)(f))
    else:
        params = _params(args.params or "0,0,0,0", 4)
        h = _params(args.h, 2) if args.h else [1, 0]
        report = verify_intertwining_car(params, h)
        data = residual_report_json(report, lambda v: [format_rational(x) for x in v])
        data["delta_h"] = [format_rational(x) for x in car_first_order(*params).matrix @ h]
    _emit(data, cfg.fmt, out)
    return EXIT_OK if report["ok"] else EXIT_ACCEPTANCE


def cmd_verify_paper(cfg: RunConfig, out, verbose: bool = False) -> int:
    results = acceptance.run_all(cfg.seed)
    if cfg.fmt == "json":
        _emit({"seed": cfg.seed, "passed": all(r.passed for r in results),
               "criteria": [{"number": r.number, "title": r.title, "passed": r.passed, "details": r.details}
                            for r in results]}, "json", out)
    else:
        for r in results:
            out.write(r.line() + "\n")
            for d in r.details:
                if verbose or d.startswith("FAIL"):
                    out.write("      " + d + "\n")
        failed = [r.number for r in results if not r.passed]
        out.write(f"seed {cfg.seed}: {len(results) - len(failed)}/{len(results)} criteria passed"
                  + (f"; failing: {', '.join(map(str, failed))}" if failed else "") + "\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_ACCEPTANCE


# -- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="liediff", description="Exact derivations, differential operators and "
                                "Chevalley-Eilenberg cohomology of finite-dimensional (graded) Lie algebras.")
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--json", action="store_true", help="emit JSON (overrides LIEDIFF_FORMAT)")
    sub = p.add_subparsers(dest="command", required=True)

    for name, helptext in (("check", "validate a table"), ("derivations", "derivation algebra report"),
                           ("center", "center of the algebra"), ("emit", "print a table in the file format")):
        sp = sub.add_parser(name, parents=[fmt], help=helptext)
        sp.add_argument("source", help="builtin:NAME or a table file")
    sp = sub.add_parser("diff", parents=[fmt], help="dimensions of the order filtration")
    sp.add_argument("source")
    sp.add_argument("--order", type=int, default=3)
    sp = sub.add_parser("module", parents=[fmt], help="module operator filtration for a representation file")
    sp.add_argument("source")
    sp.add_argument("--order", type=int, default=3)
    sp = sub.add_parser("cohomology", parents=[fmt], help="Chevalley-Eilenberg cohomology dimensions")
    sp.add_argument("source")
    sp.add_argument("--max-degree", type=int, default=3)
    sp = sub.add_parser("realize", parents=[fmt], help="intertwining residuals of the CCR/CAR realizations")
    sp.add_argument("kind", choices=("ccr", "car"))
    sp.add_argument("--params", help="ccr: M,O1,O2,C1,C2,lambda; car: M,C1,C2,lambda")
    sp.add_argument("--f", help="ccr: polynomial in x, e.g. '1 + 2x - x^3/2'")
    sp.add_argument("--h", help="car: coordinates h0,h1 of h0 + h1 c")
    sp.add_argument("--budget", type=int, default=16, help="ccr: polynomial degree budget")
    sp = sub.add_parser("verify-paper", parents=[fmt], help="run the full acceptance suite")
    sp.add_argument("--seed", type=int, default=acceptance.DEFAULT_SEED)
    sp.add_argument("-v", "--verbose", action="store_true", help="print every sub-check")
    return p


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    fmt = "json" if args.json else os.environ.get("LIEDIFF_FORMAT", "text").strip().lower()
    if fmt not in ("text", "json"):
        fmt = "text"
    cfg = RunConfig(args.command, getattr(args, "source", None), getattr(args, "order", 3),
                    getattr(args, "max_degree", 3), fmt, getattr(args, "seed", acceptance.DEFAULT_SEED))
    commands = {"check": cmd_check, "derivations": cmd_derivations, "center": cmd_center, "diff": cmd_diff,
                "module": cmd_module, "cohomology": cmd_cohomology, "emit": cmd_emit}
    try:
        if args.command == "realize":
            return cmd_realize(args, cfg, out)
        if args.command == "verify-paper":
            return cmd_verify_paper(cfg, out, args.verbose)
        return commands[args.command](cfg, out)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvalidTable as exc:
        for v in exc.report.violations:
            out.write(v.describe() + "\n")
        print("error: table violates the Lie axioms; run 'check' for the full report", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (TableError, DimensionError, UnsupportedConfiguration, BudgetExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
