"""Command-line surface: ``qaswitch <command> ...``.

Every command prints one report, JSON by default (``--format text`` for a
plain table).  The JSON report always has the keys schema_version, command,
inputs, results and discrepancies, and is byte-identical across runs on the
same inputs.

Exit codes: 0 success, 1 verification FAIL, 2 usage or parse error,
3 precondition violation, 4 numeric guard.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from .casebook import (
    DISCREPANCY,
    FAIL,
    UnknownEntryError,
    case_names,
    case_rows,
    condition_names,
    condition_row,
    cyclicity_pipeline,
    first_constant_rows,
    load_period,
    period_rows,
    six_cycle_window,
    verify_all,
)
from .exactpoly import PolySyntaxError, as_poly, isolate_real_roots
from .lyapcore import focus_values, period_constants
from .numlab import NumericGuardError, NumericInstance, displacement_scan
from .sysmodel import PreconditionError, Substitution, SystemFormatError, load_system

SCHEMA_VERSION = 1
MIN_ORDER, MAX_ORDER = 2, 12

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECONDITION, EXIT_GUARD = 0, 1, 2, 3, 4


def _order(text: str) -> int:
    n = int(text)
    if not MIN_ORDER <= n <= MAX_ORDER:
        raise argparse.ArgumentTypeError(f"order must lie in [{MIN_ORDER}, {MAX_ORDER}]")
    return n


def _positive(text: str) -> float:
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def _read_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SystemFormatError(f"{path}: {exc}") from exc


def _number(v) -> float:
    """A parameter value: JSON number or an exact string such as "-89/200"."""
    if isinstance(v, bool):
        raise TypeError("boolean parameter value")
    if isinstance(v, (int, float)):
        return float(v)
    return float(Fraction(v))


def _subs_name(path: str | None) -> str | None:
    return None if path is None else _read_json(path).get("name")


# -- commands -----------------------------------------------------------------
def cmd_focus(args) -> tuple[dict, int]:
    s = load_system(args.system)
    sub = Substitution.load(args.subs) if args.subs else None
    zeroth = str(s.delta.subs(sub.mapping) * 2 * as_poly("pi") if sub else s.delta * 2 * as_poly("pi"))
    results = [{"name": "2*pi*delta", "index": 0, "value": zeroth}]
    if not args.zeroth_only:
        fv = focus_values(s, args.order, subs=sub)
        results += [{"name": f"V_{m}", "index": m, "value": str(v)} for m, v in sorted(fv.values.items())]
    inputs = {"system": args.system, "order": args.order, "subs": args.subs, "zeroth_only": args.zeroth_only}
    if sub is not None and sub.denominator is not None:
        inputs["scaling"] = f"V_m multiplied by ({sub.denominator})^(m-1)"
    return _report("focus", inputs, results), EXIT_OK


def cmd_period(args) -> tuple[dict, int]:
    s = load_system(args.system)
    sub = Substitution.load(args.subs) if args.subs else None
    pc = period_constants(s, args.order, subs=sub)
    results = [{"name": f"T_{m}", "index": m, "value": str(v)} for m, v in sorted(pc.values.items())]
    inputs = {"system": args.system, "order": args.order, "subs": args.subs}
    discrepancies = []
    # a substitution naming the condition of the printed period list is compared with it
    if _subs_name(args.subs) == load_period().condition:
        rows = period_rows(numeric=args.arbitrate)
        results += [dict(r.to_dict(), name=r.claim) for r in rows]
        discrepancies = _discrepancies(rows)
    return _report("period", inputs, results, discrepancies), EXIT_OK


def cmd_verify(args) -> tuple[dict, int]:
    numeric = not args.no_numeric
    if args.all:
        rows = verify_all(numeric)
    elif args.condition in case_names():
        rows = case_rows(args.condition, numeric)
    elif args.condition == "first":
        rows = first_constant_rows()
    elif args.condition == "period":
        rows = period_rows(numeric)
    else:
        if args.condition not in condition_names("center") + condition_names("isochronous"):
            raise UnknownEntryError(f"unknown condition {args.condition!r}")
        rows = [condition_row(args.condition)]
    results = [r.to_dict() for r in rows]
    code = EXIT_FAIL if any(r.status == FAIL for r in rows) else EXIT_OK
    inputs = {"condition": args.condition, "all": args.all, "numeric": numeric}
    return _report("verify", inputs, results, _discrepancies(rows)), code


def cmd_eliminate(args) -> tuple[dict, int]:
    rec = cyclicity_pipeline(args.case)
    win = six_cycle_window(args.case)
    results = [{"name": "pipeline", **rec.to_dict()}, {"name": "window", **win.to_dict()}]
    disc = [{"claim": c.claim, "status": DISCREPANCY, **c.detail} for c in rec.discrepancies]
    disc += [{"claim": c.claim, "status": DISCREPANCY, **c.detail} for c in win.checks if not c.ok]
    return _report("eliminate", {"case": args.case}, results, disc), EXIT_OK


def cmd_roots(args) -> tuple[dict, int]:
    p = as_poly(args.poly)
    vs = p.variables()
    if len(vs) != 1:
        raise PreconditionError(f"need a univariate polynomial, got variables {vs}")
    if p.has_pi():
        raise PreconditionError("coefficients must be rational")
    roots = isolate_real_roots(p, args.precision)
    results = [
        {"index": i, "lo": str(r.lo), "hi": str(r.hi), "value": r.value, "exact": r.exact} for i, r in enumerate(roots)
    ]
    return _report("roots", {"poly": str(p), "variable": vs[0], "precision": args.precision}, results), EXIT_OK


def cmd_simulate(args) -> tuple[dict, int]:
    s = load_system(args.system)
    params = _read_json(args.params)
    params = params.get("params", params)
    try:
        params = {k: _number(v) for k, v in params.items()}
    except (TypeError, ValueError) as exc:
        raise SystemFormatError(f"{args.params}: {exc}") from exc
    if not 0 < args.hmin < args.hmax:
        raise PreconditionError("need 0 < hmin < hmax")
    inst = NumericInstance.from_system(s, params)
    res = displacement_scan(inst, args.hmin, args.hmax, args.grid, tol=args.tol)
    results = [{"h": h, "delta": d, "error": e} for h, d, e in zip(res.h, res.delta, res.error)]
    inputs = {
        "system": args.system,
        "params": args.params,
        "hmin": args.hmin,
        "hmax": args.hmax,
        "grid": args.grid,
        "tol": args.tol,
    }
    rep = _report("simulate", inputs, results)
    rep["summary"] = {"sign_changes": res.sign_changes, "roots": res.roots, "noise_floor": res.noise_floor}
    return rep, EXIT_OK


# -- output ---------------------------------------------------------------------
def _discrepancies(rows) -> list[dict]:
    out = []
    for r in rows:
        if r.status != "PASS":
            out.append({"claim": r.claim, "status": r.status, "citation": r.citation, "note": r.note})
    return out


def _report(command: str, inputs: dict, results: list, discrepancies: list | None = None) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "results": results,
        "discrepancies": discrepancies or [],
    }


def _short(v) -> str:
    if isinstance(v, float):
        return f"{v:.10g}"
    return v if isinstance(v, str) else json.dumps(v, default=str)


def render_text(rep: dict) -> str:
    lines = [f"# {rep['command']} (schema {rep['schema_version']})"]
    for k, v in rep["inputs"].items():
        lines.append(f"# {k}: {_short(v)}")
    for r in rep["results"]:
        if "status" in r:
            lines.append(f"{r['status']:<12} {r.get('claim', r.get('name'))}  [{r.get('citation', '')}]")
        elif "h" in r:
            lines.append(f"{r['h']:.10g}  {r['delta']:.17g}  {r['error']:.3g}")
        elif "value" in r and "name" in r:
            lines.append(f"{r['name']} = {r['value']}")
        else:
            lines.append("  ".join(f"{k}={_short(v)}" for k, v in r.items() if k not in ("f", "checks")))
            for c in r.get("checks", []):
                lines.append(f"  {'ok ' if c['ok'] else 'BAD'} {c['claim']}")
    for k, v in rep.get("summary", {}).items():
        lines.append(f"# {k}: {_short(v)}")
    if rep["discrepancies"]:
        lines.append("# discrepancies")
        for d in rep["discrepancies"]:
            note = f": {d['note']}" if d.get("note") else ""
            lines.append(f"  {d['status']} {d['claim']}{note}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qaswitch", description=__doc__.splitlines()[0])
    ap.add_argument("--format", choices=("json", "text"), default="json")
    # --format is accepted before or after the subcommand
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    sp = ap.add_subparsers(dest="command", required=True)
    _add = sp.add_parser
    sp.add_parser = lambda name, **kw: _add(name, parents=[fmt], **kw)

    for name, default in (("focus", 8), ("period", 6)):
        p = sp.add_parser(name)
        p.add_argument("system")
        p.add_argument("--order", type=_order, default=default)
        p.add_argument("--subs")
        if name == "focus":
            p.add_argument("--zeroth-only", action="store_true", help="report 2*pi*delta only")
        else:
            p.add_argument("--arbitrate", action="store_true", help="numeric arbitration of the printed list")

    p = sp.add_parser("verify")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--condition")
    g.add_argument("--all", action="store_true")
    p.add_argument("--no-numeric", action="store_true", help="skip numeric arbitration")

    p = sp.add_parser("eliminate")
    p.add_argument("--case", required=True, choices=("A1a", "A1b"))

    p = sp.add_parser("roots")
    p.add_argument("--poly", required=True)
    p.add_argument("--precision", type=_positive, default=1e-9)

    p = sp.add_parser("simulate")
    p.add_argument("system")
    p.add_argument("params")
    p.add_argument("--hmin", type=float, default=0.01)
    p.add_argument("--hmax", type=float, default=0.3)
    p.add_argument("--grid", type=int, default=30)
    p.add_argument("--tol", type=_positive, default=1e-12)
    return ap


COMMANDS = {
    "focus": cmd_focus,
    "period": cmd_period,
    "verify": cmd_verify,
    "eliminate": cmd_eliminate,
    "roots": cmd_roots,
    "simulate": cmd_simulate,
}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse: 0 for --help, 2 for usage errors
        return int(exc.code or 0)
    try:
        rep, code = COMMANDS[args.command](args)
    except (SystemFormatError, PolySyntaxError, UnknownEntryError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericGuardError as exc:
        print(f"numeric guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (PreconditionError, ZeroDivisionError) as exc:
        print(f"precondition: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    if args.format == "text":
        print(render_text(rep))
    else:
        print(json.dumps(rep, indent=2, default=str))
    return code


if __name__ == "__main__":
    sys.exit(main())
