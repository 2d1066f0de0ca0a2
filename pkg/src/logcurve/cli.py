"""Command-line front end.

    logcurve generate cycle_5 --output c5.json
    logcurve report --input c5.json --json
    logcurve residue "z/(z^2-1)" inf
    logcurve class --input banana.json --cocycle '{"forms": {...}}'
    logcurve verify --input c5.json --oracle 3 --flips 5 --units 1

Exit status: 0 success, 1 a verification check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .cohomology import Hypercocycle, h1_log_basis, hypercocycle_from_dict, normalize_cocycle
from .dual_graph import LogCurveModel, model_from_dict, model_to_dict
from .exact_arith import RatForm, as_point, fstr, parse_ratfunc, residue_at
from .families import generate
from .monodromy import monodromy_apply, monodromy_edge_vector
from .report import build_report, render_text, vector_json, verify

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read_text(path: Optional[str]) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc.strerror)) from None


def _load_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("%s is not valid JSON: %s" % (what, exc)) from None


def _load_curve(args) -> tuple[LogCurveModel, dict]:
    data = _load_json(_read_text(args.input), "curve description")
    return model_from_dict(data), data


def _emit(args, payload, text: str) -> None:
    if args.json:
        out = json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    else:
        out = text
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


# commands

def cmd_generate(args) -> int:
    model = generate(args.family, seed=args.seed)
    payload = model_to_dict(model)
    # the curve file is JSON either way
    args.json = True
    _emit(args, payload, "")
    return EXIT_OK


def _verify_kwargs(args) -> dict:
    return {"oracle": args.oracle, "flips": args.flips, "seed": args.units}


def cmd_report(args) -> int:
    model, _ = _load_curve(args)
    report = build_report(model, **_verify_kwargs(args))
    _emit(args, report, render_text(report))
    return EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_verify(args) -> int:
    model, _ = _load_curve(args)
    result = verify(model, **_verify_kwargs(args))
    _emit(args, result, render_text(result))
    return EXIT_OK if result["passed"] else EXIT_FAIL


def cmd_residue(args) -> int:
    w = RatForm(parse_ratfunc(args.form))
    try:
        point = as_point(args.point)
    except (ValueError, ZeroDivisionError):
        raise InputError("malformed point %r" % args.point) from None
    r = residue_at(w, point)
    _emit(args, {"form": str(w.coeff), "point": str(point), "residue": fstr(r)}, fstr(r) + "\n")
    return EXIT_OK


def _class_payload(model: LogCurveModel, c: Hypercocycle) -> dict:
    basis = h1_log_basis(model)
    coords = normalize_cocycle(model, basis, c)
    return {
        "basis": basis.labels(),
        "class": vector_json(coords),
        "residue_edge_vector": vector_json(monodromy_edge_vector(model, c)),
        "monodromy_image": vector_json(monodromy_apply(model, basis, c)),
    }


def cmd_class(args) -> int:
    model, data = _load_curve(args)
    if args.cocycle is not None:
        text = args.cocycle
        if not text.lstrip().startswith("{"):
            text = _read_text(text)
        raw = [_load_json(text, "hypercocycle")]
    else:
        raw = data.get("cocycles") or []
        if not raw:
            raise InputError("no hypercocycle given: pass --cocycle or add a \"cocycles\" list to the curve file")
    results = []
    for item in raw:
        results.append(_class_payload(model, hypercocycle_from_dict(model, item)))
    lines = []
    for k, r in enumerate(results):
        if len(results) > 1:
            lines.append("cocycle %d:" % k)
        lines.append("  basis:           " + " ".join(r["basis"]))
        lines.append("  class:           (" + ", ".join(r["class"]) + ")")
        lines.append("  monodromy image: (" + ", ".join(r["monodromy_image"]) + ")")
    payload = results[0] if len(results) == 1 else results
    _emit(args, payload, "\n".join(lines) + "\n")
    return EXIT_OK


def _io_flags(p: argparse.ArgumentParser, top: bool) -> None:
    # accepted before or after the subcommand; subparser copies must not clobber
    d = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    p.add_argument("--input", metavar="FILE", default=d(None), help="curve JSON (default: stdin)")
    p.add_argument("--output", metavar="FILE", default=d(None), help="write here instead of stdout")
    p.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="logcurve", description="Log de Rham cohomology and monodromy of nodal curves.")
    _io_flags(parser, True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit a built-in curve family as JSON")
    p.add_argument("family", help="chain_N, cycle_N, banana_M, theta or random(V,E,seed=S)")
    p.add_argument("--seed", type=int, default=0)
    _io_flags(p, False)
    p.set_defaults(func=cmd_generate)

    for name, func, help_ in (("report", cmd_report, "dimensions, operators and all checks"),
                              ("verify", cmd_verify, "run the verification suite only")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--oracle", type=int, default=2, metavar="D",
                       help="compare the truncation oracle at D and D+1 (default 2)")
        p.add_argument("--flips", type=int, default=3, metavar="K", help="random orientation flip sets (default 3)")
        p.add_argument("--units", type=int, default=0, metavar="SEED", help="seed for random units and forms")
        _io_flags(p, False)
        p.set_defaults(func=func)

    p = sub.add_parser("residue", help="residue of (FORM) dz at POINT")
    p.add_argument("form", help='dz-coefficient, e.g. "z/(z^2-1)"')
    p.add_argument("point", help='rational or "inf"')
    _io_flags(p, False)
    p.set_defaults(func=cmd_residue)

    p = sub.add_parser("class", help="coordinates of a hypercocycle class and its monodromy image")
    p.add_argument("--cocycle", metavar="JSON_OR_FILE",
                   help="hypercocycle object or a file holding one (default: the curve's \"cocycles\")")
    _io_flags(p, False)
    p.set_defaults(func=cmd_class)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "oracle", 1) < 1:
        parser.error("--oracle must be at least 1")
    if getattr(args, "flips", 0) < 0:
        parser.error("--flips must be nonnegative")
    try:
        return args.func(args)
    except (InputError, ValueError, ZeroDivisionError) as exc:
        # ModelError, ArithError and CocycleError all land here
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
