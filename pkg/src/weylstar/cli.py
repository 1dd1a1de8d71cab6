"""Command-line interface.

Every subcommand prints one deterministic JSON object on stdout.  Exit
statuses: 0 success, 2 parse/validation error, 3 singular point, 4
numerical failure.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import serialize
from .errors import EvalError, WeylStarError
from .exprs import evaluate
from .gauss import GaussianElement
from .intertwine import intertwine_gauss, intertwine_poly
from .ordering import OrderingK, preset, PRESET_NAMES
from .params import Params
from .polar import (continue_sheet, double_cover_rotation, polar_element,
                    reflect, uv_rotation_family)
from .starexp import singular_scan, star_exp_quadratic


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise EvalError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise EvalError(f"invalid JSON in {path}: {exc}") from exc


def _ordering(spec: str, m: int) -> OrderingK:
    if spec in PRESET_NAMES:
        return preset(spec, m)
    if spec.startswith("file:"):
        return OrderingK(serialize.matrix_from_json(_load_json(spec[5:])))
    raise EvalError(
        f"ordering must be one of {PRESET_NAMES} or file:K.json, got {spec!r}")


def _parse_t(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]))
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise EvalError(f"invalid --t value {text!r}") from exc
    raise EvalError(f"invalid --t value {text!r}")


def _emit(obj) -> int:
    sys.stdout.write(serialize.dumps(obj))
    return 0


# -- subcommand handlers -----------------------------------------------------

def _cmd_starprod(args) -> int:
    p = Params(args.m, args.hbar)
    ordering = _ordering(args.ordering, p.m)
    left = evaluate(args.exprs[0], p, ordering)
    right = evaluate(args.exprs[1], p, ordering)
    from .exprs import _star_values
    return _emit(serialize.value_to_json(_star_values(left, right, ordering, p)))


def _cmd_starexp(args) -> int:
    p = Params(args.m, args.hbar)
    ordering = _ordering(args.ordering, p.m)
    a = serialize.matrix_from_json(_load_json(args.A))
    t = _parse_t(args.t)
    result = star_exp_quadratic(a, ordering, p, t)
    rep = result.representative
    trivial = t == 0 or np.abs(a).max(initial=0.0) == 0.0
    out = serialize.gaussian_to_json(
        GaussianElement(rep.g, rep.Q), two_valued=not trivial)
    out["kind"] = "gaussian"
    out["sheet"] = result.sheet
    return _emit(out)


def _cmd_intertwine(args) -> int:
    p = Params(args.m, args.hbar)
    ord_from = _ordering(getattr(args, "from"), p.m)
    ord_to = _ordering(args.to, p.m)
    if args.poly:
        f = serialize.poly_from_json(_load_json(args.poly), p.n)
        return _emit(serialize.value_to_json(intertwine_poly(f, ord_from, ord_to, p)))
    g = serialize.gaussian_from_json(_load_json(args.gauss))
    return _emit(serialize.value_to_json(intertwine_gauss(g, ord_from, ord_to, p)))


def _cmd_polar(args) -> int:
    p = Params(args.m, args.hbar)
    a = serialize.vector_from_json(_load_json(args.a))
    pe = polar_element(a, p)
    out = serialize.gaussian_to_json(
        GaussianElement(pe.representative.g, pe.representative.Q), two_valued=True)
    out["kind"] = "gaussian"
    return _emit(out)


def _cmd_reflect(args) -> int:
    a = serialize.vector_from_json(_load_json(args.a))
    b = serialize.vector_from_json(_load_json(args.b))
    out = {"kind": "vector", "v": serialize.vector_to_json(reflect(a, b)),
           "two_valued": False}
    return _emit(out)


def _cmd_double_cover(args) -> int:
    a = serialize.vector_from_json(_load_json(args.a))
    b = serialize.vector_from_json(_load_json(args.b))
    rot = double_cover_rotation(a, b)
    out = {"kind": "matrix", "R": serialize.matrix_to_json(rot),
           "two_valued": False}
    return _emit(out)


def _cmd_continue_path(args) -> int:
    spec = _load_json(args.family)
    p = Params(int(spec["m"]), float(spec.get("hbar", 1.0)))
    ordering = _ordering(spec.get("ordering", "standard"), p.m)
    t_end = serialize.parse_cnum(spec["t_end"])
    path = _load_json(args.path)
    if not isinstance(path, list):
        raise EvalError("path file must contain a JSON list of samples")
    kind = spec.get("family", "uv-rotation")
    if kind == "uv-rotation":
        family = uv_rotation_family(p)
    elif kind == "explicit":
        mats = [serialize.matrix_from_json(mj) for mj in spec["A_list"]]
        if len(mats) != len(path):
            raise EvalError("A_list and path must have the same length")
        samples = [float(s) for s in path]

        def family(s: float):
            # piecewise-linear interpolation between the listed matrices
            if s <= samples[0]:
                return mats[0]
            if s >= samples[-1]:
                return mats[-1]
            for i in range(len(samples) - 1):
                if samples[i] <= s <= samples[i + 1]:
                    w = (s - samples[i]) / (samples[i + 1] - samples[i])
                    return (1 - w) * mats[i] + w * mats[i + 1]
            return mats[-1]
    else:
        raise EvalError(f"unknown family kind {kind!r}")
    sheet = continue_sheet(family, ordering, p, t_end, path)
    out = {
        "kind": "sheet_path",
        "samples": [float(s) for s in sheet.samples],
        "branch_values": [serialize.cnum(v) for v in sheet.branch_values],
        "net_sign": sheet.net_sign,
        "two_valued": True,
    }
    return _emit(out)


def _cmd_scan_singular(args) -> int:
    spec = _load_json(args.region)
    p = Params(args.m, args.hbar)
    ordering = _ordering(args.ordering, p.m)
    a = serialize.matrix_from_json(_load_json(args.A))
    re_lo, re_hi = (float(x) for x in spec["re"])
    im_lo, im_hi = (float(x) for x in spec.get("im", [0.0, 0.0]))
    n_re, n_im = (int(x) for x in spec.get("grid", [200, 1]))
    points = singular_scan(a, ordering, p, (re_lo, re_hi, im_lo, im_hi),
                           (n_re, n_im))
    out = {"kind": "singular_points",
           "points": [serialize.cnum(z) for z in points],
           "two_valued": False}
    return _emit(out)


def _cmd_verify(args) -> int:
    from .acceptance import run_all
    report = run_all()
    sys.stdout.write(serialize.dumps(report))
    return 0 if report["all_passed"] else 4


# -- argument wiring -----------------------------------------------------------

def _add_common(sp, ordering_flag=True):
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--hbar", type=float, default=1.0)
    if ordering_flag:
        sp.add_argument("--ordering", default="weyl")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weylstar",
        description="Star products, intertwiners, star exponentials and "
                    "polar elements for the Weyl algebra over C.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("starprod", help="star product of two expressions")
    _add_common(sp)
    sp.add_argument("exprs", nargs=2, metavar="EXPR")
    sp.set_defaults(handler=_cmd_starprod)

    sp = sub.add_parser("starexp", help="star exponential of a quadratic form")
    _add_common(sp)
    sp.add_argument("--A", required=True, help="path to the symmetric matrix JSON")
    sp.add_argument("--t", required=True, help="time, RE or RE,IM")
    sp.set_defaults(handler=_cmd_starexp)

    sp = sub.add_parser("intertwine", help="carry a value between orderings")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--hbar", type=float, default=1.0)
    sp.add_argument("--from", required=True)
    sp.add_argument("--to", required=True)
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--poly")
    group.add_argument("--gauss")
    sp.set_defaults(handler=_cmd_intertwine)

    sp = sub.add_parser("polar", help="polar element for a sphere vector")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--hbar", type=float, default=1.0)
    sp.add_argument("--a", required=True)
    sp.set_defaults(handler=_cmd_polar)

    sp = sub.add_parser("reflect", help="reflection of b with respect to a")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.set_defaults(handler=_cmd_reflect)

    sp = sub.add_parser("double-cover", help="rotation of two composed reflections")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.set_defaults(handler=_cmd_double_cover)

    sp = sub.add_parser("continue-path", help="sheet continuation along a family")
    sp.add_argument("--family", required=True)
    sp.add_argument("--path", required=True)
    sp.set_defaults(handler=_cmd_continue_path)

    sp = sub.add_parser("scan-singular", help="scan for singular points")
    _add_common(sp)
    sp.add_argument("--A", required=True)
    sp.add_argument("--region", required=True)
    sp.set_defaults(handler=_cmd_scan_singular)

    sp = sub.add_parser("verify", help="run the acceptance suite")
    sp.set_defaults(handler=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.handler(args)
    except WeylStarError as exc:
        sys.stdout.write(serialize.dumps(
            {"error": {"type": type(exc).__name__, "message": str(exc)}}))
        return exc.exit_code
    except ValueError as exc:
        sys.stdout.write(serialize.dumps(
            {"error": {"type": "ValueError", "message": str(exc)}}))
        return 2


if __name__ == "__main__":
    sys.exit(main())
