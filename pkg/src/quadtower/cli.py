"""Command line: ``quadtower verify | series | symbol | example1``."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import funcfield as ff
from .exactfield import parse_rational
from .symbols import Place, global_product_check, hilbert_symbol
from .tower import SUITES, example1_suite, run_suites
from .twogroup import fingerprint, group_from_spec, structural_checks, tower_series


def _pair(text: str) -> tuple[Fraction, Fraction]:
    b, c = text.split(",")
    return parse_rational(b), parse_rational(c)


def cmd_verify(args) -> int:
    rep = run_suites(args.suite, args.fragment)
    print("\n".join(rep.lines()))
    n_fail = sum(not c.passed for c in rep.checks)
    print(f"{len(rep.checks) - n_fail}/{len(rep.checks)} checks passed")
    if args.json:
        rep.write_json(args.json)
    return 0 if rep.passed else 1


def cmd_series(args) -> int:
    G = group_from_spec(args.group)
    s = tower_series(G)
    if args.json:
        out = s.to_json()
        out["fingerprint"] = fingerprint(G).to_json()
        out["structural"] = {c.name: c.passed for c in structural_checks(G, s).checks}
        print(json.dumps(out, indent=2))
        return 0
    print("\n".join(s.lines()))
    print(f"fingerprint: {fingerprint(G)}")
    for c in structural_checks(G, s).checks:
        print(f"  {'PASS' if c.passed else 'FAIL'}  {c.name}")
    return 0


def cmd_symbol(args) -> int:
    a, b = parse_rational(args.a), parse_rational(args.b)
    if args.place is not None:
        v = Place.parse(args.place)
        s = hilbert_symbol(a, b, v)
        if args.json:
            print(json.dumps({"a": str(a), "b": str(b), "places": [{"place": str(v), "symbol": s}]}))
        else:
            print(f"({a}, {b})_{v} = {s:+d}")
        return 0
    pc = global_product_check(a, b)
    if args.json:
        print(json.dumps(pc.to_json()))
        return 0
    for v, s in pc.symbols:
        print(f"{str(v):>6}  {s:+d}")
    print(f"product {pc.product:+d}")
    return 0


def cmd_example1(args) -> int:
    k = ff.ConstantField.parse(args.constants)
    if args.square_class:
        t = ff.parse_poly(args.square_class, k)
        print(ff.square_class_of(t).vector)
        return 0
    rs = [parse_rational(r) for r in args.r] if args.r is not None else list(ff.DEFAULT_R)
    bcs = [_pair(x) for x in args.bc] if args.bc is not None else list(ff.DEFAULT_BC)
    rep = example1_suite(rs, bcs, k, stress=not args.no_stress, attempt_d4=not args.no_d4)
    print("\n".join(rep.lines()))
    if args.trace:
        print("\n".join(rep.by_name("claim1-parity-trace").witness))
    if args.json:
        rep.write_json(args.json)
    return 0 if rep.passed else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quadtower", description="Quadratic towers, 2-group series and their checks.")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the verification suites")
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.add_argument("--fragment", help='tower fragment, e.g. "Q{2,-1}", "F3", "Q(i)(t)"')
    v.add_argument("--json", metavar="PATH", help="write the report as JSON")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("series", help="the series G(n+1) = G(n)^2 [G(n), G] of a 2-group")
    s.add_argument("--group", required=True, help='catalog name (D4, Q8, SD16, ...) or cycles "(1 2 3 4),(1 3)"')
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_series)

    h = sub.add_parser("symbol", help="Hilbert symbols (a, b) over Q")
    h.add_argument("a")
    h.add_argument("b")
    h.add_argument("--place", help='"real" or a prime')
    h.add_argument("--json", action="store_true")
    h.set_defaults(func=cmd_symbol)

    e = sub.add_parser("example1", help="square classes over k(t) and the intersection checks")
    e.add_argument("--constants", default="Q(i)", help="constant field: Q, Q(i), Q(sqrt(m))")
    e.add_argument("--r", nargs="*", help="linear samples t + r")
    e.add_argument("--bc", nargs="*", help="quadratic samples t^2 + b t + c given as b,c")
    e.add_argument("--square-class", metavar="POLY", help='print the square class of a polynomial, e.g. "t^2+1"')
    e.add_argument("--trace", action="store_true", help="print the parity trace")
    e.add_argument("--no-stress", action="store_true")
    e.add_argument("--no-d4", action="store_true")
    e.add_argument("--json", metavar="PATH")
    e.set_defaults(func=cmd_example1)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
