"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

import mpmath

from .central import CentralRequest, central_value
from .characters import characters_mod, parse_character
from .formula_one import OMEGAS, EvalRequest, eval_formula_I
from .formula_two import eval_formula_II
from .oracle import OracleConfig, numeric_multiple_L
from .sequences import bernoulli, euler_number, gen_bernoulli, lucas
from .suites import suite_cross, suite_identities, suite_tables

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _add_point(p: argparse.ArgumentParser) -> None:
    p.add_argument("--omega", choices=OMEGAS, default="bullet")
    p.add_argument("--d", type=int, required=True, help="depth")
    p.add_argument("--k", type=int, required=True, help="kappa = 2k + parity of the character")
    p.add_argument("--char", default="principal:1",
                   help="principal:N, kronecker:D or mod:N:index:i")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="multizeta",
                                     description="Exact multiple Dirichlet L-values at equal integer arguments.")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="value at equal positive arguments (both engines must agree)")
    _add_point(p)
    p.add_argument("--digits", type=int, default=None, help="append a numeric rendering")

    p = sub.add_parser("central", help="central limit value at equal non-positive arguments")
    _add_point(p)

    p = sub.add_parser("oracle", help="truncated floating-point series with an error bound")
    _add_point(p)
    p.add_argument("--cutoff", type=int, default=10**4)
    p.add_argument("--digits", type=int, default=15)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=["section4", "identities", "tables", "cross", "all"])
    p.add_argument("--kmax", type=int, default=6)
    p.add_argument("--dmax", type=int, default=None)
    p.add_argument("--nmax", type=int, default=7)

    p = sub.add_parser("chars", help="list Dirichlet characters")
    p.add_argument("--nmax", type=int, default=None, help="list every modulus up to this bound")
    p.add_argument("--char", default=None, help="describe one character")

    p = sub.add_parser("seq", help="Bernoulli, Euler, generalized Bernoulli or Lucas numbers")
    p.add_argument("kind", choices=["bernoulli", "euler", "gen-bernoulli", "lucas"])
    p.add_argument("--nmax", type=int, default=10)
    p.add_argument("--char", default="principal:1")

    for name, action in sub.choices.items():
        action.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                            help="machine-readable output")
    return parser


def _char(label: str):
    try:
        return parse_character(label)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _cmd_eval(args) -> int:
    try:
        req = EvalRequest(args.omega, args.d, args.k, _char(args.char))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    one, two = eval_formula_I(req), eval_formula_II(req)
    if one != two:
        print("engine disagreement", file=sys.stderr)
        print(json.dumps({"formula_I": one.to_json(), "formula_II": two.to_json()}, indent=2), file=sys.stderr)
        return EXIT_FAIL
    if args.json:
        print(json.dumps(one.to_json(args.digits or 20), indent=2))
    else:
        line = one.format()
        if args.digits:
            z = one.to_complex(args.digits + 5)
            line += f"  ~ {mpmath.nstr(z.real, args.digits)}"
            if z.imag:
                line += f" + {mpmath.nstr(z.imag, args.digits)}*i"
        print(line)
    return EXIT_OK


def _cmd_central(args) -> int:
    try:
        req = CentralRequest(args.omega, args.d, args.k, _char(args.char))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    value = central_value(req).minimal()
    if args.json:
        print(json.dumps({"value": value.to_json()}, indent=2))
    else:
        print(value.format())
    return EXIT_OK


def _cmd_oracle(args) -> int:
    chi = _char(args.char)
    kappa = 2 * args.k + chi.parity
    if args.d < 1 or kappa < 1:
        raise UsageError("need d >= 1 and kappa >= 1")
    grouping = "full-period" if kappa == 1 else "none"
    try:
        res = numeric_multiple_L(args.omega, [kappa] * args.d, [chi] * args.d,
                                 OracleConfig(cutoff=args.cutoff, digits=args.digits, grouping=grouping))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.json:
        print(json.dumps(res.to_json(), indent=2))
    else:
        print(f"{mpmath.nstr(res.value, args.digits)}  (error <= {res.tail_bound:.3e}, cutoff {res.cutoff})")
    return EXIT_OK


def _cmd_verify(args) -> int:
    if min(args.kmax, args.nmax) < 1 or (args.dmax is not None and args.dmax < 1):
        raise UsageError("bounds must be at least 1")
    reports = []
    if args.suite in ("section4", "identities", "all"):
        reports.append(suite_identities(kmax=args.kmax, dmax=args.dmax or 8, n_max=args.nmax,
                                        euler_kmax=min(args.kmax, 5)))
    if args.suite in ("tables", "all"):
        reports.append(suite_tables(dmax=args.dmax or 4))
    if args.suite in ("cross", "all"):
        reports.append(suite_cross(n_max=args.nmax, dmax=min(args.dmax or 3, 3)))
    ok = all(r.passed for r in reports)
    if args.json:
        print(json.dumps([r.to_json() for r in reports], indent=2, sort_keys=True))
    else:
        for r in reports:
            t = r.totals
            print(f"{r.name}: {t['passed']}/{t['total']} passed")
            for c in r.failures():
                print(f"  FAIL {c.case_id}: {c.lhs} != {c.rhs} ({c.deviation})")
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_chars(args) -> int:
    if args.char:
        chis = [_char(args.char)]
    elif args.nmax:
        if args.nmax < 1:
            raise UsageError("--nmax must be at least 1")
        chis = [c for n in range(1, args.nmax + 1) for c in characters_mod(n)]
    else:
        raise UsageError("give --nmax or --char")
    rows = []
    for c in chis:
        rows.append({"label": c.label, "modulus": c.modulus, "order": c.order, "parity": c.parity,
                     "conductor": c.conductor, "primitive": c.is_primitive()})
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        for r in rows:
            print(f"{r['label']:<22} order {r['order']:<3} parity {r['parity']}  conductor {r['conductor']}")
    return EXIT_OK


def _cmd_seq(args) -> int:
    if args.nmax < 0:
        raise UsageError("--nmax must be non-negative")
    if args.kind == "bernoulli":
        values = [_frac(bernoulli(n)) for n in range(args.nmax + 1)]
    elif args.kind == "euler":
        values = [str(euler_number(n)) for n in range(args.nmax + 1)]
    elif args.kind == "lucas":
        values = [str(lucas(n)) for n in range(1, args.nmax + 1)]
    else:
        chi = _char(args.char)
        values = [gen_bernoulli(n, chi).minimal().format() for n in range(args.nmax + 1)]
    if args.json:
        print(json.dumps({"kind": args.kind, "values": values}, indent=2))
    else:
        print("\n".join(values))
    return EXIT_OK


_COMMANDS = {"eval": _cmd_eval, "central": _cmd_central, "oracle": _cmd_oracle,
             "verify": _cmd_verify, "chars": _cmd_chars, "seq": _cmd_seq}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
