"""Command-line front end: ``codekit {construct,verify,gauss,bounds,sweep}``.

Exit codes: 0 when every requested verdict passes, 1 on a verification
mismatch, 2 on usage errors or invalid parameters.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bounds import bound_report, cm_terms
from .charsum import gauss_sum_closed, gauss_sum_numeric, semiprimitive_exponent
from .code import (
    DEFAULT_MAX_ENUM_BITS,
    format_generator,
    is_self_orthogonal,
    macwilliams_dual,
    read_generator,
    weight_distribution_brute,
    weight_divisor,
)
from .errors import BudgetExceeded, CodekitError, ParameterError, RankDeficiency, UnsupportedCase
from .family import FamilyCase, classify_case, sweep_towers, verify_family
from .field import DEFAULT_MAX_FIELD_BITS, build_tower, prime_power
from .locality import locality_search

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _tower_args(p: argparse.ArgumentParser, need_m12: bool = True) -> None:
    p.add_argument("--p", type=int, required=True, help="characteristic")
    p.add_argument("--s", type=int, default=1, help="q = p^s")
    p.add_argument("--m", type=int, required=True)
    if need_m12:
        p.add_argument("--m1", type=int, required=True)
        p.add_argument("--m2", type=int, required=True)


def _budget_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-field-bits", type=int, default=DEFAULT_MAX_FIELD_BITS)
    p.add_argument("--max-enum-bits", type=int, default=DEFAULT_MAX_ENUM_BITS)


def _output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--out", help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="codekit", description="Trace-norm code family verifier")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", help="write the generator matrix of a family code")
    _tower_args(c)
    _budget_args(c)
    c.add_argument("--out", help="generator file (default stdout)")

    v = sub.add_parser("verify", help="verify a family code, or analyse a generator file")
    _tower_args_optional(v)
    v.add_argument("--generator", help="analyse this generator file instead of a family code")
    v.add_argument("--rules", action="store_true", help="include repair rules in the report")
    v.add_argument("--no-locality", action="store_true")
    _budget_args(v)
    _output_args(v)

    g = sub.add_parser("gauss", help="compare numeric and closed-form Gauss sums")
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--case", choices=("quadratic", "semiprimitive"), required=True)
    g.add_argument("--s", type=int, help="quadratic: field GF(p^s)")
    g.add_argument("--N", type=int, help="semiprimitive: character order")
    g.add_argument("--gamma", type=int, default=1, help="semiprimitive: r = p^(2 j gamma)")
    g.add_argument("--power", type=int, default=1, help="semiprimitive: evaluate phi^power")
    g.add_argument("--tol", type=float, default=1e-6)
    _budget_args(g)
    _output_args(g)

    b = sub.add_parser("bounds", help="Griesmer / sphere-packing / locality bounds")
    for name in ("n", "k", "d", "q"):
        b.add_argument(f"--{name}", type=int, required=True)
    b.add_argument("--locality", type=int, default=2)
    _output_args(b)

    w = sub.add_parser("sweep", help="verify every (m1, m2) for given p, s, m")
    _tower_args(w, need_m12=False)
    w.add_argument("--no-locality", action="store_true")
    _budget_args(w)
    _output_args(w)
    return parser


def _tower_args_optional(p: argparse.ArgumentParser) -> None:
    for name in ("p", "m", "m1", "m2"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--s", type=int, default=1)


def _emit(args, payload, text: str) -> None:
    body = json.dumps(payload, sort_keys=True, indent=2) + "\n" if args.format == "json" else text
    if getattr(args, "out", None):
        Path(args.out).write_text(body)
    else:
        sys.stdout.write(body)


def _tower(args):
    return build_tower(args.p, args.s, args.m, args.m1, args.m2, max_field_bits=args.max_field_bits)


# --------------------------------------------------------------------------
# subcommands

def cmd_construct(args) -> int:
    from .code import build_augmented_code

    code = build_augmented_code(_tower(args))
    text = format_generator(code)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _report_text(rep: dict) -> str:
    lines = [f"{k}: {json.dumps(rep[k], sort_keys=True)}" for k in sorted(rep)]
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    if args.generator:
        return _verify_generator(args)
    missing = [f"--{n}" for n in ("p", "m", "m1", "m2") if getattr(args, n) is None]
    if missing:
        raise UsageError(f"verify needs {', '.join(missing)} (or --generator FILE)")
    tower = _tower(args)
    rep = verify_family(tower, max_enum_bits=args.max_enum_bits, with_locality=not args.no_locality,
                        with_rules=args.rules)
    payload = rep.to_json()
    _emit(args, payload, _report_text(payload))
    return EXIT_OK if rep.passed else EXIT_MISMATCH


def _verify_generator(args) -> int:
    code = read_generator(args.generator)
    if code.rank() != code.k:
        raise RankDeficiency(f"generator rank {code.rank()} < k = {code.k}")
    wd = weight_distribution_brute(code, max_enum_bits=args.max_enum_bits)
    dual = macwilliams_dual(wd, code.n, code.k, code.q)
    d = wd.min_distance()
    payload = {
        "q": code.q,
        "n": code.n,
        "k": code.k,
        "d": d,
        "weight_enumerator": wd.enumerator(),
        "self_orthogonal": is_self_orthogonal(code),
        "divisor": weight_divisor(wd),
        "dual_min_distance": dual.min_distance() if dual.nonzero_weights() else None,
        "locality": None if args.no_locality else locality_search(code, 2),
        "bounds": bound_report(code.n, code.k, d, code.q).to_json() if code.n > 2 else {},
    }
    _emit(args, payload, _report_text(payload))
    return EXIT_OK


def cmd_gauss(args) -> int:
    p = args.p
    if args.case == "quadratic":
        if args.s is None:
            raise UsageError("quadratic case needs --s")
        tower = build_tower(p, 1, args.s, 1, 1, max_field_bits=args.max_field_bits)
        closed = gauss_sum_closed("quadratic", p=p, s=args.s)
        numeric = gauss_sum_numeric(tower, args.s, (p**args.s - 1) // 2)
        info = {"p": p, "s": args.s}
    else:
        if args.N is None:
            raise UsageError("semiprimitive case needs --N")
        closed = gauss_sum_closed("semiprimitive", p=p, N=args.N, gamma=args.gamma, power=args.power)
        j = semiprimitive_exponent(p, args.N)
        deg = 2 * j * args.gamma
        tower = build_tower(p, 1, deg, 1, 1, max_field_bits=args.max_field_bits)
        numeric = gauss_sum_numeric(tower, deg, args.power * (p**deg - 1) // args.N)
        info = {"p": p, "N": args.N, "gamma": args.gamma, "power": args.power, "j": j, "r": p**deg}
    closed = complex(closed)
    err = abs(numeric - closed) / max(abs(closed), 1.0)
    ok = err <= args.tol
    payload = dict(info, case=args.case, closed=[closed.real, closed.imag], numeric=[numeric.real, numeric.imag],
                   relative_error=err, match=ok)
    _emit(args, payload, _report_text(payload))
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_bounds(args) -> int:
    if min(args.n, args.k, args.d) < 1 or args.d > args.n or args.k > args.n:
        raise ParameterError("need 1 <= k <= n and 1 <= d <= n")
    prime_power(args.q)
    rep = bound_report(args.n, args.k, args.d, args.q, args.locality)
    payload = rep.to_json()
    payload["cm_terms"] = [list(t) for t in cm_terms(args.n, args.d, args.q, args.locality)]
    text = _report_text({k: v for k, v in payload.items() if k != "cm_terms"})
    _emit(args, payload, text)
    return EXIT_OK


def cmd_sweep(args) -> int:
    rows = []
    status = EXIT_OK
    for m1, m2 in sweep_towers(args.p, args.s, args.m):
        row = {"m1": m1, "m2": m2}
        try:
            tower = build_tower(args.p, args.s, args.m, m1, m2, max_field_bits=args.max_field_bits)
            row["case"] = classify_case(tower).value
            rep = verify_family(tower, max_enum_bits=args.max_enum_bits, with_locality=not args.no_locality)
            row.update(n=rep.n, k=rep.k, d=rep.d, match=rep.match, passed=rep.passed,
                       weight_enumerator=rep.weight_enumerator, locality=rep.locality, flags=rep.flags)
            if not rep.passed:
                status = EXIT_MISMATCH
        except (RankDeficiency, BudgetExceeded, UnsupportedCase) as exc:
            row.update(skipped=f"{type(exc).__name__}: {exc}")
        rows.append(row)
    payload = {"p": args.p, "s": args.s, "m": args.m, "rows": rows}
    head = f"{'m1':>3} {'m2':>3} {'case':<12} {'n':>6} {'k':>3} {'d':>6} {'match':<6} {'loc':>3}  status"
    lines = [head]
    for r in rows:
        if "skipped" in r:
            lines.append(f"{r['m1']:>3} {r['m2']:>3} {r.get('case', '-'):<12} skipped ({r['skipped']})")
            continue
        st = "ok" if r["passed"] else "MISMATCH"
        if r["flags"]:
            st += " [flagged]"
        lines.append(f"{r['m1']:>3} {r['m2']:>3} {r['case']:<12} {r['n']:>6} {r['k']:>3} {r['d']:>6} "
                     f"{str(r['match']):<6} {str(r['locality']):>3}  {st}")
    _emit(args, payload, "\n".join(lines) + "\n")
    return status


COMMANDS = {"construct": cmd_construct, "verify": cmd_verify, "gauss": cmd_gauss, "bounds": cmd_bounds,
            "sweep": cmd_sweep}


def run_command(argv: list[str]) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"codekit: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParameterError, BudgetExceeded, UnsupportedCase, RankDeficiency) as exc:
        print(f"codekit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CodekitError as exc:
        print(f"codekit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except OSError as exc:
        print(f"codekit: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
