"""sha-scope: command-line front end.

Every subcommand prints one JSON document on standard output. Output is
deterministic: keys sorted, fixed separators, integers with absolute value
below 2^53 as JSON numbers and larger ones as decimal strings, rationals as
{"num": ..., "den": ...} objects.

Exit codes: 0 success, 2 domain error, 3 budget/ceiling error, 64 usage.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from fractions import Fraction

from . import curves, divpoly, ffcurve, galoisrules, liftkit, numfield, torsionq
from .errors import BudgetError, DomainError, ShaScopeError
from .poly import ZZ, ExactPoly, MPoly

_JSON_INT_LIMIT = 2**53


def _enc(x):
    if x is None or isinstance(x, (bool, str)):
        return x
    if isinstance(x, int):
        return x if abs(x) < _JSON_INT_LIMIT else str(x)
    if isinstance(x, Fraction):
        return {"num": _enc(x.numerator), "den": _enc(x.denominator)}
    if isinstance(x, ExactPoly):
        return [_enc(c) for c in x.coeffs]
    if isinstance(x, MPoly):
        return repr(x)
    if dataclasses.is_dataclass(x):
        return {f.name: _enc(getattr(x, f.name)) for f in dataclasses.fields(x)}
    if isinstance(x, dict):
        return {str(k): _enc(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_enc(v) for v in x]
    if isinstance(x, float):
        return repr(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(_enc(obj), sort_keys=True, separators=(",", ":")))
    sys.stdout.write("\n")


def _parse_curve(text: str):
    parts = [s.strip() for s in text.split(",")]
    try:
        nums = [int(s) for s in parts]
    except ValueError as exc:
        raise DomainError(f"curve coefficients must be integers: {text!r}") from exc
    if len(nums) == 2:
        return curves.ShortModel(*nums)
    if len(nums) == 5:
        return curves.LongModel(*nums)
    raise DomainError("--curve takes 'A,B' or 'a1,a2,a3,a4,a6'")


def _short(model) -> curves.ShortModel:
    if isinstance(model, curves.LongModel):
        return curves.to_short(model)
    return model


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(64)


def _build_parser() -> _Parser:
    top = _Parser(prog="sha-scope", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, *, curve="required", **flags):
        p = sub.add_parser(name)
        if curve:
            p.add_argument(
                "--curve", required=curve == "required", help="'A,B' or 'a1,a2,a3,a4,a6'"
            )
        p.add_argument("--effort", type=int, default=50, help="factoring budget")
        for flag, kw in flags.items():
            p.add_argument("--" + flag.replace("_", "-"), **kw)
        return p

    cmd("invariants")
    cmd("reduce", p=dict(type=int, required=True))
    cmd("bad-primes")
    cmd(
        "divpoly",
        curve="optional",
        n=dict(type=int, required=True),
        symbolic=dict(action="store_true"),
    )
    cmd("verify-identities", curve=False, max_n=dict(type=int, default=12))
    cmd("ffgroup", p=dict(type=int, required=True), ell=dict(type=int, default=None))
    cmd("torsion")
    cmd("cor-traces", ell=dict(type=int, required=True), n=dict(type=int, default=1))
    cmd(
        "alpha-trace",
        ell=dict(type=int, required=True),
        n=dict(type=int, default=1),
        step8=dict(action="store_true"),
    )
    cmd("lift", p=dict(type=int, required=True), ell=dict(type=int, required=True))
    cmd("exceptional", scan_bound=dict(type=int, default=10**4))
    return top


def _render_symbolic(poly: ExactPoly) -> str:
    terms = []
    for i in range(poly.degree(), -1, -1):
        c = poly.coeff(i)
        if poly.ring.is_zero(c):
            continue
        cs = repr(c) if not isinstance(c, int) else str(c)
        if i == 0:
            terms.append(cs)
        elif cs == "1":
            terms.append("X" if i == 1 else f"X^{i}")
        else:
            terms.append(f"({cs})*X" if i == 1 else f"({cs})*X^{i}")
    return " + ".join(terms) if terms else "0"


def _run(args) -> None:
    if args.command == "invariants":
        model = _parse_curve(args.curve)
        _emit(curves.invariants(model))

    elif args.command == "reduce":
        model = _short(_parse_curve(args.curve))
        _emit(curves.reduction_report(model, args.p))

    elif args.command == "bad-primes":
        model = _short(_parse_curve(args.curve))
        reports = curves.bad_primes(model, effort=args.effort)
        minimized, fac = curves.delta_prime_factorization(model, effort=args.effort)
        _emit(
            {
                "minimized": [minimized.A, minimized.B],
                "delta_prime_factors": {str(p): e for p, e in fac.factors},
                "reports": reports,
            }
        )

    elif args.command == "divpoly":
        if args.symbolic:
            table = divpoly.symbolic_table()
            _emit({"n": args.n, "f": _render_symbolic(table.f(args.n))})
        else:
            if args.curve is None:
                raise DomainError("--curve required without --symbolic")
            model = _short(_parse_curve(args.curve))
            table = divpoly.DivisionTable(ZZ, model.A, model.B)
            _emit({"n": args.n, "coeffs": table.f(args.n)})

    elif args.command == "verify-identities":
        table = divpoly.symbolic_table()
        lemma5 = all(divpoly.check_lemma5(table, n) for n in range(1, args.max_n + 1))
        eq46 = divpoly.verify_eq46(table)
        cor7 = all(numfield.cor7_check(None, ell) for ell in (3, 5))
        _emit({"eq46": eq46, "lemma5_max_n": args.max_n, "lemma5": lemma5, "cor7": cor7})

    elif args.command == "ffgroup":
        model = _short(_parse_curve(args.curve))
        curve = ffcurve.reduce_curve(model, args.p)
        st = ffcurve.group_structure(curve)
        out = {
            "p": args.p,
            "A": curve.A,
            "B": curve.B,
            "order": st.order,
            "structure": [st.n1, st.n2],
        }
        if args.ell is not None:
            prim = ffcurve.ell_primary(curve, args.ell)
            out["ell"] = args.ell
            out["ell_part_order"] = prim.order
            out["cyclic"] = prim.cyclic
            out["points_by_order"] = {str(o): pts for o, pts in sorted(prim.points_by_order.items())}
        _emit(out)

    elif args.command == "torsion":
        model = _parse_curve(args.curve)
        t = torsionq.rational_torsion(model if isinstance(model, curves.ShortModel) else _short(model), effort=args.effort)
        _emit(t)

    elif args.command == "cor-traces":
        model = _short(_parse_curve(args.curve))
        out = {
            "ell": args.ell,
            "n": args.n,
            "subleading_zero": numfield.cor6_check(model, args.ell, args.n),
        }
        if args.n == 1:
            out["phi_coefficient_rule"] = numfield.cor7_check(model, args.ell)
        _emit(out)

    elif args.command == "alpha-trace":
        model = _short(_parse_curve(args.curve))
        res = numfield.alpha_trace_direct(model, args.ell, args.n)
        out = {"ell": args.ell, "n": args.n, "S": res.S, "degree": res.degree}
        if args.step8:
            pred = numfield.alpha_trace_step8(model, args.ell)
            out["step8_prediction"] = pred
            out["step8_matches"] = args.n == 2 and pred == res.S
        _emit(out)

    elif args.command == "lift":
        model = _short(_parse_curve(args.curve))
        minimized, _ = curves.minimize_short(model)
        _emit(liftkit.lift_plan(minimized, args.p, args.ell))

    elif args.command == "exceptional":
        model = _parse_curve(args.curve)
        rep = galoisrules.theorem5_report(model, scan_bound=args.scan_bound)
        _emit(
            {
                "exceptional_set": list(rep.exceptional),
                "minimized": [rep.model.A, rep.model.B],
                "scan_bound": args.scan_bound,
                "smallest_full": rep.smallest_full,
            }
        )

    else:  # pragma: no cover
        raise DomainError(f"unknown command {args.command}")


_VALUE_FLAGS = {"--curve", "--p", "--ell", "--n", "--effort", "--scan-bound", "--max-n"}


def _join_flag_values(argv: list[str]) -> list[str]:
    """Fold '--flag value' into '--flag=value' so negative values parse."""
    out = []
    i = 0
    while i < len(argv):
        a = argv[i]
        if a in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def main(argv=None) -> int:
    parser = _build_parser()
    if argv is None:
        argv = sys.argv[1:]
    argv = _join_flag_values(list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code or 0
    try:
        _run(args)
    except (DomainError,) as exc:
        sys.stderr.write(f"sha-scope: {exc}\n")
        return 2
    except BudgetError as exc:
        sys.stderr.write(f"sha-scope: budget exceeded: {exc}\n")
        return 3
    except ShaScopeError as exc:
        sys.stderr.write(f"sha-scope: {exc}\n")
        return 2
    return 0


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
