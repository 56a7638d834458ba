"""Desk-scale lifting plans: certify that the ell-part generator of a good
reduction lifts to a characteristic-zero point with the same y, plus the
admissible y^2 set and the degree bookkeeping for the tower it generates.

A plan fixes y to an integer lift of the reduced y-coordinate and asks for a
p-adic root of the cubic X^3 + AX + B - y^2 near the reduced x-coordinate.
The naive Hensel test (simple root mod p) can fail even at good primes —
the cubic in X alone may acquire a double root mod p at points where the
tangent is vertical — so the certificate refines digit by digit until the
strong Hensel inequality v_p(h(x)) > 2*v_p(h'(x)) is met.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .arith import is_prime, padic_val, primes_below
from .curves import ShortModel
from .errors import BudgetError, DomainError
from .ffcurve import ell_primary, group_order, point_order, reduce_curve
from .poly import QQ, ExactPoly

MAX_HENSEL_DEPTH = 40


@dataclass(frozen=True)
class HenselCertificate:
    x_cert: int  # residue mod p^depth
    depth: int
    val_h: int | None  # v_p(h(x_cert)); None means h(x_cert) = 0 exactly
    val_dh: int  # v_p(h'(x_cert))
    simple_mod_p: bool  # whether the naive depth-1 test already sufficed


@dataclass(frozen=True)
class LiftPlan:
    p: int
    ell: int
    n: int  # ell-valuation of the reduced group order
    m: int  # prime-to-ell part
    generator: tuple[int, int] | None  # None encodes the trivial plan (O)
    y_lift: int | None  # least non-negative residue of the generator's y
    y_squared: Fraction | None
    cubic: ExactPoly | None  # X^3 + AX + B - y^2 over Q
    target_x: int | None  # residue mod p of the sought root
    bezout: tuple[int, int]  # (a, b) with m*a + ell*b = 1
    hensel: HenselCertificate | None


def _check_precondition(model: ShortModel, p: int, ell: int) -> None:
    dp = model.delta_prime()
    for name, value in (("delta'", dp), ("ell", ell), ("ell-1", ell - 1), ("ell+1", ell + 1)):
        if value % p == 0:
            raise DomainError(f"p={p} divides {name}")


def _hensel_certificate(cubic: ExactPoly, p: int, target_x: int) -> HenselCertificate:
    """Strong-Hensel certificate for a p-adic root of cubic congruent to
    target_x mod p, found by digit-by-digit refinement."""

    def h(x: int) -> int:
        v = 0
        for c in reversed(cubic.coeffs):
            v = v * x + int(c)
        return v

    dh = cubic.derivative()

    def hd(x: int) -> int:
        v = 0
        for c in reversed(dh.coeffs):
            v = v * x + int(c)
        return v

    simple = hd(target_x) % p != 0 and h(target_x) % p == 0
    frontier = [target_x]
    for depth in range(1, MAX_HENSEL_DEPTH + 1):
        pk = p**depth
        for x in frontier:
            hx = h(x)
            if hx == 0:
                return HenselCertificate(x % pk, depth, None, padic_val(hd(x), p), simple)
            vh = padic_val(hx, p)
            hdx = hd(x)
            vd = padic_val(hdx, p) if hdx != 0 else vh  # hd = 0 forces more digits
            if vh > 2 * vd:
                return HenselCertificate(x % pk, depth, vh, vd, simple)
        # keep every residue mod p^(depth+1) on which h gains a digit
        nxt = []
        for x in frontier:
            for t in range(p):
                cand = x + pk * t
                hc = h(cand)
                if hc == 0 or padic_val(hc, p) > depth:
                    nxt.append(cand)
        if not nxt:
            raise DomainError(
                f"no p-adic root of the lift cubic above x={target_x} mod {p}"
            )
        frontier = nxt
    raise BudgetError(f"Hensel refinement exceeded depth {MAX_HENSEL_DEPTH}")


def lift_plan(model: ShortModel, p: int, ell: int) -> LiftPlan:
    """Lifting plan for the ell-part of the reduction of `model` at p.

    Requires good reduction and p coprime to delta'*ell*(ell-1)*(ell+1).
    Picks the lexicographically smallest (x, y) generator of the (cyclic)
    ell-primary part, lifts its y verbatim, and certifies a p-adic root of
    X^3 + AX + B - y^2 above the generator's x.
    """
    if not is_prime(p) or not is_prime(ell):
        raise DomainError("p and ell must be prime")
    _check_precondition(model, p, ell)
    curve = reduce_curve(model, p)  # raises on bad reduction
    N = group_order(curve)
    n = padic_val(N, ell) if N % ell == 0 else 0
    m = N // ell**n

    # Bezout pair with a in [1, ell)
    a = pow(m % ell, -1, ell)
    b = (1 - m * a) // ell
    assert m * a + ell * b == 1

    if n == 0:
        return LiftPlan(p, ell, 0, m, None, None, None, None, None, (a, b), None)

    prim = ell_primary(curve, ell)
    target_order = ell**n
    gen = min(pt for pt in prim.points_by_order[target_order])
    assert point_order(curve, gen, group_order_hint=N) == target_order

    x_bar, y_bar = gen
    y_lift = y_bar % p
    y_squared = Fraction(y_lift * y_lift)
    cubic = ExactPoly.make(
        QQ, [Fraction(model.B) - y_squared, Fraction(model.A), Fraction(0), Fraction(1)]
    )
    cert = _hensel_certificate(cubic, p, x_bar % p)
    return LiftPlan(p, ell, n, m, gen, y_lift, y_squared, cubic, x_bar % p, (a, b), cert)


def admissible_set(C: int) -> list[Fraction]:
    """All reduced fractions a/b with 1 <= |a|, |b| <= C, as candidate y^2 values."""
    if C < 1:
        raise DomainError("C >= 1 required")
    vals = set()
    for a in range(1, C + 1):
        for b in range(1, C + 1):
            if gcd(a, b) == 1:
                vals.add(Fraction(a, b))
                vals.add(Fraction(-a, b))
    return sorted(vals)


@dataclass(frozen=True)
class TowerDescriptor:
    ell: int
    radicals: tuple[str, ...]  # "i", then "sqrt(p)" per prime p <= C (p != ell), then "sqrt(ell)"
    cubic_layers: int  # one cubic-equation layer per admissible y^2
    s_bound: int  # degree bound divides 2^s * 3^t
    t_bound: int


def tower_descriptor(C: int, ell: int) -> TowerDescriptor:
    """Degree bookkeeping for the field tower generated by the lift coordinates.

    Layers: i, sqrt(p) for each prime p <= C other than ell, sqrt(ell), and one
    cubic (the lift cubic plus its square-root back-substitution) per element
    of admissible_set(C). Each quadratic layer contributes degree dividing 2
    and each cubic layer degree dividing 6, so the tower degree divides
    2^s * 3^t with s <= 1 + nu + 1 + 2*|U| and t <= |U| — coprime to ell > 3.
    """
    if ell <= 3 or not is_prime(ell):
        raise DomainError("prime ell > 3 required")
    small = [p for p in primes_below(C + 1) if p != ell]
    nu = len(small)
    u = len(admissible_set(C))
    radicals = ("i",) + tuple(f"sqrt({p})" for p in small) + (f"sqrt({ell})",)
    return TowerDescriptor(ell, radicals, u, 1 + nu + 1 + 2 * u, u)
