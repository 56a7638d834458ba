"""Weierstrass models over Q: invariants, short-form conversion, minimization,
and per-prime reduction classification.

No Tate's algorithm here: for p in {2, 3} the classification comes from the
(possibly non-minimal) short model and the report carries a caveat; the
potential reduction type read from ord_p(j) is model-independent and is the
authoritative field at those primes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .arith import Factorization, factorize, legendre, padic_val
from .errors import DomainError, SingularCubicError


@dataclass(frozen=True)
class LongModel:
    """y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6, integer coefficients."""

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int


@dataclass(frozen=True)
class ShortModel:
    """y^2 = x^3 + A x + B, integer coefficients, 4A^3 + 27B^2 != 0."""

    A: int
    B: int

    def delta_prime(self) -> int:
        return 4 * self.A**3 + 27 * self.B**2


@dataclass(frozen=True)
class Invariants:
    b2: int
    b4: int
    b6: int
    b8: int
    c4: int
    c6: int
    delta: int
    delta_prime: int
    j: Fraction


@dataclass(frozen=True)
class ReductionReport:
    p: int
    kind: str  # "good" | "multiplicative" | "additive"
    split: str | None  # for multiplicative: "split" | "nonsplit" | "undetermined"
    potential: str  # "potentiallyGood" | "potentiallyMultiplicative"
    ord_delta: int
    ord_c4: int | None  # None encodes +infinity (c4 = 0)
    ord_j: int | None  # None encodes j = 0 (ord_p j = +infinity)
    caveat: str | None = None


def _long_of(model: LongModel | ShortModel) -> LongModel:
    if isinstance(model, ShortModel):
        return LongModel(0, 0, 0, model.A, model.B)
    return model


def invariants(model: LongModel | ShortModel) -> Invariants:
    """The b/c/Delta/j record; raises SingularCubicError when Delta = 0.

    delta_prime is 4A^3+27B^2 of the associated short model (-27c4, -54c6);
    for a ShortModel input it is 4A^3+27B^2 of the model itself, so that
    Delta = -16*delta_prime.
    """
    m = _long_of(model)
    b2 = m.a1**2 + 4 * m.a2
    b4 = 2 * m.a4 + m.a1 * m.a3
    b6 = m.a3**2 + 4 * m.a6
    b8 = (
        m.a1**2 * m.a6
        + 4 * m.a2 * m.a6
        - m.a1 * m.a3 * m.a4
        + m.a2 * m.a3**2
        - m.a4**2
    )
    c4 = b2**2 - 24 * b4
    c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
    delta = -(b2**2) * b8 - 8 * b4**3 - 27 * b6**2 + 9 * b2 * b4 * b6
    if delta == 0:
        raise SingularCubicError(c4)
    if isinstance(model, ShortModel):
        dp = model.delta_prime()
    else:
        A, B = -27 * c4, -54 * c6
        dp = 4 * A**3 + 27 * B**2
    j = Fraction(c4**3, delta)
    return Invariants(b2, b4, b6, b8, c4, c6, delta, dp, j)


def to_short(model: LongModel | ShortModel) -> ShortModel:
    """Short form via (A, B) = (-27 c4, -54 c6); preserves j exactly."""
    inv = invariants(model)  # raises on singular input
    return ShortModel(-27 * inv.c4, -54 * inv.c6)


def minimize_short(model: ShortModel) -> tuple[ShortModel, int]:
    """Largest u >= 1 with u^4 | A and u^6 | B; returns ((A/u^4, B/u^6), u)."""
    A, B = model.A, model.B
    if model.delta_prime() == 0:
        raise SingularCubicError(-48 * A)
    if A == 0:
        basis = factorize(B)
    elif B == 0:
        basis = factorize(A)
    else:
        g = gcd(abs(A), abs(B))
        if g == 1:
            return model, 1
        basis = factorize(g)
    u = 1
    for p, _ in basis:
        ea = padic_val(A, p) // 4 if A != 0 else None
        eb = padic_val(B, p) // 6 if B != 0 else None
        e = min(x for x in (ea, eb) if x is not None)
        u *= p**e
    return ShortModel(A // u**4, B // u**6), u


def p_minimize(model: ShortModel, p: int) -> ShortModel:
    """Rescale by u = p while p^4 | A and p^6 | B."""
    A, B = model.A, model.B
    while (A == 0 or A % p**4 == 0) and (B == 0 or B % p**6 == 0):
        if A == 0 and B == 0:
            break
        A //= p**4
        B //= p**6
    return ShortModel(A, B)


def _ord(n: int, p: int) -> int | None:
    return None if n == 0 else padic_val(n, p)


def reduction_report(model: ShortModel, p: int) -> ReductionReport:
    """Classification of the reduction mod p of the p-minimized short model.

    kind: good (ord Delta = 0), multiplicative (ord c4 = 0 < ord Delta),
    additive (both positive). Split/nonsplit for multiplicative p >= 5 by the
    square test on the node's tangent-slope discriminant. Potential type from
    the sign of ord_p(j) (model-independent).
    """
    m = p_minimize(model, p)
    dp = m.delta_prime()
    if dp == 0:
        raise SingularCubicError(-48 * m.A)
    delta = -16 * dp
    c4 = -48 * m.A
    ord_delta = padic_val(delta, p)
    ord_c4 = _ord(c4, p)
    ord_j = None if c4 == 0 else 3 * ord_c4 - ord_delta
    potential = "potentiallyGood" if (ord_j is None or ord_j >= 0) else "potentiallyMultiplicative"
    caveat = None
    if p in (2, 3):
        caveat = (
            "classification from possibly non-minimal short model; "
            "potential type via ord_p(j) is authoritative"
        )
    if ord_delta == 0:
        return ReductionReport(p, "good", None, potential, ord_delta, ord_c4, ord_j, caveat)
    if ord_c4 == 0:
        split = "undetermined"
        if p >= 5:
            # node at the double root x0 of the reduced cubic; tangent slopes
            # satisfy s^2 = 3*x0 (sum of roots is 0, so the simple root is -2*x0)
            x0 = _node_x(m, p)
            split = "split" if legendre(3 * x0 % p, p) == 1 else "nonsplit"
        return ReductionReport(p, "multiplicative", split, potential, ord_delta, ord_c4, ord_j, caveat)
    return ReductionReport(p, "additive", None, potential, ord_delta, ord_c4, ord_j, caveat)


def _node_x(m: ShortModel, p: int) -> int:
    """The double root mod p of X^3 + AX + B when the reduction has a node."""
    # double root of the cubic is a common root with its derivative 3X^2 + A
    A, B = m.A % p, m.B % p
    for x in _quadratic_roots(3, 0, A, p):
        if (x * x * x + A * x + B) % p == 0:
            return x
    raise DomainError(f"no node found mod {p}")


def _quadratic_roots(a: int, b: int, c: int, p: int) -> list[int]:
    """Roots of a x^2 + b x + c mod odd prime p (a nonzero mod p)."""
    a, b, c = a % p, b % p, c % p
    disc = (b * b - 4 * a * c) % p
    ls = legendre(disc, p)
    if ls == -1:
        return []
    r = _sqrt_mod(disc, p)
    inv2a = pow(2 * a, -1, p)
    return sorted({(-b + r) * inv2a % p, (-b - r) * inv2a % p})


def _sqrt_mod(a: int, p: int) -> int:
    """Tonelli-Shanks square root mod odd prime p; a must be a QR or 0."""
    a %= p
    if a == 0:
        return 0
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # general case
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2, i = t, 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def bad_primes(model: ShortModel, *, effort: int = 50) -> list[ReductionReport]:
    """One report per prime dividing delta' of the minimized model, ascending."""
    minimized, _ = minimize_short(model)
    fac = factorize(minimized.delta_prime(), effort=effort)
    return [reduction_report(minimized, p) for p in fac.primes()]


def delta_prime_factorization(model: ShortModel, *, effort: int = 50) -> tuple[ShortModel, Factorization]:
    """(minimized model, factorization of its delta')."""
    minimized, _ = minimize_short(model)
    return minimized, factorize(minimized.delta_prime(), effort=effort)
