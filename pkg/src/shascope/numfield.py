"""Exact traces in quotient rings Q[X]/(g): zero-trace checks for torsion
x-coordinates, the normalized alpha root-sums at levels n = 1, 2, the level-2
closed form, and the per-place bound constants.

Traces use Newton power sums of the (monicized) modulus; inverses use the
extended euclidean algorithm in Q[X]. The closed form works in the tensor
ring Q[Y,L]/(psi(Y), g_ell(L)), where traces of monomials Y^j L^a factor as
products of per-factor power sums and 1/(Y-L) comes from the difference
quotient of g_ell.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import factorize, padic_val, primes_below, rat_val
from .curves import ShortModel
from .divpoly import DivisionTable, quotient_g, symbolic_table, build_phi
from .errors import DomainError, InvariantViolation, NotInvertibleError
from .poly import QQ, ZZ, ExactPoly, Fp, MPolyRing, ext_gcd_qq, poly_gcd_qq


# ---------------------------------------------------------------------------
# quotient rings
# ---------------------------------------------------------------------------


def _is_squarefree_qq(g: ExactPoly) -> bool:
    """Squarefreeness of g over Q, certified cheaply mod small primes first.

    gcd(g, g') = 1 mod q (with lc(g) a q-unit) implies gcd = 1 over Q; if no
    small prime certifies it, fall back to the exact gcd.
    """
    dg = g.derivative()
    # clear denominators to get integer coefficients
    den = 1
    for c in g.coeffs:
        den = den * c.denominator // _gcd(den, c.denominator)
    gi = [int(c * den) for c in g.coeffs]
    for q in (1000003, 1000033, 1000037, 1000039, 1000081):
        if gi[-1] % q == 0:
            continue
        fq = Fp(q)
        gq = ExactPoly.from_ints(fq, gi)
        dq = gq.derivative()
        a, b = gq, dq
        while not b.is_zero():
            a, b = b, a.mod(b)
        if a.degree() == 0:
            return True
    return poly_gcd_qq(g, dg).degree() == 0


def _gcd(a: int, b: int) -> int:
    from math import gcd

    return gcd(a, b)


class QuotRing:
    """Q[X]/(g) with g monicized and squarefree; elements are ExactPoly over QQ."""

    def __init__(self, g: ExactPoly):
        if g.ring is not QQ:
            g = g.map_coeffs(QQ, Fraction)
        if g.degree() < 1:
            raise DomainError("modulus must have positive degree")
        g = g.monic()
        if not _is_squarefree_qq(g):
            raise DomainError("modulus is not squarefree")
        self.g = g
        self.degree = g.degree()
        self._psums: list[Fraction] = [Fraction(self.degree)]

    def reduce(self, elem: ExactPoly) -> ExactPoly:
        if elem.ring is not QQ:
            elem = elem.map_coeffs(QQ, Fraction)
        return elem.mod(self.g)

    def power_sums(self, upto: int) -> list[Fraction]:
        """Newton power sums p_0..p_upto of the roots of g."""
        c = self.g.coeffs
        d = self.degree
        p = self._psums
        for k in range(len(p), upto + 1):
            s = Fraction(0)
            top = min(k - 1, d) if k <= d else d
            for i in range(1, top + 1):
                s += c[d - i] * p[k - i]
            if k <= d:
                s += k * c[d - k]
            p.append(-s)
        return p[: upto + 1]


def trace_in_ring(ring: QuotRing, elem: ExactPoly) -> Fraction:
    """Sum of elem(r) over the roots r of the modulus, exact."""
    e = ring.reduce(elem)
    if e.is_zero():
        return Fraction(0)
    ps = ring.power_sums(e.degree())
    return sum((c * ps[i] for i, c in enumerate(e.coeffs)), Fraction(0))


def invert_mod(ring: QuotRing, elem: ExactPoly) -> ExactPoly:
    """Inverse of elem modulo g; NotInvertibleError carries the common factor."""
    e = ring.reduce(elem)
    g, s, _ = ext_gcd_qq(e, ring.g)
    if g.degree() != 0:
        raise NotInvertibleError(g)
    return ring.reduce(s)


# ---------------------------------------------------------------------------
# torsion trace identities
# ---------------------------------------------------------------------------


def _int_table(model: ShortModel, **kw) -> DivisionTable:
    return DivisionTable(ZZ, model.A, model.B, **kw)


def cor6_check(model: ShortModel, ell: int, n: int = 1) -> bool:
    """Vanishing of the sub-leading coefficient of g_{ell^n} (zero trace of x_n)."""
    if ell <= 2:
        raise DomainError("odd prime ell required")
    table = _int_table(model)
    g = quotient_g(table, ell, n)
    d = g.degree()
    return g.coeff(d - 1) == 0


def cor7_check(model: ShortModel | None, ell: int, lam="symbolic") -> bool:
    """Coefficient of X^(ell^2-1) in Phi_ell(X, lam) equals -ell^2*lam.

    model=None runs fully symbolically (A, B, lam all indeterminates);
    lam="symbolic" with a concrete model keeps lam an indeterminate.
    """
    if ell <= 2:
        raise DomainError("odd prime ell required")
    if model is None:
        table = symbolic_table(extra_vars=("lam",))
        lam_el = table.ring.var("lam")
    elif lam == "symbolic":
        ring = MPolyRing(("lam",))
        table = DivisionTable(ring, ring.from_int(model.A), ring.from_int(model.B))
        lam_el = ring.var("lam")
    else:
        table = DivisionTable(QQ, Fraction(model.A), Fraction(model.B))
        lam_el = Fraction(lam)
    phi = build_phi(table, ell, lam_el)
    r = table.ring
    got = phi.coeff(ell * ell - 1)
    want = r.neg(r.mul(r.from_int(ell * ell), lam_el))
    return got == want


# ---------------------------------------------------------------------------
# alpha traces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AlphaTraceResult:
    ell: int
    n: int
    S: Fraction  # normalized root-sum of alpha over primitive ell^n torsion x's
    degree: int  # deg g_{ell^n}


def _check_alpha_pre(model: ShortModel, ell: int, n: int) -> int:
    if ell <= 3:
        raise DomainError("ell > 3 required")
    dp = model.delta_prime()
    if dp % ell == 0:
        raise DomainError(f"ell={ell} divides delta'")
    if n not in (1, 2):
        raise DomainError("n in {1, 2} required")
    return dp


def _g_ring(model: ShortModel, ell: int, n: int) -> QuotRing:
    table = _int_table(model)
    g = quotient_g(table, ell, n).map_coeffs(QQ, Fraction)
    return QuotRing(g)


def alpha_trace_direct(
    model: ShortModel, ell: int, n: int, *, element: ExactPoly | None = None
) -> AlphaTraceResult:
    """S = trace(ell^3 * delta' / psi(x)) / deg g_{ell^n} over roots of g_{ell^n}.

    The identification of this normalized root-sum with a field trace divided
    by the field degree holds when all primitive ell^n-torsion points are
    Galois-conjugate (full-image hypothesis, checked elsewhere); the root-sum
    itself is defined unconditionally. `element` overrides the numerator
    (e.g. a constant c gives S = c).
    """
    dp = _check_alpha_pre(model, ell, n)
    ring = _g_ring(model, ell, n)
    if element is None:
        psi = ExactPoly.from_ints(QQ, [model.B, model.A, 0, 1])
        try:
            inv_psi = invert_mod(ring, psi)
        except NotInvertibleError as exc:
            raise InvariantViolation(
                "psi shares a root with the torsion polynomial; "
                "a 2-torsion x-coordinate cannot be an ell-torsion x-coordinate"
            ) from exc
        elem = inv_psi.scale(Fraction(ell**3 * dp))
    else:
        elem = element
    S = trace_in_ring(ring, elem) / ring.degree
    result = AlphaTraceResult(ell, n, S, ring.degree)
    if element is None and S != 0:
        for q in factorize(S.denominator).primes():
            if q == ell:
                continue
            bound = bound_constants(model, ell, q)
            if Fraction(q) ** (-rat_val(S, q)) > bound:
                raise InvariantViolation(f"|S|_{q} exceeds the bound constant")
    return result


def _phi_prime_parts(table: DivisionTable, ell: int, psi_ring: QuotRing):
    """h0(Y), t(Y) with Phi'_ell(Y, L) = h0(Y) - L*t(Y) in Q[Y]/(psi).

    h0 = f_ell^2 + 2Y f_ell f_ell' - f_{ell-1} f_{ell+1} (3Y^2 + A),
    t = 2 f_ell f_ell'.
    """
    f_ell = table.f(ell).map_coeffs(QQ, Fraction)
    f_m = table.f(ell - 1).map_coeffs(QQ, Fraction)
    f_p = table.f(ell + 1).map_coeffs(QQ, Fraction)
    fd = f_ell.derivative()
    Y = ExactPoly.x(QQ)
    A = Fraction(table.A)
    three_y2_A = ExactPoly.make(QQ, [A, Fraction(0), Fraction(3)])
    h0 = f_ell * f_ell + Y.scale(Fraction(2)) * f_ell * fd - f_m * f_p * three_y2_A
    t = (f_ell * fd).scale(Fraction(2))
    return psi_ring.reduce(h0), psi_ring.reduce(t)


def alpha_trace_step8(model: ShortModel, ell: int) -> Fraction:
    """Level-2 prediction of S from the closed form over psi's splitting data.

    For each root e of psi and each root lam of g_ell, the fiber above lam
    contributes  -Phi'_ell(e, lam) / ((e - lam) f_ell(e)^2)  to the trace of
    1/(x - e); partial fractions 1/psi = sum_i (1/psi'(e_i)) / (x - e_i)
    assemble S without ever building g_{ell^2}. All sums over (e, lam) pairs
    are traces in Q[Y, L]/(psi(Y), g_ell(L)), computed via factored power sums.
    """
    dp = _check_alpha_pre(model, ell, 1)
    table = _int_table(model)
    psi_q = ExactPoly.from_ints(QQ, [model.B, model.A, 0, 1])
    K = QuotRing(psi_q)  # Q[Y]/(psi); a product of fields since psi squarefree

    g_ell = table.f(ell).map_coeffs(QQ, Fraction)
    G = QuotRing(g_ell)
    gm = G.g  # monic
    dg = G.degree

    # inverses in K
    inv_psi_d = invert_mod(K, psi_q.derivative())  # A(Y) = 1/psi'(Y)
    f_ell_q = table.f(ell).map_coeffs(QQ, Fraction)
    inv_f2 = invert_mod(K, K.reduce(f_ell_q * f_ell_q))
    inv_gY = invert_mod(K, K.reduce(gm))  # 1/g_ell(Y), exists: torsion x's differ

    h0, t = _phi_prime_parts(table, ell, K)

    # (Y - L)^{-1} = Q(L, Y) / g(Y) with Q = (g(L) - g(Y)) / (L - Y):
    # coefficient of L^a is q_a(Y) = sum_{k > a} g_k Y^{k-1-a}
    c = gm.coeffs
    q_lambda: list[ExactPoly] = []
    for a in range(dg):
        q_lambda.append(K.reduce(ExactPoly.make(QQ, list(c[a + 1 :]))))

    # F(Y, L) = A(Y) f_ell(Y)^{-2} (-h0(Y) + L t(Y)) * Q(L, Y) * g(Y)^{-1}
    prefix = K.reduce(inv_psi_d * inv_f2 * inv_gY)
    m_h0 = K.reduce(prefix * h0)
    m_t = K.reduce(prefix * t)
    # L-coefficients of F: a ranges to dg (from the extra L in the t term)
    coeffs_L: dict[int, ExactPoly] = {}
    for a in range(dg):
        coeffs_L[a] = K.reduce(-(m_h0 * q_lambda[a]))
    for a in range(dg):
        prev = coeffs_L.get(a + 1, ExactPoly.make(QQ, []))
        coeffs_L[a + 1] = K.reduce(prev + m_t * q_lambda[a])

    ps_g = G.power_sums(dg)
    total = Fraction(0)
    for a, coef in coeffs_L.items():
        tr_k = trace_in_ring(K, coef)
        if tr_k:
            total += tr_k * ps_g[a]

    deg_level2 = ell * ell * dg  # deg g_{ell^2}
    return Fraction(ell**3 * dp) * total / deg_level2


# ---------------------------------------------------------------------------
# bound constants
# ---------------------------------------------------------------------------

INF = float("inf")

DEFAULT_ISOLATION_DEGREE_CEILING = 120


def bound_constants(
    model: ShortModel,
    ell: int,
    q,
    *,
    isolation_degree_ceiling: int = DEFAULT_ISOLATION_DEGREE_CEILING,
):
    """Per-place constants bounding the normalized alpha trace.

    finite q != ell: |(ell-1)^-2 (ell+1)^-1|_q, an exact rational.
    q == ell: max over n in {1,2} of |S_n|_ell.
    q == inf (float('inf') or "inf"): |delta'| * ell^3 * max(2, 1/delta^3)
    with delta the minimal distance, at 200-bit precision, from roots of
    g_{ell^n} inside |x| < sqrt(2(|A|+|B|)) to roots of psi; level n=2 is
    included only when deg g_{ell^2} <= isolation_degree_ceiling, otherwise
    the value is a lower-bound candidate based on n=1 alone.
    """
    dp = _check_alpha_pre(model, ell, 1)
    if q == INF or q == "inf":
        return _bound_infinity(model, ell, dp, isolation_degree_ceiling)
    if q == ell:
        vals = []
        for n in (1, 2):
            S = alpha_trace_direct(model, ell, n).S
            vals.append(Fraction(0) if S == 0 else Fraction(ell) ** (-rat_val(S, ell)))
        return max(vals)
    e = padic_val((ell - 1) ** 2 * (ell + 1), q)
    return Fraction(q) ** e


def _bound_infinity(model: ShortModel, ell: int, dp: int, degree_ceiling: int):
    import mpmath as mp

    table = _int_table(model)
    with mp.workprec(200):
        psi_roots = mp.polyroots([mp.mpf(1), 0, mp.mpf(model.A), mp.mpf(model.B)])
        radius = mp.sqrt(2 * (abs(model.A) + abs(model.B)))
        delta = None
        for n in (1, 2):
            if n == 2 and (ell**4 - ell**2) // 2 > degree_ceiling:
                break
            g = quotient_g(table, ell, n)
            coeffs = [mp.mpf(c) for c in reversed(g.coeffs)]
            roots = mp.polyroots(coeffs, maxsteps=200, extraprec=200)
            for x in roots:
                if abs(x) >= radius:
                    continue
                d = min(abs(x - e) for e in psi_roots)
                if delta is None or d < delta:
                    delta = d
        factor = mp.mpf(2) if delta is None else max(mp.mpf(2), 1 / delta**3)
        return abs(dp) * mp.mpf(ell) ** 3 * factor
