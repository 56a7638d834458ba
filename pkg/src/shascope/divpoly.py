"""Division polynomials f_n on y**2 = x**3 + A*x + B, over any coefficient ring.

Conventions: Psi'_n(x, y) = f_n(x) for odd n and f_n(x)*y for even n, with

    f_1 = 1, f_2 = 2,
    f_3 = 3X^4 + 6AX^2 + 12BX - A^2,
    f_4 = 4(X^6 + 5AX^4 + 20BX^3 - 5A^2X^2 - 4ABX - 8B^2 - A^3),

and recursions (psi = X^3 + AX + B)

    f_{2m}   = f_m (f_{m+2} f_{m-1}^2 - f_{m-2} f_{m+1}^2) / 2
    f_{2m+1} = f_{m+2} f_m^3 psi^2 - f_{m+1}^3 f_{m-1}    (m even)
             = f_{m+2} f_m^3 - f_{m+1}^3 f_{m-1} psi^2    (m odd)

The division by 2 is asserted exact at runtime. deg f_n = (n^2-1)/2 for odd n
and (n^2-4)/2 for even n; the roots of f_n are the x-coordinates of the
nonzero n-torsion (odd n) resp. n-torsion with 2-torsion removed (even n).
"""

from __future__ import annotations

from .errors import BudgetError, DomainError, InvariantViolation
from .poly import ExactPoly, Ring, ZAB

DEFAULT_DEGREE_CEILING = 700


class DivisionTable:
    """Memoized f_n table for one curve over one coefficient ring.

    Mutation happens only inside f(); building a table concurrently for
    distinct curves is safe, concurrent extension of one table is not.
    """

    def __init__(self, ring: Ring, A, B, *, degree_ceiling: int = DEFAULT_DEGREE_CEILING):
        self.ring = ring
        self.A = A
        self.B = B
        self.degree_ceiling = degree_ceiling
        one = ring.from_int(1)
        self.psi = ExactPoly.make(ring, [B, A, ring.from_int(0), one])  # X^3+AX+B
        self._psi2 = self.psi * self.psi
        A2 = ring.mul(A, A)
        self._memo: dict[int, ExactPoly] = {
            0: ExactPoly.make(ring, []),
            1: ExactPoly.const(ring, one),
            2: ExactPoly.const(ring, ring.from_int(2)),
            3: ExactPoly.make(
                ring,
                [
                    ring.neg(A2),
                    ring.mul(ring.from_int(12), B),
                    ring.mul(ring.from_int(6), A),
                    ring.from_int(0),
                    ring.from_int(3),
                ],
            ),
            4: ExactPoly.make(
                ring,
                [
                    ring.neg(
                        ring.add(
                            ring.mul(ring.from_int(8), ring.mul(B, B)),
                            ring.mul(A2, A),
                        )
                    ),
                    ring.neg(ring.mul(ring.from_int(4), ring.mul(A, B))),
                    ring.neg(ring.mul(ring.from_int(5), A2)),
                    ring.mul(ring.from_int(20), B),
                    ring.mul(ring.from_int(5), A),
                    ring.from_int(0),
                    ring.from_int(1),
                ],
            ).scale_int(4),
        }

    def expected_degree(self, n: int) -> int:
        return (n * n - 1) // 2 if n % 2 else (n * n - 4) // 2

    def f(self, n: int) -> ExactPoly:
        if n < 0:
            raise DomainError("f_n defined for n >= 0")
        if n not in self._memo:
            if self.expected_degree(n) > self.degree_ceiling:
                raise BudgetError(
                    f"f_{n} degree {self.expected_degree(n)} exceeds ceiling {self.degree_ceiling}"
                )
            m = n // 2
            if n % 2 == 0:
                t = self.f(m + 2) * self.f(m - 1) * self.f(m - 1) - self.f(m - 2) * self.f(
                    m + 1
                ) * self.f(m + 1)
                val = (self.f(m) * t).exact_div_scalar(self.ring.from_int(2))
            else:
                a = self.f(m + 2) * self.f(m) * self.f(m) * self.f(m)
                b = self.f(m + 1) * self.f(m + 1) * self.f(m + 1) * self.f(m - 1)
                val = a * self._psi2 - b if m % 2 == 0 else a - b * self._psi2
            expected = self.expected_degree(n)
            # in characteristic p the leading coefficient (= n) can vanish,
            # so the degree may drop; over characteristic 0 it is exact
            degree_ok = (
                val.degree() <= expected
                if self.ring.characteristic
                else val.degree() == expected
            )
            if not degree_ok:
                raise InvariantViolation(
                    f"f_{n} degree {val.degree()} != expected {expected}"
                )
            self._memo[n] = val
        return self._memo[n]


def symbolic_table(*, extra_vars: tuple[str, ...] = (), degree_ceiling: int = DEFAULT_DEGREE_CEILING) -> DivisionTable:
    """DivisionTable over Z[A,B] (plus optional extra variables)."""
    from .poly import MPolyRing

    ring = ZAB if not extra_vars else MPolyRing(("A", "B") + extra_vars)
    return DivisionTable(ring, ring.var("A"), ring.var("B"), degree_ceiling=degree_ceiling)


def f_poly(table: DivisionTable, n: int) -> ExactPoly:
    """f_n; n=0 gives the zero polynomial (Psi_0 = 0)."""
    return table.f(n)


def check_lemma5(table: DivisionTable, n: int) -> bool:
    """Degree, leading coefficient n, and vanishing sub-leading coefficient of f_n."""
    if n < 1:
        raise DomainError("n >= 1 required")
    fn = table.f(n)
    d = table.expected_degree(n)
    r = table.ring
    if fn.degree() != d:
        return False
    lead_ok = fn.lc() == r.from_int(n)
    sub_ok = d == 0 or r.is_zero(fn.coeff(d - 1))
    return lead_ok and sub_ok


def psi_squared(table: DivisionTable, n: int) -> ExactPoly:
    """(Psi'_n)^2 as a polynomial in X: f_n^2, times psi for even n."""
    if n < 1:
        raise DomainError("n >= 1 required")
    fn = table.f(n)
    sq = fn * fn
    return sq * table.psi if n % 2 == 0 else sq


def quotient_g(table: DivisionTable, ell: int, n: int) -> ExactPoly:
    """g_{ell^n} = f_{ell^n} / f_{ell^(n-1)}, asserted exact.

    Roots are the x-coordinates of points of exact order ell^n.
    """
    if ell <= 2:
        raise DomainError("odd prime ell required")
    if n < 1:
        raise DomainError("n >= 1 required")
    if n == 1:
        return table.f(ell)
    return table.f(ell**n).exact_div(table.f(ell ** (n - 1)))


def build_phi(table: DivisionTable, m: int, lam) -> ExactPoly:
    """Phi_m(X, lam) = (X - lam)(Psi'_m)^2 - Psi'_{m-1} Psi'_{m+1}.

    Monic of degree m^2 with X^{m^2-1} coefficient -lam*m^2. Its roots are the
    x-coordinates of points P with x([m]P) = lam.
    """
    if m < 1:
        raise DomainError("m >= 1 required")
    r = table.ring
    if isinstance(lam, int):
        lam = r.from_int(lam)
    x_minus_lam = ExactPoly.make(r, [r.neg(lam), r.from_int(1)])
    cross = table.f(m - 1) * table.f(m + 1)
    if m % 2 == 1:
        # m-1, m+1 even: Psi'_{m-1} Psi'_{m+1} = f_{m-1} f_{m+1} y^2
        cross = cross * table.psi
    return x_minus_lam * psi_squared(table, m) - cross


def eq46_parts(table: DivisionTable):
    """(f, phi, g, psi, delta') with f*phi - g*psi = delta' = 4A^3 + 27B^2."""
    r = table.ring
    A, B = table.A, table.B
    f = ExactPoly.make(r, [r.mul(r.from_int(4), A), r.from_int(0), r.from_int(3)])
    phi = ExactPoly.make(
        r,
        [
            r.mul(A, A),
            r.neg(r.mul(r.from_int(8), B)),
            r.neg(r.mul(r.from_int(2), A)),
            r.from_int(0),
            r.from_int(1),
        ],
    )
    g = ExactPoly.make(
        r,
        [
            r.neg(r.mul(r.from_int(27), B)),
            r.neg(r.mul(r.from_int(5), A)),
            r.from_int(0),
            r.from_int(3),
        ],
    )
    delta = r.add(
        r.mul(r.from_int(4), r.mul(A, r.mul(A, A))),
        r.mul(r.from_int(27), r.mul(B, B)),
    )
    return f, phi, g, table.psi, delta


def verify_eq46(table: DivisionTable) -> bool:
    """f*phi - g*psi == 4A^3 + 27B^2 identically in the table's ring."""
    f, phi, g, psi, delta = eq46_parts(table)
    lhs = f * phi - g * psi
    return lhs == ExactPoly.const(table.ring, delta)


def _w(table: DivisionTable, k: int, x, y):
    """Psi'_k(x, y) evaluated in the (field) coefficient ring."""
    v = table.f(k).evaluate(x)
    if k % 2 == 0:
        v = table.ring.mul(v, y)
    return v


def mul_point_formula(table: DivisionTable, x, y, a: int):
    """Coordinates of [a]P for P=(x,y) on the table's curve, field ring required.

    x([a]P) = x - Psi'_{a-1} Psi'_{a+1} / (Psi'_a)^2
    y([a]P) = (Psi'_{a+2} Psi'_{a-1}^2 - Psi'_{a-2} Psi'_{a+1}^2) / (4 y (Psi'_a)^3)
    For a=2 this reduces to the duplication identity x([2]P) = phi(x)/(4 psi(x)).
    """
    if a < 1:
        raise DomainError("a >= 1 required")
    r = table.ring
    if isinstance(x, int):
        x = r.from_int(x)
    if isinstance(y, int):
        y = r.from_int(y)
    if a == 1:
        return x, y
    wa = _w(table, a, x, y)
    wa2 = r.mul(wa, wa)
    if r.is_zero(wa2):
        raise DomainError(f"point is {a}-torsion; [a]P = O")
    num_x = r.mul(_w(table, a - 1, x, y), _w(table, a + 1, x, y))
    xa = r.add(x, r.neg(r.exact_div(num_x, wa2)))
    wm1sq = r.mul(_w(table, a - 1, x, y), _w(table, a - 1, x, y))
    wp1sq = r.mul(_w(table, a + 1, x, y), _w(table, a + 1, x, y))
    num_y = r.add(
        r.mul(_w(table, a + 2, x, y), wm1sq),
        r.neg(r.mul(_w(table, a - 2, x, y), wp1sq)),
    )
    den_y = r.mul(r.from_int(4), r.mul(y, r.mul(wa2, wa)))
    ya = r.exact_div(num_y, den_y)
    return xa, ya


def torsion_test(table: DivisionTable, x, y, n: int) -> bool:
    """True iff [n]P = O for the affine point P=(x,y).

    Uses f_n(x) = 0 when [2]P != O (y != 0), and (Psi'_n(x,y))^2 = 0 otherwise.
    """
    if n < 1:
        raise DomainError("n >= 1 required")
    r = table.ring
    if isinstance(x, int):
        x = r.from_int(x)
    if isinstance(y, int):
        y = r.from_int(y)
    fnx = table.f(n).evaluate(x)
    if not r.is_zero(y):
        return r.is_zero(fnx)
    # y = 0: (Psi'_n)^2 = f_n(x)^2 * psi(x) for even n, psi(x) = y^2 = 0
    if n % 2 == 0:
        return True
    return r.is_zero(fnx)
