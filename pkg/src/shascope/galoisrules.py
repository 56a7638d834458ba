"""Decision rules for the mod-ell Galois image of a rational elliptic curve.

Everything here consumes local reduction data (per-prime reduction reports)
and produces either a verdict that the mod-ell image is the full group
GL_2(F_ell), or a reason the rules don't decide. The headline product is
`theorem5_report`: the finite candidate set of primes ell at which the image
can fail to be full, together with a per-ell audit trail.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .arith import factorize, is_prime, primes_below
from .curves import LongModel, ReductionReport, ShortModel, bad_primes, minimize_short, to_short
from .errors import DomainError

SMALL_EXCEPTIONAL = (2, 3, 5, 7, 13)

# odd prime orders that can divide a rational point per the rational torsion
# classification; used only by the optional chain, see image_verdict
MAZUR_PRIME_ORDERS = (2, 3, 5, 7)


def small_exceptional(ell: int) -> bool:
    """ell with (ell - 1) | 12; the mod-ell cyclotomic character is too small
    there for the determinant argument, so these are always kept as candidates."""
    if not is_prime(ell):
        raise DomainError("ell must be prime")
    return 12 % (ell - 1) == 0


def tate_witnesses(reports: list[ReductionReport], ell: int) -> list[int]:
    """Potentially multiplicative primes p0 with ell not dividing ord_{p0}(j)."""
    out = []
    for r in reports:
        if r.potential != "potentiallyMultiplicative":
            continue
        oj = r.ord_j
        if oj is not None and oj % ell != 0:
            out.append(r.p)
    return out


def tate_order_rule(reports: list[ReductionReport], ell: int) -> tuple[bool, int | None]:
    """Existence of a potentially multiplicative prime p0 with ell not dividing
    ord_{p0}(j); at such p0 the local image contains an element of order ell,
    which rules out image subgroups of order prime to ell.

    Returns (holds, first witness prime or None).
    """
    w = tate_witnesses(reports, ell)
    return (True, w[0]) if w else (False, None)


def phi_order_candidates(report: ReductionReport) -> tuple[set[int], list[str]]:
    """Candidate orders of the local inertia quotient Phi at a potentially good
    prime, from the valuation of the discriminant of the minimized model.

    p >= 5: the order is exactly 12 / gcd(ord_p(Delta), 12).
    p == 2: order lies in {2, 3, 4, 6, 8, 24}; when ord_2(Delta) is not
        divisible by 3 the orders divisible only by 2 are excluded, leaving
        {3, 6, 24}. Calibrated at ord_2(Delta) == 8; other valuations carry an
        extrapolation note.
    p == 3: unsupported (wild inertia).
    """
    if report.potential != "potentiallyGood":
        raise DomainError(f"p={report.p} is not potentially good")
    p, v = report.p, report.ord_delta
    notes: list[str] = []
    if p >= 5:
        return {12 // gcd(v, 12)}, notes
    if p == 2:
        cands = {2, 3, 4, 6, 8, 24}
        if v % 3 != 0:
            cands = {3, 6, 24}
            if v != 8:
                notes.append(
                    f"p=2 narrowing calibrated at ord_2(Delta)=8, extrapolated to {v}"
                )
        return cands, notes
    raise DomainError("p=3 inertia orders are not supported (wild ramification)")


def borel_excluded(reports: list[ReductionReport], p0: int) -> tuple[bool, int | None, list[str]]:
    """Borel (reducible) images excluded at every ell coprime to p0(p0 - 1):
    a potentially good prime p whose Phi-order candidates share a prime factor
    q with q not dividing p0(p0 - 1) forces an inertia element incompatible
    with an eigenbasis.

    Returns (excluded, the shared prime q or None, notes).
    """
    notes: list[str] = []
    for r in reports:
        if r.potential != "potentiallyGood":
            continue
        try:
            cands, c_notes = phi_order_candidates(r)
        except DomainError:
            continue
        notes.extend(c_notes)
        shared = None
        common = None
        for c in cands:
            fac = set(factorize(c).primes())
            common = fac if common is None else (common & fac)
        for q in sorted(common or ()):
            if p0 % q != 0 and (p0 - 1) % q != 0:
                shared = q
                break
        if shared is not None:
            return True, shared, notes
    return False, None, notes


def serre_bound(p: int) -> int:
    """floor((sqrt(p) + 1)^8), computed exactly in Z[sqrt(p)].

    (sqrt(p)+1)^8 = a + b*sqrt(p) with a, b integers; the floor is
    a + isqrt(b^2 * p) unless p is a perfect square (then exact).
    """
    if p < 2:
        raise DomainError("p >= 2 required")
    # (x + y*sqrt(p))^2 iterated three times from (1 + sqrt(p))
    a, b = 1, 1  # a + b sqrt(p)
    for _ in range(3):
        a, b = a * a + b * b * p, 2 * a * b
    s = isqrt(b * b * p)
    if s * s == b * b * p:
        return a + s
    return a + s


def semistable_rule(reports: list[ReductionReport], ell: int) -> bool:
    """Full image for ell >= 11 when every bad prime is multiplicative."""
    if not reports:
        return False
    return ell >= 11 and all(r.kind == "multiplicative" for r in reports)


@dataclass(frozen=True)
class Verdict:
    ell: int
    full: bool
    chain: str | None  # which rule chain decided, if any
    reasons: tuple[str, ...]


def image_verdict(
    reports: list[ReductionReport],
    ell: int,
    *,
    use_mazur_chain: bool = False,
    chains: tuple[str, ...] = ("a", "b", "c"),
) -> Verdict:
    """Attempt to certify that the mod-ell image is all of GL_2(F_ell).

    Chains, tried in order:
      a. semistable: every bad prime multiplicative and ell >= 11.
      b. ell >= 5, the Tate order rule holds at some p0, and Borel images are
         excluded via a potentially good prime (shared Phi-order factor q with
         q coprime to p0(p0 - 1)).
      c. ell > serre_bound(p) for the smallest good prime p, ell does not
         divide delta', and the Tate order rule holds.
    The optional Mazur chain (rational-torsion classification) additionally
    excludes Borel images with a rational eigenvector for ell not in
    {2, 3, 5, 7}; it is off by default, see `use_mazur_chain`.
    """
    if not is_prime(ell):
        raise DomainError("ell must be prime")
    reasons: list[str] = []

    if "a" in chains and semistable_rule(reports, ell):
        return Verdict(ell, True, "a", ("all bad primes multiplicative and ell >= 11",))

    witnesses = tate_witnesses(reports, ell)
    tate_ok = bool(witnesses)
    p0 = witnesses[0] if witnesses else None
    if not tate_ok:
        reasons.append("no potentially multiplicative prime with ell coprime to ord(j)")

    if "b" in chains and ell >= 5 and tate_ok:
        for w in witnesses:
            excluded, q, notes = borel_excluded(reports, w)
            reasons.extend(notes)
            if excluded:
                return Verdict(
                    ell,
                    True,
                    "b",
                    tuple(
                        reasons
                        + [
                            f"order-ell element from p0={w} (ord(j) coprime to ell)",
                            f"Borel excluded via shared Phi-order prime q={q}",
                        ]
                    ),
                )
        reasons.append("Borel exclusion inconclusive at every potentially good prime")

    if "c" in chains and tate_ok:
        # smallest prime of good reduction
        bad = {r.p for r in reports}
        p = 2
        while p in bad:
            p = _next_prime(p)
        sb = serre_bound(p)
        if ell > sb and all(r.p != ell for r in reports):
            return Verdict(
                ell,
                True,
                "c",
                tuple(
                    reasons
                    + [
                        f"order-ell element from p0={p0}",
                        f"ell={ell} > serre_bound({p})={sb} and ell does not divide delta'",
                    ]
                ),
            )
        reasons.append(f"ell={ell} not above serre_bound for the smallest good prime")

    if use_mazur_chain and tate_ok and ell not in MAZUR_PRIME_ORDERS:
        return Verdict(
            ell,
            True,
            "mazur",
            tuple(
                reasons
                + [
                    f"order-ell element from p0={p0}",
                    f"ell={ell} exceeds the rational torsion prime orders (opt-in chain)",
                ]
            ),
        )

    return Verdict(ell, False, None, tuple(reasons or ("no chain applicable",)))


def _next_prime(p: int) -> int:
    q = p + 1
    while not is_prime(q):
        q += 1
    return q


@dataclass(frozen=True)
class Theorem5Report:
    model: ShortModel  # minimized short model the analysis ran on
    exceptional: tuple[int, ...]  # candidate primes where the image may be small
    smallest_full: int | None  # smallest scanned ell certified full
    verdicts: tuple[Verdict, ...]  # per-ell audit for scanned primes


def theorem5_report(
    model,
    *,
    scan_bound: int = 10**4,
    use_mazur_chain: bool = False,
    chains: tuple[str, ...] = ("a", "b", "c"),
) -> Theorem5Report:
    """Finite candidate set of primes ell with possibly non-full mod-ell image.

    The set is {2, 3, 5, 7, 13} union primes of delta' of the minimized model
    union primes below scan_bound where no rule chain applies. Primes of
    delta' are kept as candidates unconditionally (the local analysis above
    assumes ell is coprime to the conductor support).
    """
    if isinstance(model, LongModel):
        model = to_short(model)
    minimized, _ = minimize_short(model)
    reports = bad_primes(minimized)
    dp_primes = set(factorize(minimized.delta_prime()).primes())

    # {2,3,5,7,13} and the primes of delta' are kept as candidates even when a
    # chain nominally certifies them: the local analysis assumes ell coprime to
    # the bad primes, and the small-exceptional ell evade the determinant step.
    base = set(SMALL_EXCEPTIONAL) | dp_primes
    exceptional = set(base)
    verdicts: list[Verdict] = []
    smallest_full: int | None = None
    for ell in primes_below(scan_bound):
        v = image_verdict(reports, ell, use_mazur_chain=use_mazur_chain, chains=chains)
        verdicts.append(v)
        if not v.full:
            exceptional.add(ell)
        elif ell not in base and smallest_full is None:
            smallest_full = ell
    return Theorem5Report(
        minimized, tuple(sorted(exceptional)), smallest_full, tuple(verdicts)
    )
