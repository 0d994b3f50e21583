"""Number theory behind the degree sets.

Covers factorization, the two positive definite norm forms
p^2 + q^2 and p^2 - pq + q^2, and the indefinite form attached to an
Anosov monodromy phi = (a b; c d):

    f(p, r) = p^2 + ((d - a)/c) p r - (b/c) r^2

whose values at admissible (p, r) are exactly the degrees of self-maps of
the torus bundle.  Left multiplication by phi sends an admissible (p, r)
to another admissible pair with the same value, so every solution has a
representative in a bounded fundamental domain and a finite scan decides
membership.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt
from typing import Iterator

from sympy import isprime

from .errors import FactorizationLimitError, InputError
from .intmat import IntMat2
from .membership import PQ, PR, Membership, NoReason

TRIAL_LIMIT = 10**6
MAX_SCAN = 2_000_000


@dataclass(frozen=True)
class Factorization:
    sign: int
    factors: tuple[tuple[int, int], ...]

    def value(self) -> int:
        out = self.sign
        for p, e in self.factors:
            out *= p**e
        return out

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def divisors(self) -> list[int]:
        divs = [1]
        for p, e in self.factors:
            divs = [d * p**i for d in divs for i in range(e + 1)]
        return sorted(divs)


def factorize(n: int) -> Factorization:
    if n == 0:
        raise InputError("cannot factorize 0")
    sign = 1 if n > 0 else -1
    n = abs(n)
    factors = []
    for p in (2, 3):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            factors.append((p, e))
    p = 5
    step = 2
    while p <= TRIAL_LIMIT and p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors.append((p, e))
        p += step
        step = 6 - step
    if n > 1:
        if n >= TRIAL_LIMIT * TRIAL_LIMIT and not isprime(n):
            raise FactorizationLimitError(
                f"cofactor {n} has no prime factor below {TRIAL_LIMIT} and is composite"
            )
        factors.append((n, 1))
    return Factorization(sign, tuple(factors))


def _odd_power_prime(fact: Factorization, residue: int, modulus: int) -> int | None:
    for p, e in fact.factors:
        if p % modulus == residue and e % 2 == 1:
            return p
    return None


def norm_form_criterion(m: int, delta: int) -> int | None:
    """None when m is a norm; otherwise a prime that obstructs it."""
    if m == 0:
        return None
    fact = factorize(m)
    if delta == 0:
        return _odd_power_prime(fact, 3, 4)
    return _odd_power_prime(fact, 2, 3)


def norm_form_reps(m: int, delta: int) -> Iterator[PQ]:
    """All (p, q) with p^2 - delta p q + q^2 == m, nonnegative ones first."""
    if m < 0:
        return
    if m == 0:
        yield PQ(0, 0, delta)
        return
    # 4m = (2p - delta q)^2 + (4 - delta^2) q^2
    qmax = isqrt(4 * m // (4 - delta * delta))
    seen = set()
    later = []
    for q in range(0, qmax + 1):
        for qq in (q, -q) if q else (0,):
            disc = 4 * m - (4 - delta * delta) * qq * qq
            if disc < 0:
                continue
            s = isqrt(disc)
            if s * s != disc:
                continue
            for root in (s, -s):
                num = delta * qq + root
                if num % 2:
                    continue
                p = num // 2
                if (p, qq) in seen:
                    continue
                seen.add((p, qq))
                if p >= 0 and qq >= 0:
                    yield PQ(p, qq, delta)
                else:
                    later.append(PQ(p, qq, delta))
    yield from later


def represents_norm_form(m: int, delta: int) -> Membership:
    if delta not in (0, 1):
        raise InputError(f"delta must be 0 or 1, got {delta}")
    if m < 0:
        raise InputError(f"norm forms are positive definite; m={m} < 0")
    bad = norm_form_criterion(m, delta)
    if bad is not None:
        modulus = 4 if delta == 0 else 3
        return Membership.no(
            NoReason.NORM_FORM_CRITERION,
            f"prime {bad} = {bad % modulus} mod {modulus} divides {m} to an odd power",
        )
    for w in norm_form_reps(m, delta):
        if w.value() != m:
            raise AssertionError(f"norm form witness {w} does not evaluate to {m}")
        return Membership.yes(w)
    raise AssertionError(f"criterion says {m} is a norm (delta={delta}) but no witness exists")


# -- the Anosov form ---------------------------------------------------------


def _check_anosov(phi: IntMat2) -> None:
    if phi.det() != 1:
        raise InputError(f"monodromy must have det 1, got {phi.det()}")
    if abs(phi.trace()) <= 2:
        raise InputError(f"monodromy {phi} is not Anosov (|trace| <= 2)")
    if phi.c == 0:
        raise InputError("c = 0; use the periodic or Nil paths")


def sol_form_value(phi: IntMat2, p: int, r: int) -> tuple[int, int]:
    """(numerator, c) with f(p, r) = numerator / c."""
    a, b, c, d = phi.as_tuple()
    return c * p * p + (d - a) * p * r - b * r * r, c


def admissible_epsilon(phi: IntMat2, p: int, r: int) -> int | None:
    """+1 or -1 when the completed matrix A is integral for that branch."""
    a, b, c, d = phi.as_tuple()
    if (b * r) % c == 0 and ((d - a) * r) % c == 0:
        return 1
    if (p * (d - a) - b * r) % c == 0:
        return -1
    return None


def check_pr_witness(phi: IntMat2, l: int, w: PR) -> bool:
    num, c = sol_form_value(phi, w.p, w.r)
    if num != c * l:
        return False
    a, b, _, d = phi.as_tuple()
    if w.epsilon == 1:
        return (b * w.r) % c == 0 and ((d - a) * w.r) % c == 0
    return w.epsilon == -1 and (w.p * (d - a) - b * w.r) % c == 0


def spec_box_radius(phi: IntMat2, l: int, bound_scale: int = 1) -> int:
    t = phi.trace()
    disc = t * t - 4
    num = (abs(t) + 2) * abs(phi.c * l) + 1
    root = isqrt(num // disc)
    if root * root * disc < num:
        root += 1
    return bound_scale * max(1, root + abs(phi.c))


def fundamental_domain_radius(phi: IntMat2, l: int) -> int:
    """Bound on |r| over one automorph orbit representative of each solution.

    With L1, L2 the eigen-linear forms (L1 L2 = l) and lambda the expanding
    eigenvalue, some image has |L1|, |L2| <= sqrt(lambda |l|); then
    |r| = |L1 - L2| |c| / sqrt(D) <= 2 |c| sqrt(lambda |l| / D) and
    lambda < |trace|.
    """
    t = phi.trace()
    disc = t * t - 4
    return isqrt(4 * phi.c * phi.c * abs(t) * abs(l) // disc) + 1


def sol_solutions(phi: IntMat2, l: int, r_max: int) -> Iterator[PR]:
    """Admissible (p, r) with f(p, r) == l and |r| <= r_max, by increasing |r|."""
    a, b, c, d = phi.as_tuple()
    disc_form = (a + d) ** 2 - 4
    for rr in range(0, r_max + 1):
        for r in (rr, -rr) if rr else (0,):
            delta = disc_form * r * r + 4 * c * c * l
            if delta < 0:
                continue
            s = isqrt(delta)
            if s * s != delta:
                continue
            for root in {s, -s}:
                num = -(d - a) * r + root
                if num % (2 * c):
                    continue
                p = num // (2 * c)
                eps = admissible_epsilon(phi, p, r)
                if eps is not None:
                    yield PR(p, r, eps)


def _witness_key(w: PR):
    return (abs(w.r), abs(w.p), -w.p, -w.r)


def sol_quadratic_membership(
    l: int, phi: IntMat2, bound_scale: int = 1, max_scan: int = MAX_SCAN
) -> Membership:
    _check_anosov(phi)
    if bound_scale < 1:
        raise InputError("bound_scale must be positive")
    if l == 0:
        return Membership.yes(PR(0, 0, 1), "constant map")
    if l == -1 and minus_one_obstruction(phi):
        t = phi.trace()
        return Membership.no(
            NoReason.MINUS_ONE_OBSTRUCTION,
            f"{t + 2} or {t - 2} has a prime = 3 mod 4 to an odd power",
        )
    r_box = spec_box_radius(phi, l, bound_scale)
    r_fd = fundamental_domain_radius(phi, l)
    complete = r_fd <= max_scan
    r_max = max(r_box, r_fd) if complete else min(r_box, max_scan)
    best = None
    for w in sol_solutions(phi, l, r_max):
        if best is not None and abs(w.r) > abs(best.r):
            break
        if best is None or _witness_key(w) < _witness_key(best):
            best = w
    if best is not None:
        if not check_pr_witness(phi, l, best):
            raise AssertionError(f"witness {best} fails substitution for l={l}")
        return Membership.yes(best)
    if complete:
        return Membership.no(
            NoReason.FUNDAMENTAL_DOMAIN,
            f"no admissible (p, r) with |r| <= {r_max}, which covers a fundamental domain",
        )
    return Membership.unknown(r_max, f"fundamental domain needs |r| <= {r_fd}, above max_scan")


def minus_one_obstruction(phi: IntMat2) -> bool:
    if phi.det() != 1 or abs(phi.trace()) <= 2:
        raise InputError("minus_one_obstruction needs an Anosov matrix of det 1")
    t = phi.trace()
    for n in (t + 2, t - 2):
        if _odd_power_prime(factorize(n), 3, 4) is not None:
            return True
    return False


def minus_one_trace3_witness(phi: IntMat2) -> PR:
    """Explicit degree -1 solution when |a + d| = 3."""
    if phi.det() != 1:
        raise InputError(f"monodromy must have det 1, got {phi.det()}")
    t = phi.trace()
    if t == 3:
        w = PR(1 - phi.d, phi.c, 1)
    elif t == -3:
        w = PR(-1 - phi.d, phi.c, 1)
    else:
        raise InputError(f"trace must be +-3, got {t}")
    if not check_pr_witness(phi, -1, w):
        raise AssertionError(f"trace-3 witness {w} fails substitution")
    return w


def content(phi: IntMat2) -> int:
    """gcd(c, d - a, b): content of the form, a GL2(Z)-conjugacy invariant."""
    return gcd(gcd(phi.c, phi.d - phi.a), phi.b)


__all__ = [
    "Factorization",
    "factorize",
    "represents_norm_form",
    "norm_form_reps",
    "norm_form_criterion",
    "sol_quadratic_membership",
    "sol_solutions",
    "sol_form_value",
    "check_pr_witness",
    "minus_one_obstruction",
    "minus_one_trace3_witness",
    "fundamental_domain_radius",
    "spec_box_radius",
    "content",
]
