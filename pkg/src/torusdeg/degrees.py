"""Degree sets D(M) of torus bundles and semi-bundles.

``descriptor`` names the family D(M) belongs to, ``contains`` decides
membership with an auditable witness, ``enumerate_degrees`` scans a window,
and ``realizations`` turns a degree into explicit fiber-level map data
(k, epsilon, A[, A2]) that satisfies the defining matrix equation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from math import gcd, isqrt
from typing import Callable, Iterator

from .bundle import classify_monodromy
from .errors import InputError
from .intmat import IDENTITY, SWAP, IntMat2
from .membership import MapWitness, Membership, MatrixWitness, NoReason, Scalar, TFactor, gluing_word
from .quadform import (
    factorize,
    fundamental_domain_radius,
    norm_form_reps,
    represents_norm_form,
    sol_quadratic_membership,
    sol_solutions,
)
from .semibundle import SemiKind, delta, normal_form, orbit, standard_coordinates


class Kind(str, Enum):
    BUNDLE = "bundle"
    SEMIBUNDLE = "semibundle"


@dataclass(frozen=True)
class BundleSpec:
    kind: Kind
    phi: IntMat2

    def __post_init__(self):
        try:
            kind = Kind(self.kind)
        except ValueError:
            raise InputError(f"kind must be 'bundle' or 'semibundle', got {self.kind!r}") from None
        object.__setattr__(self, "kind", kind)
        det = self.phi.det()
        if kind is Kind.BUNDLE and det != 1:
            raise InputError(f"torus bundle monodromy must have det 1, got det={det}")
        if kind is Kind.SEMIBUNDLE and det not in (1, -1):
            raise InputError(f"semi-bundle gluing matrix must have det +-1, got det={det}")

    @classmethod
    def bundle(cls, phi: IntMat2) -> BundleSpec:
        return cls(Kind.BUNDLE, phi)

    @classmethod
    def semibundle(cls, phi: IntMat2) -> BundleSpec:
        return cls(Kind.SEMIBUNDLE, phi)


class Family(str, Enum):
    ALL_INTEGERS = "all_integers"
    ODD_INTEGERS = "odd_integers"
    SQUARES = "squares"
    ODD_SQUARES = "odd_squares"
    ODD_SQUARES_UNION_DELTA = "odd_squares_union_delta_odd_squares"
    NORM_FORM_FAMILY = "norm_form_family"
    SOL_QUADRATIC = "sol_quadratic"


@dataclass(frozen=True)
class DegreeSetDescriptor:
    family: Family
    order: int | None = None
    delta: int | None = None
    rep: IntMat2 | None = None

    @property
    def exact(self) -> bool:
        return self.family is not Family.SOL_QUADRATIC

    def to_json(self) -> dict:
        out: dict = {"type": self.family.value}
        if self.order is not None:
            out["k"] = self.order
        if self.delta is not None:
            out["delta"] = self.delta
        if self.rep is not None:
            out["rep"] = self.rep.to_json()
        return out

    def describe(self) -> str:
        f = self.family
        if f is Family.ALL_INTEGERS:
            return "Z"
        if f is Family.ODD_INTEGERS:
            return "{2l+1}"
        if f is Family.SQUARES:
            return "{l^2}"
        if f is Family.ODD_SQUARES:
            return "{(2l+1)^2}"
        if f is Family.ODD_SQUARES_UNION_DELTA:
            return f"{{(2l+1)^2}} U {{{self.delta}(2l+1)^2}}"
        if f is Family.NORM_FORM_FAMILY:
            form = "p^2+q^2" if self.delta == 0 else "p^2-pq+q^2"
            return f"{{({self.order}t+1)({form})}}"
        a, b, c, d = self.rep.as_tuple()
        return f"{{p^2 + ({d - a}/{c})pr - ({b}/{c})r^2 : admissible p, r}}"


def descriptor(spec: BundleSpec) -> DegreeSetDescriptor:
    if spec.kind is Kind.BUNDLE:
        cls = classify_monodromy(spec.phi)
        if cls.kind == "periodic":
            if cls.order in (1, 2):
                return DegreeSetDescriptor(Family.ALL_INTEGERS)
            return DegreeSetDescriptor(Family.NORM_FORM_FAMILY, order=cls.order, delta=0 if cls.order == 4 else 1)
        if cls.kind == "parabolic":
            return DegreeSetDescriptor(Family.SQUARES)
        return DegreeSetDescriptor(Family.SOL_QUADRATIC, rep=spec.phi)
    nf = normal_form(spec.phi)
    if nf.kind is SemiKind.IDENTITY:
        return DegreeSetDescriptor(Family.ALL_INTEGERS)
    if nf.kind is SemiKind.SWAP:
        return DegreeSetDescriptor(Family.ODD_INTEGERS)
    if nf.kind is SemiKind.LOWER_UNI:
        return DegreeSetDescriptor(Family.SQUARES)
    if nf.kind in (SemiKind.SWAP_SHEAR, SemiKind.UPPER_UNI):
        return DegreeSetDescriptor(Family.ODD_SQUARES)
    dl = delta(nf.rep.a, nf.rep.d)
    if dl % 2 == 0:
        return DegreeSetDescriptor(Family.ODD_SQUARES, delta=dl, rep=nf.rep)
    return DegreeSetDescriptor(Family.ODD_SQUARES_UNION_DELTA, delta=dl, rep=nf.rep)


def _square_root(l: int) -> int | None:
    if l < 0:
        return None
    u = isqrt(l)
    return u if u * u == l else None


def _checked(m: Membership, l: int) -> Membership:
    w = m.witness
    if m.is_yes and hasattr(w, "value") and w.value() != l:
        raise AssertionError(f"witness {w} evaluates to {w.value()}, not {l}")
    return m


def contains(spec: BundleSpec, l: int, bound_scale: int = 1) -> Membership:
    desc = descriptor(spec)
    f = desc.family
    if f is Family.SOL_QUADRATIC:
        return sol_quadratic_membership(l, desc.rep, bound_scale)
    if l == 0:
        return Membership.yes(Scalar(0), "constant map")
    if f is Family.ALL_INTEGERS:
        return _checked(Membership.yes(Scalar(l)), l)
    if f is Family.ODD_INTEGERS:
        if l % 2:
            return _checked(Membership.yes(Scalar(l)), l)
        return Membership.no(NoReason.PARITY_OR_SQUARE, f"{l} is even")
    if f in (Family.SQUARES, Family.ODD_SQUARES):
        u = _square_root(l)
        if u is None:
            return Membership.no(NoReason.PARITY_OR_SQUARE, f"{l} is not a square")
        if f is Family.ODD_SQUARES and u % 2 == 0:
            return Membership.no(NoReason.PARITY_OR_SQUARE, f"{l} is an even square")
        return _checked(Membership.yes(Scalar(u, squared=True)), l)
    if f is Family.ODD_SQUARES_UNION_DELTA:
        u = _square_root(l)
        if u is not None and u % 2:
            return _checked(Membership.yes(Scalar(u, squared=True)), l)
        dl = desc.delta
        if l % dl == 0:
            u = _square_root(l // dl)
            if u is not None and u % 2:
                return _checked(Membership.yes(Scalar(u, multiplier=dl, squared=True)), l)
        return Membership.no(NoReason.TABLE2_ARITHMETIC, f"{l} is neither an odd square nor {dl} times one")
    # norm form family: l = c * m with c = 1 mod order and m a norm
    order, dl = desc.order, desc.delta
    for m in factorize(l).divisors():
        cof = l // m
        if cof % order != 1:
            continue
        rep = represents_norm_form(m, dl)
        if rep.is_yes:
            w = rep.witness
            return _checked(Membership.yes(TFactor(cof, w.p, w.q, order, dl)), l)
    return Membership.no(
        NoReason.NORM_FORM_CRITERION,
        f"no divisor m of {l} is a norm with {l}/m = 1 mod {order}",
    )


@dataclass
class Enumeration:
    spec: BundleSpec
    N: int
    results: dict[int, Membership] = field(default_factory=dict)

    @property
    def yes(self) -> list[int]:
        return [l for l in sorted(self.results) if self.results[l].is_yes]

    @property
    def no(self) -> list[int]:
        return [l for l in sorted(self.results) if self.results[l].is_no]

    @property
    def unknown(self) -> list[int]:
        return [l for l in sorted(self.results) if self.results[l].is_unknown]


def enumerate_degrees(spec: BundleSpec, N: int, bound_scale: int = 1) -> Enumeration:
    if N < 1:
        raise InputError("N must be positive")
    out = Enumeration(spec, N)
    for l in range(-N, N + 1):
        out.results[l] = contains(spec, l, bound_scale)
    return out


def reverses_orientation(spec: BundleSpec, bound_scale: int = 1) -> Membership:
    """Does M admit an orientation reversing self-homeomorphism?"""
    if spec.kind is Kind.SEMIBUNDLE:
        nf = normal_form(spec.phi)
        if nf.kind in (SemiKind.IDENTITY, SemiKind.SWAP):
            return Membership.yes(MatrixWitness("normal_form", nf.rep))
        if nf.kind is not SemiKind.SOL_GENERIC:
            return Membership.no(NoReason.NIL_GEOMETRY, "Nil manifolds admit no orientation reversal")
        hits = sorted(
            m for m in orbit(spec.phi) if m.det() == 1 and m.d == -m.a and m.a * m.b * m.c != 0
        )
        if hits:
            return Membership.yes(MatrixWitness("trace_zero_member", hits[0]))
        return Membership.no(NoReason.ORIENTATION_RULE, "no det 1 coordinate of the form (a b; c -a)")
    cls = classify_monodromy(spec.phi)
    if cls.kind == "periodic":
        if cls.order in (1, 2):
            return Membership.yes(MatrixWitness("monodromy", spec.phi))
        return Membership.no(NoReason.ORIENTATION_RULE, f"periodic of order {cls.order}, not +-I")
    if cls.kind == "parabolic":
        return Membership.no(NoReason.NIL_GEOMETRY, "Nil manifolds admit no orientation reversal")
    return contains(spec, -1, bound_scale)


# -- explicit map data ---------------------------------------------------------


def _signed_divisors(n: int, odd_only: bool = False) -> list[int]:
    divs = factorize(n).divisors() if n else []
    if odd_only:
        divs = [d for d in divs if d % 2]
    return [s * d for d in divs for s in (1, -1)]


def _bundle_realizations(phi: IntMat2, l: int) -> Iterator[MapWitness]:
    cls = classify_monodromy(phi)
    sign = 1 if l > 0 else -1
    if cls.kind == "periodic" and cls.order in (1, 2):
        for k in factorize(l).divisors():
            if cls.order == 2 and k % 2 == 0:
                continue
            q = abs(l) // k
            for x in factorize(q).divisors():
                yield MapWitness(k, sign, IntMat2.diag(x, q // x))
    elif cls.kind == "periodic":
        order = cls.order
        dl = 0 if order == 4 else 1
        for m in factorize(l).divisors():
            cof = l // m
            if cof % order != 1:
                continue
            for w in norm_form_reps(m, dl):
                s = -w.q if phi.trace() == 1 else w.q
                A = IDENTITY.scale(w.p) + phi.scale(s)
                yield MapWitness(abs(cof), 1 if cof > 0 else -1, A)
    elif cls.kind == "parabolic":
        u = _square_root(l)
        if u is not None:
            yield MapWitness(1, 1, IDENTITY.scale(u))
            yield MapWitness(1, 1, IDENTITY.scale(-u))
    else:
        a, b, c, d = phi.as_tuple()
        for w in sol_solutions(phi, l, fundamental_domain_radius(phi, l)):
            p, r = w.p, w.r
            if (b * r) % c == 0 and ((d - a) * r) % c == 0:
                yield MapWitness(1, 1, IntMat2(p, b * r // c, r, (c * p + (d - a) * r) // c))
            if (p * (d - a) - b * r) % c == 0:
                yield MapWitness(1, -1, IntMat2(p, (p * (d - a) - b * r) // c, r, -p))


def _with_a2(coords: IntMat2, k: int, eps: int, a1: IntMat2, explicit: bool) -> MapWitness:
    a2 = gluing_word(coords, k, eps) @ a1 @ coords.inverse()
    return MapWitness(k, eps, a1, a2, None if explicit else coords)


def _semibundle_realizations(phi: IntMat2, l: int) -> Iterator[MapWitness]:
    explicit = standard_coordinates(phi)
    C = phi if explicit else normal_form(phi).rep
    a, b, c, d = C.as_tuple()
    if C == IDENTITY or C == SWAP:
        if C == SWAP and l % 2 == 0:
            return
        for x in _signed_divisors(l, odd_only=True):
            for eps in (1, -1):
                yield _with_a2(C, 1, eps, IntMat2.diag(x, eps * l // x), explicit)
        return
    if (a, b, d) == (1, 0, 1) or (a, c, d) == (1, 0, 1) or (a, b, c) == (0, 1, 1):
        s = _square_root(l)
        if not s:
            return
        lower = (a, b, d) == (1, 0, 1)
        for k in factorize(s).divisors():
            x = s // k
            if x % 2 == 0 or (not lower and k % 2 == 0):
                continue
            for xs in (x, -x):
                if lower:
                    cands = [(eps, IntMat2.diag(xs, eps * k * xs)) for eps in (1, -1)]
                elif a == 1:  # upper unitriangular
                    cands = [(eps, IntMat2.diag(eps * k * xs, xs)) for eps in (1, -1)]
                else:  # (0 1; 1 z): only epsilon = +1 occurs
                    cands = [(1, IntMat2.diag(k * xs, xs))]
                for eps, a1 in cands:
                    yield _with_a2(C, k, eps, a1, explicit)
        return
    # Sol coordinates: det 1, abcd != 0, and only k = 1 occurs
    x = _square_root(l)
    if x is not None and x % 2:
        for xs in (x, -x):
            yield _with_a2(C, 1, 1, IntMat2.diag(xs, xs), explicit)
    g = gcd(a, d)
    ag, dg = a // g, d // g
    if ag % 2 and dg % 2 and l % (ag * dg) == 0:
        u = _square_root(l // (ag * dg))
        if u is not None and u % 2:
            for us in (u, -u):
                yield _with_a2(C, 1, -1, IntMat2.diag(us * ag, -us * dg), explicit)


def realizations(spec: BundleSpec, l: int) -> Iterator[MapWitness]:
    """Every map datum the formulas produce for degree l, each verified."""
    if l == 0:
        return
    gen = _bundle_realizations if spec.kind is Kind.BUNDLE else _semibundle_realizations
    for w in gen(spec.phi, l):
        if w.degree() != l or not w.check(spec.kind.value, spec.phi):
            raise AssertionError(f"realization {w} of degree {l} fails its matrix equation")
        yield w


def realize(
    spec: BundleSpec, l: int, fits: Callable[[MapWitness], bool] | None = None
) -> MapWitness | None:
    best = None
    for w in realizations(spec, l):
        if fits is not None and not fits(w):
            continue
        if best is None or w.sort_key() < best.sort_key():
            best = w
    return best
