"""Orientable torus bundles M_phi: monodromy classes, geometry, equivalence."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import InputError
from .intmat import IDENTITY, NEG_IDENTITY, IntMat2
from .membership import Conjugator, Membership, NoReason
from .oracle import find_conjugator
from .quadform import content


class Geometry(str, Enum):
    E3 = "E3"
    NIL = "Nil"
    SOL = "Sol"


# finite-order representatives, indexed by order
CANONICAL_PERIODIC = {
    1: IDENTITY,
    2: NEG_IDENTITY,
    3: IntMat2(-1, -1, 1, 0),
    4: IntMat2(0, -1, 1, 0),
    6: IntMat2(0, -1, 1, 1),
}
_ORDER_BY_TRACE = {-1: 3, 0: 4, 1: 6}


@dataclass(frozen=True)
class MonodromyClass:
    kind: str  # "periodic" | "parabolic" | "anosov"
    order: int | None = None
    canonical_form: IntMat2 | None = None
    sign: int | None = None
    n: int | None = None

    @property
    def geometry(self) -> Geometry:
        return {"periodic": Geometry.E3, "parabolic": Geometry.NIL, "anosov": Geometry.SOL}[self.kind]

    def to_json(self) -> dict:
        out = {"class": self.kind.capitalize(), "geometry": self.geometry.value}
        if self.kind == "periodic":
            out["order"] = self.order
            out["canonical_form"] = self.canonical_form.to_json()
        elif self.kind == "parabolic":
            out["sign"] = self.sign
            out["n"] = self.n
        return out


def _require_sl2(phi: IntMat2) -> None:
    if phi.det() != 1:
        raise InputError(f"torus bundle monodromy must have det 1, got det={phi.det()} for {phi}")


def classify_monodromy(phi: IntMat2) -> MonodromyClass:
    _require_sl2(phi)
    t = phi.trace()
    if abs(t) > 2:
        return MonodromyClass("anosov")
    if t in _ORDER_BY_TRACE:
        order = _ORDER_BY_TRACE[t]
        return MonodromyClass("periodic", order=order, canonical_form=CANONICAL_PERIODIC[order])
    sign = t // 2
    if phi == IDENTITY.scale(sign):
        order = 1 if sign == 1 else 2
        return MonodromyClass("periodic", order=order, canonical_form=CANONICAL_PERIODIC[order])
    # phi - sign*I is nilpotent and conjugate to (0 sign*n; 0 0); entry gcd is invariant
    n = (phi - IDENTITY.scale(sign)).gcd_entries()
    return MonodromyClass("parabolic", sign=sign, n=n)


def geometry(phi: IntMat2) -> Geometry:
    return classify_monodromy(phi).geometry


def bundles_equivalent(phi: IntMat2, psi: IntMat2, search_len: int = 8) -> Membership:
    """Is M_phi diffeomorphic to M_psi, i.e. phi ~ psi^(+-1) in GL2(Z)?"""
    _require_sl2(phi)
    _require_sl2(psi)
    if phi.trace() != psi.trace():
        return Membership.no(NoReason.INVARIANT, f"trace {phi.trace()} != {psi.trace()}")
    cp, cq = classify_monodromy(phi), classify_monodromy(psi)
    if cp.kind != cq.kind:
        return Membership.no(NoReason.INVARIANT, f"class {cp.kind} != {cq.kind}")
    if cp.kind == "periodic" and cp.order != cq.order:
        return Membership.no(NoReason.INVARIANT, f"periodic order {cp.order} != {cq.order}")
    if cp.kind == "parabolic" and cp.n != cq.n:
        return Membership.no(NoReason.INVARIANT, f"parabolic invariant {cp.n} != {cq.n}")
    if cp.kind == "anosov" and content(phi) != content(psi):
        return Membership.no(
            NoReason.INVARIANT, f"form content {content(phi)} != {content(psi)}"
        )
    hits = []
    for exponent in (1, -1):
        found = find_conjugator(phi, psi**exponent, search_len)
        if found is not None:
            P, depth = found
            hits.append((depth, -exponent, P.as_tuple(), P, exponent))
    if hits:
        depth, _, _, P, exponent = min(hits)
        return Membership.yes(Conjugator(P, exponent), f"word length {depth}")
    return Membership.unknown(search_len, "no conjugator among words of this length")
