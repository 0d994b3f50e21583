"""Torus semi-bundles N_phi: orbits under coordinate changes, normal forms,
geometry and the torus-bundle double cover."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import product
from math import gcd

from .bundle import Geometry
from .errors import InputError
from .intmat import IDENTITY, SWAP, TAU, IntMat2

SIGN_DIAGONALS = tuple(IntMat2.diag(s, t) for s, t in product((1, -1), repeat=2))


class SemiKind(str, Enum):
    IDENTITY = "identity"
    SWAP = "swap"
    LOWER_UNI = "lower_uni"
    SWAP_SHEAR = "swap_shear"
    UPPER_UNI = "upper_uni"
    SOL_GENERIC = "sol_generic"


@dataclass(frozen=True)
class SemiNormalForm:
    kind: SemiKind
    rep: IntMat2
    z: int | None = None

    def to_json(self) -> dict:
        out = {"family": self.kind.value, "representative": self.rep.to_json()}
        if self.z is not None:
            out["z"] = self.z
        return out


def _require_unimodular(phi: IntMat2) -> None:
    if not phi.is_unimodular():
        raise InputError(f"semi-bundle gluing matrix must have det +-1, got det={phi.det()} for {phi}")


def orbit(phi: IntMat2) -> frozenset[IntMat2]:
    """All D1 phi^(+-1) D2 with D1, D2 diagonal sign matrices."""
    _require_unimodular(phi)
    out = set()
    for m in (phi, phi.inverse()):
        for d1 in SIGN_DIAGONALS:
            for d2 in SIGN_DIAGONALS:
                out.add(d1 @ m @ d2)
    return frozenset(out)


def delta(a: int, d: int) -> int:
    """ad / gcd(a, d)^2, signed."""
    g = gcd(a, d)
    if g == 0:
        raise InputError("delta(a, d) needs a or d nonzero")
    return (a // g) * (d // g)


def normal_form(phi: IntMat2) -> SemiNormalForm:
    orb = orbit(phi)
    if IDENTITY in orb:
        return SemiNormalForm(SemiKind.IDENTITY, IDENTITY)
    if SWAP in orb:
        return SemiNormalForm(SemiKind.SWAP, SWAP)
    for kind, shape in (
        (SemiKind.LOWER_UNI, lambda m: m.a == 1 and m.b == 0 and m.d == 1 and m.c > 0),
        (SemiKind.SWAP_SHEAR, lambda m: m.a == 0 and m.b == 1 and m.c == 1 and m.d > 0),
        (SemiKind.UPPER_UNI, lambda m: m.a == 1 and m.c == 0 and m.d == 1 and m.b > 0),
    ):
        hits = sorted(m for m in orb if shape(m))
        if hits:
            rep = hits[0]
            z = {SemiKind.LOWER_UNI: rep.c, SemiKind.SWAP_SHEAR: rep.d, SemiKind.UPPER_UNI: rep.b}[kind]
            return SemiNormalForm(kind, rep, z)
    sol = sorted(m for m in orb if m.det() == 1 and m.a * m.b * m.c * m.d != 0)
    # unimodular with a zero entry always lands in a family above
    assert sol, f"orbit of {phi} has no Sol representative"
    return SemiNormalForm(SemiKind.SOL_GENERIC, sol[0])


def semibundles_equivalent(phi: IntMat2, psi: IntMat2) -> bool:
    _require_unimodular(psi)
    return psi in orbit(phi)


def geometry_semibundle(phi: IntMat2) -> Geometry:
    kind = normal_form(phi).kind
    if kind in (SemiKind.IDENTITY, SemiKind.SWAP):
        return Geometry.E3
    if kind is SemiKind.SOL_GENERIC:
        return Geometry.SOL
    return Geometry.NIL


def is_also_torus_bundle(phi: IntMat2) -> bool:
    return normal_form(phi).kind in (SemiKind.IDENTITY, SemiKind.LOWER_UNI)


def double_cover_monodromy(phi: IntMat2) -> IntMat2:
    """Monodromy tau phi tau phi^-1 of the torus bundle double covering N_phi."""
    _require_unimodular(phi)
    return TAU @ phi @ TAU @ phi.inverse()


def standard_coordinates(phi: IntMat2) -> bool:
    """True when phi is literally one of the listed gluing-matrix shapes."""
    a, b, c, d = phi.as_tuple()
    if phi in (IDENTITY, SWAP):
        return True
    if (a, b, d) == (1, 0, 1) or (a, c, d) == (1, 0, 1):
        return True
    if (a, b, c) == (0, 1, 1):
        return True
    return phi.det() == 1 and a * b * c * d != 0
