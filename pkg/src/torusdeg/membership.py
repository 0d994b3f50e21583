"""Three-valued query results and the witnesses they carry."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import ClassVar, Union

from .intmat import IDENTITY, TAU, IntMat2


class Status(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


class NoReason(str, Enum):
    PARITY_OR_SQUARE = "parity_or_square"
    NORM_FORM_CRITERION = "norm_form_criterion"
    MINUS_ONE_OBSTRUCTION = "minus_one_obstruction"
    TABLE2_ARITHMETIC = "table2_arithmetic"
    # the (p, r) search covered a fundamental domain of the form's automorphs
    FUNDAMENTAL_DOMAIN = "fundamental_domain_exhausted"
    INVARIANT = "invariant_mismatch"
    ORIENTATION_RULE = "orientation_rule"
    NIL_GEOMETRY = "nil_geometry"


@dataclass(frozen=True)
class PR:
    """l = p^2 + ((d-a)/c) p r - (b/c) r^2 for the Anosov monodromy."""

    kind: ClassVar[str] = "pr"
    p: int
    r: int
    epsilon: int = 1

    def to_json(self) -> dict:
        return {"type": self.kind, "p": self.p, "r": self.r, "epsilon": self.epsilon}


@dataclass(frozen=True)
class PQ:
    """m = p^2 - delta p q + q^2."""

    kind: ClassVar[str] = "pq"
    p: int
    q: int
    delta: int

    def value(self) -> int:
        return self.p * self.p - self.delta * self.p * self.q + self.q * self.q

    def to_json(self) -> dict:
        return {"type": self.kind, "p": self.p, "q": self.q, "delta": self.delta}


@dataclass(frozen=True)
class TFactor:
    """l = cofactor * (p^2 - delta p q + q^2) with cofactor = 1 mod order."""

    kind: ClassVar[str] = "t_factor"
    cofactor: int
    p: int
    q: int
    order: int
    delta: int

    def value(self) -> int:
        return self.cofactor * PQ(self.p, self.q, self.delta).value()

    def to_json(self) -> dict:
        return {
            "type": self.kind,
            "cofactor": self.cofactor,
            "t": (self.cofactor - 1) // self.order,
            "p": self.p,
            "q": self.q,
            "order": self.order,
            "delta": self.delta,
        }


@dataclass(frozen=True)
class Scalar:
    """l = multiplier * u^2 (squared) or l = multiplier * u."""

    kind: ClassVar[str] = "scalar"
    u: int
    multiplier: int = 1
    squared: bool = False

    def value(self) -> int:
        return self.multiplier * (self.u * self.u if self.squared else self.u)

    def to_json(self) -> dict:
        return {"type": self.kind, "u": self.u, "multiplier": self.multiplier, "squared": self.squared}


@dataclass(frozen=True)
class Conjugator:
    """P psi^exponent P^-1 == phi."""

    kind: ClassVar[str] = "conjugator"
    P: IntMat2
    exponent: int

    def to_json(self) -> dict:
        return {"type": self.kind, "P": self.P.to_json(), "exponent": self.exponent}


@dataclass(frozen=True)
class MatrixWitness:
    """A matrix exhibiting a property, e.g. an orbit member of shape (a b; c -a)."""

    kind: ClassVar[str] = "matrix"
    role: str
    matrix: IntMat2

    def to_json(self) -> dict:
        return {"type": self.kind, "role": self.role, "matrix": self.matrix.to_json()}


def gluing_word(phi: IntMat2, k: int, epsilon: int) -> IntMat2:
    """W with A2 phi = W A1 for a semi-bundle self-map through k fibers.

    k = 2s:   (phi^-e tau phi^e tau)^(s-1) phi^-e tau phi^e
    k = 2s+1: (phi^e tau phi^-e tau)^s phi^e
    """
    fwd = phi if epsilon == 1 else phi.inverse()
    back = fwd.inverse()
    if k % 2:
        factors = [fwd, TAU, back, TAU] * (k // 2) + [fwd]
    else:
        factors = [back, TAU, fwd, TAU] * (k // 2 - 1) + [back, TAU, fwd]
    word = IDENTITY
    for f in factors:
        word = word @ f
    return word


def _boundary_shape(m: IntMat2) -> bool:
    return m.b == 0 and m.c == 0 and m.a % 2 == 1 and m.d != 0


@dataclass(frozen=True)
class MapWitness:
    """Fiber-level data of a self-map: l = k * epsilon * det(A).

    Bundles: A phi = phi^(epsilon k) A.  Semi-bundles: A is the boundary
    map A1 = diag(odd, nonzero) and A2 phi = W A1 with A2 of the same shape.
    ``coordinates`` records the gluing matrix the data refers to when it is
    not the one the caller passed in.
    """

    k: int
    epsilon: int
    a: IntMat2
    a2: IntMat2 | None = None
    coordinates: IntMat2 | None = None

    def degree(self) -> int:
        return self.k * self.epsilon * self.a.det()

    def sort_key(self):
        return (self.k, abs(self.a.det()), self.a.as_tuple(), -self.epsilon)

    def check(self, kind: str, phi: IntMat2) -> bool:
        phi = self.coordinates or phi
        if self.k < 1 or self.epsilon not in (1, -1) or self.a.det() == 0:
            return False
        if kind == "bundle":
            step = phi if self.epsilon == 1 else phi.inverse()
            power = IDENTITY
            for _ in range(self.k):
                power = power @ step
            return self.a @ phi == power @ self.a
        if self.a2 is None or not (_boundary_shape(self.a) and _boundary_shape(self.a2)):
            return False
        return self.a2 @ phi == gluing_word(phi, self.k, self.epsilon) @ self.a

    def to_json(self) -> dict:
        out = {"k": self.k, "epsilon": self.epsilon, "A": self.a.to_json()}
        if self.a2 is not None:
            out["A2"] = self.a2.to_json()
        if self.coordinates is not None:
            out["coordinates"] = self.coordinates.to_json()
        return out


Witness = Union[PR, PQ, TFactor, Scalar, Conjugator, MatrixWitness]


@dataclass(frozen=True)
class Membership:
    status: Status
    witness: Witness | None = None
    reason: NoReason | None = None
    detail: str = ""
    bound: int | None = None

    @classmethod
    def yes(cls, witness: Witness, detail: str = "") -> Membership:
        return cls(Status.YES, witness=witness, detail=detail)

    @classmethod
    def no(cls, reason: NoReason, detail: str = "") -> Membership:
        return cls(Status.NO, reason=reason, detail=detail)

    @classmethod
    def unknown(cls, bound: int, detail: str = "") -> Membership:
        return cls(Status.UNKNOWN, bound=bound, detail=detail)

    @property
    def is_yes(self) -> bool:
        return self.status is Status.YES

    @property
    def is_no(self) -> bool:
        return self.status is Status.NO

    @property
    def is_unknown(self) -> bool:
        return self.status is Status.UNKNOWN

    def to_json(self) -> dict:
        out: dict = {"status": self.status.value}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.reason is not None:
            out["reason"] = self.reason.value
        if self.bound is not None:
            out["bound"] = self.bound
        if self.detail:
            out["detail"] = self.detail
        return out
