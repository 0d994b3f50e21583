"""Exact 2x2 integer matrices.

Entries are Python ints, so arithmetic never wraps around; the size
limits that matter downstream are enforced by the callers that do
searches (see ``oracle``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

from .errors import InputError


@dataclass(frozen=True, order=True)
class IntMat2:
    """Row-major matrix [[a, b], [c, d]]; immutable and hashable."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int):
                # accept numpy ints and friends, reject floats
                try:
                    iv = int(v)
                except (TypeError, ValueError):
                    raise InputError(f"matrix entry {name}={v!r} is not an integer") from None
                if iv != v:
                    raise InputError(f"matrix entry {name}={v!r} is not an integer")
                object.__setattr__(self, name, iv)

    @classmethod
    def identity(cls) -> IntMat2:
        return cls(1, 0, 0, 1)

    @classmethod
    def diag(cls, x: int, y: int) -> IntMat2:
        return cls(x, 0, 0, y)

    @classmethod
    def from_rows(cls, rows) -> IntMat2:
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def __iter__(self) -> Iterator[int]:
        return iter(self.as_tuple())

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def trace(self) -> int:
        return self.a + self.d

    def is_unimodular(self) -> bool:
        return abs(self.det()) == 1

    def __neg__(self) -> IntMat2:
        return IntMat2(-self.a, -self.b, -self.c, -self.d)

    def __add__(self, other: IntMat2) -> IntMat2:
        return IntMat2(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def __sub__(self, other: IntMat2) -> IntMat2:
        return IntMat2(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def scale(self, k: int) -> IntMat2:
        return IntMat2(k * self.a, k * self.b, k * self.c, k * self.d)

    def __matmul__(self, other: IntMat2) -> IntMat2:
        if not isinstance(other, IntMat2):
            return NotImplemented
        return IntMat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> IntMat2:
        """Integer inverse; only defined when det is +1 or -1."""
        det = self.det()
        if det not in (1, -1):
            raise InputError(f"{self} is not invertible over Z (det={det})")
        # adjugate divided by det; det = +-1 so division is multiplication
        return IntMat2(det * self.d, -det * self.b, -det * self.c, det * self.a)

    def __pow__(self, k: int) -> IntMat2:
        if k < 0:
            return self.inverse() ** (-k)
        result = IntMat2.identity()
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def conjugate_by(self, p: IntMat2) -> IntMat2:
        """Return p @ self @ p^-1."""
        return p @ self @ p.inverse()

    def gcd_entries(self) -> int:
        from math import gcd

        return gcd(gcd(self.a, self.b), gcd(self.c, self.d))

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"

    def to_text(self) -> str:
        return f"{self.a},{self.b},{self.c},{self.d}"

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d}

    @classmethod
    def from_json(cls, obj) -> IntMat2:
        if isinstance(obj, str):
            return parse_matrix(obj)
        if isinstance(obj, dict):
            try:
                return cls(obj["a"], obj["b"], obj["c"], obj["d"])
            except KeyError as exc:
                raise InputError(f"matrix object missing field {exc}") from None
        if isinstance(obj, (list, tuple)):
            if len(obj) == 4:
                return cls(*obj)
            if len(obj) == 2:
                return cls.from_rows(obj)
        raise InputError(f"cannot interpret {obj!r} as a 2x2 integer matrix")


IDENTITY = IntMat2(1, 0, 0, 1)
NEG_IDENTITY = IntMat2(-1, 0, 0, -1)
# the fiber involution on the boundary torus, in (l_0, l_inf) coordinates
TAU = IntMat2(1, 0, 0, -1)
SWAP = IntMat2(0, 1, 1, 0)

_INT = r"\s*([+-]?\d+)\s*"
_FLAT = re.compile(rf"^{_INT},{_INT},{_INT},{_INT}$")
_NESTED = re.compile(rf"^\s*\[\s*\[{_INT},{_INT}\]\s*,\s*\[{_INT},{_INT}\]\s*\]\s*$")


def parse_matrix(text: str) -> IntMat2:
    """Parse "a,b,c,d" or "[[a,b],[c,d]]" (whitespace tolerated)."""
    text = text.replace("−", "-")
    m = _FLAT.match(text) or _NESTED.match(text)
    if not m:
        raise InputError(f"malformed matrix {text!r}; expected 'a,b,c,d' or '[[a,b],[c,d]]'")
    return IntMat2(*(int(g) for g in m.groups()))


def det(m: IntMat2) -> int:
    return m.det()


def trace(m: IntMat2) -> int:
    return m.trace()


def mul(m: IntMat2, n: IntMat2) -> IntMat2:
    return m @ n


def mat_pow(m: IntMat2, k: int) -> IntMat2:
    return m ** k


def inverse_unimodular(m: IntMat2) -> IntMat2:
    return m.inverse()


def conjugate(p: IntMat2, m: IntMat2) -> IntMat2:
    """P M P^-1 for unimodular P."""
    if not p.is_unimodular():
        raise InputError(f"conjugator {p} is not unimodular")
    return m.conjugate_by(p)
