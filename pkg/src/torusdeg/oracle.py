"""Brute-force ground truth for self-map degrees.

Bundles: search every nondegenerate A in a box with A phi = phi^(eps k) A
and record l = k * eps * det(A).

Semi-bundles: search every A1 = diag(2m+1, n), build the word W for
(k, eps) by literal left multiplication, set A2 = W A1 phi^-1 and accept
when A2 has the boundary-map shape diag(odd, nonzero).

Nothing here calls into the formula modules; the two routes are compared
in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InputError, SearchLimitError
from .intmat import IDENTITY, SWAP, TAU, IntMat2
from .membership import MapWitness

_INT64_SAFE = 2**62
# one (q, r, s) grid is materialized per value of p
MAX_GRID = 30_000_000


@dataclass
class OracleReport:
    kind: str
    phi: IntMat2
    search_params: dict
    witnesses: dict[int, MapWitness] = field(default_factory=dict)

    @property
    def degrees(self) -> list[int]:
        return sorted(self.witnesses)

    def offer(self, w: MapWitness) -> None:
        l = w.degree()
        cur = self.witnesses.get(l)
        if cur is None or w.sort_key() < cur.sort_key():
            self.witnesses[l] = w

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "matrix": self.phi.to_json(),
            "search_params": dict(self.search_params),
            "degrees": [{"l": l, "witness": self.witnesses[l].to_json()} for l in self.degrees],
        }


def _solve_box(phi: IntMat2, psi: IntMat2, bound: int):
    """All (p, q, r, s) in [-bound, bound]^4 with A phi == psi A, det A != 0."""
    a, b, c, d = phi.as_tuple()
    e, f, g, h = psi.as_tuple()
    worst = 2 * bound * max(abs(a) + abs(c), abs(b) + abs(d), abs(e) + abs(f), abs(g) + abs(h))
    dtype = np.int64 if worst < _INT64_SAFE and bound * bound < _INT64_SAFE else object
    rng = np.arange(-bound, bound + 1, dtype=np.int64).astype(dtype)
    q, r, s = np.meshgrid(rng, rng, rng, indexing="ij")
    q, r, s = q.ravel(), r.ravel(), s.ravel()
    found = []
    for p in range(-bound, bound + 1):
        ok = (p * a + q * c) == (e * p + f * r)
        ok &= (p * b + q * d) == (e * q + f * s)
        ok &= (r * a + s * c) == (g * p + h * r)
        ok &= (r * b + s * d) == (g * q + h * s)
        ok &= (p * s - q * r) != 0
        for i in np.flatnonzero(ok):
            found.append(IntMat2(p, int(q[i]), int(r[i]), int(s[i])))
    return found


def bundle_oracle(phi: IntMat2, K: int, B: int) -> OracleReport:
    if phi.det() != 1:
        raise InputError(f"bundle monodromy must have det 1, got det={phi.det()}")
    if K < 1 or B < 1:
        raise InputError("K and B must be positive")
    if (2 * B + 1) ** 3 > MAX_GRID:
        raise SearchLimitError(f"entry bound B={B} needs a grid of {(2 * B + 1) ** 3} cells per row")
    report = OracleReport("bundle", phi, {"K": K, "B": B})
    for k in range(1, K + 1):
        for eps in (1, -1):
            psi = phi ** (eps * k)
            for a in _solve_box(phi, psi, B):
                report.offer(MapWitness(k, eps, a))
    return report


def semibundle_word(phi: IntMat2, k: int, eps: int) -> IntMat2:
    """The gluing word W with A2 phi = W A1 for a k-sheeted map."""
    fwd, back = phi ** eps, phi ** (-eps)
    s, odd = divmod(k, 2)
    if odd:
        w = fwd
        block = fwd @ TAU @ back @ TAU
        reps = s
    else:
        w = back @ TAU @ fwd
        block = back @ TAU @ fwd @ TAU
        reps = s - 1
    for _ in range(reps):
        w = block @ w
    return w


def semibundle_oracle(phi: IntMat2, K: int, M_bound: int, N_bound: int) -> OracleReport:
    if not phi.is_unimodular():
        raise InputError(f"semi-bundle gluing matrix must have det +-1, got det={phi.det()}")
    if min(K, M_bound, N_bound) < 1:
        raise InputError("K, M_bound and N_bound must be positive")
    report = OracleReport("semibundle", phi, {"K": K, "M_bound": M_bound, "N_bound": N_bound})
    phi_inv = phi.inverse()
    for k in range(1, K + 1):
        for eps in (1, -1):
            w = semibundle_word(phi, k, eps)
            right = phi_inv
            for m in range(-M_bound, M_bound + 1):
                x = 2 * m + 1
                for n in range(-N_bound, N_bound + 1):
                    if n == 0:
                        continue
                    a1 = IntMat2.diag(x, n)
                    a2 = w @ a1 @ right
                    if a2.b == 0 and a2.c == 0 and a2.a % 2 == 1 and a2.d != 0:
                        report.offer(MapWitness(k, eps, a1, a2))
    return report


def verify_witness(kind: str, phi: IntMat2, l: int, w: MapWitness) -> bool:
    """Re-check a witness by explicit matrix arithmetic, outside the search loops."""
    return w.degree() == l and w.check(kind, phi)


_GENERATORS = (
    IntMat2(1, 1, 0, 1),
    IntMat2(1, -1, 0, 1),
    IntMat2(1, 0, 1, 1),
    IntMat2(1, 0, -1, 1),
    SWAP,
)


def find_conjugator(phi: IntMat2, psi: IntMat2, L: int) -> tuple[IntMat2, int] | None:
    """(P, word length) with P psi P^-1 == phi, by breadth-first word search.

    Words of length <= L in the elementary generators (and their inverses)
    are explored level by level; the lexicographically smallest P of the
    first successful level is returned.
    """
    if not (phi.is_unimodular() and psi.is_unimodular()):
        raise InputError("conjugator search needs unimodular matrices")
    if phi.det() != psi.det() or phi.trace() != psi.trace():
        return None
    seen = {IDENTITY}
    level = [IDENTITY]
    for depth in range(L + 1):
        hits = [P for P in level if P @ psi == phi @ P]
        if hits:
            return min(hits), depth
        if depth == L:
            break
        nxt = []
        for P in level:
            for g in _GENERATORS:
                Q = g @ P
                if Q not in seen:
                    seen.add(Q)
                    nxt.append(Q)
        level = nxt
    return None


def conjugator_search(phi: IntMat2, psi: IntMat2, L: int) -> IntMat2 | None:
    found = find_conjugator(phi, psi, L)
    return None if found is None else found[0]
