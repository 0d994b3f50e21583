import itertools
import random

import pytest
from hypothesis import assume, given, settings

from torusdeg.bundle import (
    CANONICAL_PERIODIC,
    Geometry,
    bundles_equivalent,
    classify_monodromy,
    geometry,
)
from torusdeg.errors import InputError
from torusdeg.intmat import IDENTITY, IntMat2, conjugate
from torusdeg.membership import NoReason
from torusdeg.oracle import find_conjugator

from conftest import gl2, random_unimodular, sl2


def test_classify_examples():
    c = classify_monodromy(IntMat2(0, -1, 1, 1))
    assert (c.kind, c.order) == ("periodic", 6)
    assert classify_monodromy(IDENTITY).order == 1
    c = classify_monodromy(IntMat2(1, 5, 0, 1))
    assert (c.kind, c.sign, c.n) == ("parabolic", 1, 5)
    assert classify_monodromy(IntMat2(2, 1, 1, 1)).kind == "anosov"


@pytest.mark.parametrize(
    "phi, order",
    [((1, 0, 0, 1), 1), ((-1, 0, 0, -1), 2), ((-1, -1, 1, 0), 3), ((0, -1, 1, 0), 4), ((0, -1, 1, 1), 6)],
)
def test_canonical_forms_have_stated_order(phi, order):
    m = IntMat2(*phi)
    assert CANONICAL_PERIODIC[order] == m
    assert classify_monodromy(m).order == order
    assert m**order == IDENTITY
    assert all(m**j != IDENTITY for j in range(1, order))


def test_parabolic_negative_sign_and_n_positive():
    c = classify_monodromy(IntMat2(-1, -3, 0, -1))
    assert (c.sign, c.n) == (-1, 3)
    c = classify_monodromy(IntMat2(1, 0, -4, 1))
    assert (c.sign, c.n) == (1, 4)


def test_geometry_examples():
    assert geometry(IntMat2(0, -1, 1, 0)) is Geometry.E3
    assert geometry(IntMat2(-1, -3, 0, -1)) is Geometry.NIL
    assert geometry(IntMat2(2, 3, 1, 2)) is Geometry.SOL


def test_classify_rejects_bad_det():
    with pytest.raises(InputError):
        classify_monodromy(IntMat2(0, 1, 1, 0))
    with pytest.raises(InputError):
        classify_monodromy(IntMat2(2, 0, 0, 1))


def test_equivalence_examples():
    phi = IntMat2(2, 1, 1, 1)
    m = bundles_equivalent(phi, phi)
    assert m.is_yes and m.witness.P == IDENTITY and m.witness.exponent == 1

    m = bundles_equivalent(IntMat2(1, 3, 0, 1), IntMat2(1, -3, 0, 1))
    assert m.is_yes
    w = m.witness
    assert w.P @ (IntMat2(1, -3, 0, 1) ** w.exponent) == IntMat2(1, 3, 0, 1) @ w.P

    m = bundles_equivalent(IntMat2(1, 2, 0, 1), IntMat2(1, 3, 0, 1))
    assert m.is_no and m.reason is NoReason.INVARIANT


def test_equivalence_different_traces_is_no():
    assert bundles_equivalent(IntMat2(2, 1, 1, 1), IntMat2(2, 3, 1, 2)).is_no


def test_equivalence_content_invariant():
    # same trace 6, forms of content 1 and 2
    a = IntMat2(5, 4, 1, 1)
    b = IntMat2(3, 4, 2, 3)
    assert a.trace() == b.trace() == 6
    assert bundles_equivalent(a, b).is_no


def test_matching_invariants_never_give_no():
    # trace 6, both content 1, not conjugate via short words
    a = IntMat2(5, 4, 1, 1)
    b = IntMat2(5, 1, 4, 1)
    m = bundles_equivalent(a, b, search_len=1)
    assert not m.is_no


@settings(max_examples=150)
@given(sl2(), gl2(bound=3))
def test_classification_conjugation_invariant(phi, p):
    assert classify_monodromy(conjugate(p, phi)) == classify_monodromy(phi)


@settings(max_examples=150)
@given(sl2(), gl2(max_len=6))
def test_parabolic_gcd_invariant(phi, p):
    assume(abs(phi.trace()) == 2)
    s = phi.trace() // 2
    lhs = (phi - IDENTITY.scale(s)).gcd_entries()
    rhs = (conjugate(p, phi) - IDENTITY.scale(s)).gcd_entries()
    assert lhs == rhs


def _sl2_box(bound, trace):
    for a, b, c in itertools.product(range(-bound, bound + 1), repeat=3):
        d = trace - a
        if abs(d) <= bound and a * d - b * c == 1:
            yield IntMat2(a, b, c, d)


@pytest.mark.parametrize("t, order", [(-1, 3), (0, 4), (1, 6)])
def test_periodic_conjugate_to_canonical_form(t, order):
    for phi in _sl2_box(10, t):
        found = find_conjugator(phi, CANONICAL_PERIODIC[order], 8)
        assert found is not None, phi
        P, _ = found
        assert P.is_unimodular() and P @ CANONICAL_PERIODIC[order] == phi @ P


def test_parabolic_gcd_rule_matches_conjugator_search():
    # every parabolic matrix in a box is conjugate to +-(1 n; 0 1) with n from the gcd rule
    for t in (2, -2):
        for phi in _sl2_box(6, t):
            cls = classify_monodromy(phi)
            if cls.kind != "parabolic":
                continue
            s, n = cls.sign, cls.n
            targets = [IntMat2(s, s * n, 0, s), IntMat2(s, -s * n, 0, s)]
            assert any(find_conjugator(phi, tg, 8) for tg in targets), phi


def test_conjugator_witnesses_verify():
    rng = random.Random(7)
    for _ in range(30):
        phi = random_unimodular(rng, 6, det=1)
        p = random_unimodular(rng, 2)
        psi = conjugate(p, phi)
        m = bundles_equivalent(phi, psi)
        assert not m.is_no
        if m.is_yes:
            w = m.witness
            assert w.P @ (psi**w.exponent) == phi @ w.P


def test_monodromy_class_json():
    assert classify_monodromy(IntMat2(2, 1, 1, 1)).to_json() == {"class": "Anosov", "geometry": "Sol"}
    assert classify_monodromy(IntMat2(1, 5, 0, 1)).to_json() == {
        "class": "Parabolic",
        "geometry": "Nil",
        "sign": 1,
        "n": 5,
    }
