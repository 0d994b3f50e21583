import random
from fractions import Fraction
from math import isqrt

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torusdeg.errors import FactorizationLimitError, InputError
from torusdeg.intmat import IntMat2, conjugate
from torusdeg.membership import NoReason, PR
from torusdeg.quadform import (
    check_pr_witness,
    factorize,
    minus_one_obstruction,
    minus_one_trace3_witness,
    norm_form_criterion,
    norm_form_reps,
    represents_norm_form,
    sol_quadratic_membership,
)

from conftest import gl2, random_unimodular

FIB = IntMat2(2, 1, 1, 1)
NO_MINUS_ONE = IntMat2(2, 3, 1, 2)


def test_factorize_examples():
    f = factorize(12)
    assert (f.sign, f.factors) == (1, ((2, 2), (3, 1)))
    f = factorize(-45)
    assert (f.sign, f.factors) == (-1, ((3, 2), (5, 1)))
    assert factorize(21).factors == ((3, 1), (7, 1))
    assert factorize(1).factors == ()
    with pytest.raises(InputError):
        factorize(0)


def test_factorize_large_prime_cofactor():
    big = 1_000_000_007 * 998_244_353
    # both factors exceed the trial-division limit; the product is composite
    with pytest.raises(FactorizationLimitError):
        factorize(big)
    p = 2**61 - 1
    assert factorize(6 * p).factors == ((2, 1), (3, 1), (p, 1))


@given(st.integers(-10**9, 10**9).filter(bool))
def test_factorize_round_trip(n):
    f = factorize(n)
    assert f.value() == n
    assert all(e >= 1 for _, e in f.factors)
    assert [p for p, _ in f.factors] == sorted(p for p, _ in f.factors)


@given(st.integers(1, 5000))
def test_divisors_are_all_divisors(n):
    assert factorize(n).divisors() == [d for d in range(1, n + 1) if n % d == 0]


def test_norm_form_examples():
    m = represents_norm_form(7, 1)
    assert m.is_yes and (m.witness.p, m.witness.q) == (3, 1)
    m = represents_norm_form(2, 1)
    assert m.is_no and m.reason is NoReason.NORM_FORM_CRITERION
    m = represents_norm_form(0, 0)
    assert m.is_yes and (m.witness.p, m.witness.q) == (0, 0)
    m = represents_norm_form(9, 0)
    assert m.is_yes and (m.witness.p, m.witness.q) == (3, 0)


def test_norm_form_rejects_bad_args():
    with pytest.raises(InputError):
        represents_norm_form(5, 2)
    with pytest.raises(InputError):
        represents_norm_form(-5, 0)


@pytest.mark.parametrize("delta", [0, 1])
def test_norm_criterion_matches_exhaustive_search(delta):
    top = 2000
    reachable = set()
    r = isqrt(2 * top) + 1
    for p in range(-r, r + 1):
        for q in range(-r, r + 1):
            v = p * p - delta * p * q + q * q
            if v <= top:
                reachable.add(v)
    for m in range(top + 1):
        assert (norm_form_criterion(m, delta) is None) == (m in reachable), m
        assert represents_norm_form(m, delta).is_yes == (m in reachable)


@pytest.mark.parametrize("delta", [0, 1])
def test_norm_form_reps_complete(delta):
    for m in range(60):
        brute = {
            (p, q) for p in range(-12, 13) for q in range(-12, 13) if p * p - delta * p * q + q * q == m
        }
        got = {(w.p, w.q) for w in norm_form_reps(m, delta)}
        assert got == brute, m


def test_sol_examples():
    m = sol_quadratic_membership(5, FIB, 1)
    assert m.is_yes and (m.witness.p, m.witness.r) == (2, -1)
    m = sol_quadratic_membership(-1, FIB, 1)
    assert m.is_yes and (m.witness.p, m.witness.r) == (0, 1)
    m = sol_quadratic_membership(-1, NO_MINUS_ONE, 1)
    assert m.is_no and m.reason is NoReason.MINUS_ONE_OBSTRUCTION
    assert not sol_quadratic_membership(2, FIB, 4).is_yes


def test_sol_zero_is_member():
    m = sol_quadratic_membership(0, NO_MINUS_ONE)
    assert m.is_yes and (m.witness.p, m.witness.r) == (0, 0)


def test_sol_rejects_non_anosov():
    with pytest.raises(InputError):
        sol_quadratic_membership(1, IntMat2(1, 1, 0, 1))
    with pytest.raises(InputError):
        sol_quadratic_membership(1, FIB, 0)


def test_sol_first_twenty():
    yes = [l for l in range(1, 21) if sol_quadratic_membership(l, FIB).is_yes]
    assert yes == [1, 4, 5, 9, 11, 16, 19, 20]
    for l in range(-20, 21):
        assert not sol_quadratic_membership(l, FIB).is_unknown


def test_sol_scan_cap_gives_unknown():
    m = sol_quadratic_membership(2, FIB, 1, max_scan=0)
    assert m.is_unknown and m.bound is not None


def test_minus_one_obstruction_examples():
    assert minus_one_obstruction(NO_MINUS_ONE)
    assert not minus_one_obstruction(FIB)
    assert not minus_one_obstruction(IntMat2(7, 1, -1, 0))  # trace 7: 9 and 5
    with pytest.raises(InputError):
        minus_one_obstruction(IntMat2(1, 1, 0, 1))


def test_trace3_examples():
    assert minus_one_trace3_witness(FIB) == PR(0, 1)
    assert minus_one_trace3_witness(IntMat2(1, 1, 1, 2)) == PR(-1, 1)
    assert minus_one_trace3_witness(IntMat2(-2, 1, 1, -1)) == PR(0, 1)
    with pytest.raises(InputError):
        minus_one_trace3_witness(IntMat2(-2, 1, -1, -1))  # det 3
    with pytest.raises(InputError):
        minus_one_trace3_witness(NO_MINUS_ONE)


def _brute_sol(phi, l, box):
    """Independent search: clear the denominator c and test the side conditions."""
    a, b, c, d = phi.as_tuple()
    for p in range(-box, box + 1):
        for r in range(-box, box + 1):
            if c * p * p + (d - a) * p * r - b * r * r != c * l:
                continue
            plus = (b * r) % c == 0 and ((d - a) * r) % c == 0
            minus = (p * (d - a) - b * r) % c == 0
            if plus or minus:
                return p, r
    return None


ANOSOV = [FIB, NO_MINUS_ONE, IntMat2(3, 2, 1, 1), IntMat2(0, 1, -1, 3), IntMat2(3, 1, 2, 1), IntMat2(1, 2, 2, 5), IntMat2(-2, 1, 1, -1)]


@pytest.mark.parametrize("phi", ANOSOV, ids=str)
def test_sol_agrees_with_brute_force(phi):
    for l in range(-25, 26):
        m = sol_quadratic_membership(l, phi)
        assert not m.is_unknown
        hit = _brute_sol(phi, l, 40)
        if hit is not None:
            assert m.is_yes, (l, hit)
        if m.is_yes:
            assert check_pr_witness(phi, l, m.witness)


def test_sol_witnesses_substitute():
    rng = random.Random(3)
    for _ in range(40):
        phi = random_unimodular(rng, 9, det=1)
        if abs(phi.trace()) <= 2:
            continue
        for l in range(-12, 13):
            m = sol_quadratic_membership(l, phi)
            if m.is_yes:
                w = m.witness
                a, b, c, d = phi.as_tuple()
                val = w.p * w.p + Fraction(d - a, c) * w.p * w.r - Fraction(b, c) * w.r * w.r
                assert val == l


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(ANOSOV), gl2(bound=2), st.integers(-20, 20))
def test_sol_conjugation_invariant(phi, p, l):
    a = sol_quadratic_membership(l, phi)
    b = sol_quadratic_membership(l, conjugate(p, phi))
    assert not (a.is_yes and b.is_no) and not (a.is_no and b.is_yes)


def test_trace3_rule_on_random_matrices():
    rng = random.Random(17)
    found = 0
    while found < 20:
        t = rng.choice((3, -3))
        a = rng.randint(-50, 50)
        d = t - a
        bc = a * d - 1
        divs = [x for x in range(1, 51) if bc % x == 0] if bc else []
        if not divs:
            continue
        b = rng.choice(divs) * rng.choice((1, -1))
        c = bc // b
        if abs(c) > 50:
            continue
        phi = IntMat2(a, b, c, d)
        w = minus_one_trace3_witness(phi)
        assert check_pr_witness(phi, -1, w)
        found += 1
