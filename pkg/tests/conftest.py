import random

from hypothesis import strategies as st

from torusdeg.intmat import IntMat2

S = IntMat2(0, -1, 1, 0)
T = IntMat2(1, 1, 0, 1)
GENS = [S, T, T.inverse(), IntMat2(1, 0, 1, 1), IntMat2(1, 0, -1, 1)]


def small_ints(bound):
    return st.integers(min_value=-bound, max_value=bound)


@st.composite
def sl2(draw, max_len=8, bound=None):
    m = IntMat2(1, 0, 0, 1)
    for g in draw(st.lists(st.sampled_from(GENS), max_size=max_len)):
        m = m @ g
    if draw(st.booleans()):
        m = -m
    if bound is not None:
        from hypothesis import assume

        assume(max(map(abs, m.as_tuple())) <= bound)
    return m


@st.composite
def gl2(draw, max_len=8, bound=None):
    m = draw(sl2(max_len, bound))
    if draw(st.booleans()):
        m = m @ IntMat2(1, 0, 0, -1)
    return m


def random_unimodular(rng: random.Random, bound: int, det=None) -> IntMat2:
    """Rejection sample an integer matrix with |det| = 1 and entries <= bound."""
    while True:
        a, b, c = (rng.randint(-bound, bound) for _ in range(3))
        # solve a*d - b*c = s for d
        s = det if det is not None else rng.choice((1, -1))
        if a == 0:
            if b * c == -s:
                return IntMat2(a, b, c, rng.randint(-bound, bound))
            continue
        if (s + b * c) % a == 0:
            d = (s + b * c) // a
            if abs(d) <= bound:
                return IntMat2(a, b, c, d)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
