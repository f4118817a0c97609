import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hlcluster.ymon import (
    EQUAL,
    GREATER,
    INCOMPARABLE,
    LESS,
    ONE,
    CartanData,
    YMonomial,
    a_inverse,
    a_var,
    compare_dominance,
    kr_monomial,
    lift_r,
    shift_equivalent,
    shifted_kr,
    yvar,
)

A1 = CartanData(1)
A2 = CartanData(2)
A3 = CartanData(3)


def mono(*factors):
    out = ONE
    for i, s in factors:
        out = out * yvar(i, s)
    return out


# -- constructors ---------------------------------------------------------


def test_a_inverse_a3():
    m = a_inverse(2, 0, A3)
    assert m == YMonomial({(2, -1): -1, (2, 1): -1, (1, 0): 1, (3, 0): 1})


def test_a_inverse_a1_no_neighbors():
    assert a_inverse(1, 0, A1) == YMonomial({(1, -1): -1, (1, 1): -1})


def test_a_inverse_a2():
    m = a_inverse(1, -2, A2)
    assert m == YMonomial({(1, -3): -1, (1, -1): -1, (2, -2): 1})


def test_a_inverse_out_of_range():
    with pytest.raises(ValueError):
        a_inverse(4, 0, A3)


def test_a_inverse_neighbor_identity():
    # A^-1[i,s] * Y[i,s-1] Y[i,s+1] = prod of neighbor Y[j,s]
    for i in (1, 2, 3):
        lhs = a_inverse(i, 5, A3) * yvar(i, 4) * yvar(i, 6)
        rhs = ONE
        for j in A3.neighbors(i):
            rhs = rhs * yvar(j, 5)
        assert lhs == rhs


def test_kr_monomial():
    assert kr_monomial(1, -3, 2) == mono((1, -3), (1, -1))
    assert kr_monomial(4, 7, 1) == yvar(4, 7)
    assert kr_monomial(2, -8, 5) == mono((2, -8), (2, -6), (2, -4), (2, -2), (2, 0))
    assert kr_monomial(1, 0, 0) == ONE
    with pytest.raises(ValueError):
        kr_monomial(1, 0, -1)


def test_lift_r():
    assert lift_r(yvar(1, -3), 2) == mono((1, -3), (1, -1))
    m = mono((2, -6), (4, -2), (6, -6))
    assert lift_r(m, 1) == m
    assert lift_r(m, 2) == mono((2, -6), (2, -4), (4, -2), (4, 0), (6, -6), (6, -4))
    with pytest.raises(ValueError):
        lift_r(yvar(1, 0).inverse(), 2)


def test_lift_r_multiplicative():
    rng = random.Random(0)
    for _ in range(50):
        m1 = mono(*[(rng.randint(1, 4), rng.randint(-5, 5)) for _ in range(3)])
        m2 = mono(*[(rng.randint(1, 4), rng.randint(-5, 5)) for _ in range(2)])
        r = rng.randint(1, 4)
        assert lift_r(m1 * m2, r) == lift_r(m1, r) * lift_r(m2, r)


def test_shifted_kr():
    assert shifted_kr(1, -7, 3, 2) == mono((1, -11), (1, -9), (1, -7), (1, -5), (1, -3))
    assert shifted_kr(2, -6, 2, -1) == yvar(2, -6)
    for i, a, r in [(1, -3, 2), (3, 4, 1), (2, 0, 3)]:
        assert shifted_kr(i, a, r, 0) == lift_r(yvar(i, a), r)
    assert shifted_kr(1, 0, 2, -2) == ONE
    with pytest.raises(ValueError):
        shifted_kr(1, 0, 2, -3)


# -- dominance order --------------------------------------------------------


def test_compare_examples():
    m1 = mono((2, 0), (1, -3), (1, -1))
    m2 = mono((2, -2), (2, 0))
    got = compare_dominance(m1, m2, A3)
    assert got.relation == GREATER
    assert got.certificate == {(1, -2): 1}
    # certificate reproduces the quotient
    assert m2 * a_var(1, -2, A3) == m1

    assert compare_dominance(m1, m1, A3).relation == EQUAL

    m = yvar(1, -1)
    assert compare_dominance(m * a_inverse(1, 0, A2), m, A2).relation == LESS


def test_compare_incomparable():
    assert compare_dominance(yvar(1, 0), yvar(2, 0), A2).relation == INCOMPARABLE
    # mixed-sign A-exponents are incomparable
    q = a_var(1, 0, A2) * a_inverse(2, 3, A2)
    assert compare_dominance(q, ONE, A2).relation == INCOMPARABLE


def brute_force_relation(m1, m2, cartan, bound=4):
    """Meet-in-the-middle enumeration of A-exponent vectors in [0,bound]."""
    if m1 == m2:
        return EQUAL

    def search(q):
        sup = q.support()
        lo = min(s for _, s in sup)
        hi = max(s for _, s in sup)
        avars = [
            (i, s) for s in range(lo + 1, hi) for i in range(1, cartan.n + 1)
        ]
        half = len(avars) // 2
        first, second = avars[:half], avars[half:]
        table = {}
        for combo in itertools.product(range(bound + 1), repeat=len(first)):
            p = ONE
            for (i, s), c in zip(first, combo):
                p = p * a_var(i, s, cartan) ** c
            table[p] = combo
        for combo in itertools.product(range(bound + 1), repeat=len(second)):
            p = ONE
            for (i, s), c in zip(second, combo):
                p = p * a_var(i, s, cartan) ** c
            if q / p in table:
                return True
        return False

    if search(m1 / m2):
        return GREATER
    if search(m2 / m1):
        return LESS
    return INCOMPARABLE


def random_instance(rng, comparable):
    n = rng.randint(1, 3)
    cartan = CartanData(n)
    base = mono(*[(rng.randint(1, n), rng.randint(-2, 2)) for _ in range(rng.randint(1, 3))])
    if comparable:
        cert = {}
        for _ in range(rng.randint(1, 2)):
            cert[(rng.randint(1, n), rng.randint(-1, 1))] = rng.randint(0, 4)
        prod = ONE
        for (i, s), c in cert.items():
            prod = prod * a_var(i, s, cartan) ** c
        m1 = base * prod
        return m1, base, cartan
    other = mono(*[(rng.randint(1, n), rng.randint(-2, 2)) for _ in range(rng.randint(1, 3))])
    return base, other, cartan


@pytest.mark.parametrize("comparable", [True, False])
def test_compare_against_brute_force(comparable):
    rng = random.Random(7 if comparable else 8)
    for _ in range(150):
        m1, m2, cartan = random_instance(rng, comparable)
        got = compare_dominance(m1, m2, cartan).relation
        want = brute_force_relation(m1, m2, cartan)
        assert got == want, (m1.text(), m2.text(), got, want)


@given(st.integers(1, 3), st.data())
@settings(max_examples=60, deadline=None)
def test_compare_order_axioms(n, data):
    cartan = CartanData(n)
    vars_st = st.tuples(st.integers(1, n), st.integers(-3, 3))
    monos = st.lists(vars_st, min_size=1, max_size=4).map(lambda fs: mono(*fs))
    m1, m2 = data.draw(monos), data.draw(monos)
    c12 = compare_dominance(m1, m2, cartan)
    c21 = compare_dominance(m2, m1, cartan)
    flip = {GREATER: LESS, LESS: GREATER, EQUAL: EQUAL, INCOMPARABLE: INCOMPARABLE}
    assert c21.relation == flip[c12.relation]
    assert compare_dominance(m1, m1, cartan).relation == EQUAL


@given(st.integers(1, 3), st.data())
@settings(max_examples=40, deadline=None)
def test_compare_transitive_certificates_add(n, data):
    cartan = CartanData(n)
    vars_st = st.tuples(st.integers(1, n), st.integers(-2, 2))
    base = mono(*data.draw(st.lists(vars_st, min_size=1, max_size=3)))
    avars = st.tuples(st.integers(1, n), st.integers(-2, 2))
    cert1 = data.draw(st.dictionaries(avars, st.integers(1, 3), max_size=2))
    cert2 = data.draw(st.dictionaries(avars, st.integers(1, 3), max_size=2))
    m_mid = base
    for (i, s), c in cert1.items():
        m_mid = m_mid * a_var(i, s, cartan) ** c
    m_top = m_mid
    for (i, s), c in cert2.items():
        m_top = m_top * a_var(i, s, cartan) ** c
    rel = compare_dominance(m_top, base, cartan)
    if cert1 or cert2:
        assert rel.relation == GREATER
        total = dict(cert1)
        for k, c in cert2.items():
            total[k] = total.get(k, 0) + c
        assert rel.certificate == {k: c for k, c in total.items() if c}
    else:
        assert rel.relation == EQUAL


# -- shift equivalence -------------------------------------------------------


def test_shift_equivalent():
    assert shift_equivalent(yvar(1, -1), yvar(1, -3)) == -2
    assert shift_equivalent(yvar(1, -1) * yvar(2, 0), yvar(1, -1) * yvar(2, 2)) is None
    assert shift_equivalent(kr_monomial(1, -3, 2), kr_monomial(1, -7, 2)) == -4
    assert shift_equivalent(yvar(1, 0), yvar(1, 1)) is None
    assert shift_equivalent(yvar(1, 0), yvar(1, 1), even_only=False) == 1
    assert shift_equivalent(ONE, ONE) == 0
    assert shift_equivalent(ONE, yvar(1, 0)) is None


def test_shift_equivalent_exhaustive_small_scan():
    # cross-check against a direct scan over candidate shifts
    rng = random.Random(3)
    for _ in range(100):
        m1 = mono(*[(rng.randint(1, 3), rng.randint(-4, 4)) for _ in range(rng.randint(1, 3))])
        c = rng.choice([-4, -2, 0, 2, 4])
        m2 = m1.shifted(c) if rng.random() < 0.7 else mono((1, rng.randint(-4, 4)))
        got = shift_equivalent(m1, m2)
        want = next((cc for cc in range(-12, 13, 2) if m1.shifted(cc) == m2), None)
        assert got == want


# -- serialization ------------------------------------------------------------


def test_text_and_json_round_trip():
    m = mono((2, -1), (1, -4)) * yvar(3, -4) ** 2
    assert m.text() == "Y[1,-4] * Y[2,-1] * Y[3,-4]^2"
    assert YMonomial.from_json(m.to_json()) == m
    assert YMonomial.loads(m.dumps()) == m
    assert ONE.text() == "1"
    assert ONE.to_json() == []
