import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ifrob.errors import NonExactDivision, ScalarKindMismatch
from ifrob.exactring import (
    GENERIC,
    CycloElem,
    CyclotomicRing,
    LaurentPoly,
    cyclo_poly,
    int_binom,
    qbinom,
    qbinom_reduction_check,
    qbinom_squared,
    qfact,
    qint,
    reduce_mod,
    ring_from_json,
    totient,
)

from oracles import pascal_qbinom, poly_dict, sympy_qbinom

v = LaurentPoly.monomial(1)
vi = LaurentPoly.monomial(-1)


def lp(d):
    return LaurentPoly(d)


laurent = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=5).map(LaurentPoly)
small_l = st.sampled_from([1, 3, 5, 7, 9, 15])


# -- examples -----------------------------------------------------------------

def test_qint_examples():
    assert qint(0, 1).is_zero()
    assert qint(3, 1) == lp({2: 1, 0: 1, -2: 1})
    assert qint(2, 2) == lp({2: 1, -2: 1})
    assert qint(-1, 1) == LaurentPoly.const(-1)


def test_qfact_examples():
    assert qfact(0, 1) == LaurentPoly.const(1)
    assert qfact(2, 1) == v + vi
    assert qfact(3, 1) == (v + vi) * lp({2: 1, 0: 1, -2: 1})


def test_qbinom_examples():
    for n in range(-4, 5):
        assert qbinom(n, 0, 2) == LaurentPoly.const(1)
    assert qbinom(4, 2, 1) == lp({4: 1, 2: 1, 0: 2, -2: 1, -4: 1})
    assert qbinom(-1, 1, 1) == LaurentPoly.const(-1)
    assert qbinom(2, 3, 1).is_zero()


def test_qbinom_squared_examples():
    assert qbinom_squared(1, 1, 1) == LaurentPoly.const(1)
    assert qbinom_squared(2, 1, 1) == lp({2: 1, -2: 1})
    assert qbinom_squared(5, 0, 3) == LaurentPoly.const(1)


def test_cyclo_examples():
    assert cyclo_poly(1) == v - 1
    assert cyclo_poly(3) == lp({2: 1, 1: 1, 0: 1})
    assert cyclo_poly(5) == lp({4: 1, 3: 1, 2: 1, 1: 1, 0: 1})
    assert cyclo_poly(15) == lp({8: 1, 7: -1, 5: 1, 4: -1, 3: 1, 1: -1, 0: 1})
    with pytest.raises(ValueError):
        cyclo_poly(4)


def test_reduce_examples():
    assert reduce_mod(3, LaurentPoly.monomial(3)) == 1
    assert reduce_mod(3, qint(3, 1)).is_zero()
    assert reduce_mod(3, qint(4, 1)) == reduce_mod(3, qint(1, 1)) == 1


def test_reduction_check_examples():
    assert qbinom_reduction_check(3, 1, 1, 2, 0)
    assert reduce_mod(3, qbinom(5, 3)) == 1
    assert qbinom_reduction_check(3, 1, 0, 0, 1)
    assert reduce_mod(3, qbinom(3, 1)).is_zero()
    assert qbinom_reduction_check(3, 2, 1, 0, 0)
    assert reduce_mod(3, qbinom(6, 3)) == 2


def test_int_binom():
    assert int_binom(5, 2) == 10
    assert int_binom(-1, 3) == -1
    assert int_binom(2, 5) == 0


# -- oracles ---------------------------------------------------------------------

@pytest.mark.parametrize("d", [1, 2, 3])
def test_qbinom_matches_pascal_oracle(d):
    for t in range(-12, 13):
        for c in range(9):
            assert poly_dict(qbinom(t, c, d)) == pascal_qbinom(t, c, d), (t, c, d)


@pytest.mark.parametrize("t,c,d", [(7, 3, 1), (-5, 4, 2), (12, 8, 3), (-12, 2, 1), (3, 5, 2)])
def test_qbinom_sympy_spot_checks(t, c, d):
    assert poly_dict(qbinom(t, c, d)) == sympy_qbinom(t, c, d)


# -- properties -----------------------------------------------------------------

@given(laurent, laurent, laurent)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a - a == LaurentPoly()


@given(st.integers(-12, 12), st.integers(0, 8), st.integers(1, 3))
def test_qbinom_bar_invariant(t, c, d):
    p = qbinom(t, c, d)
    assert p.bar() == p


@given(st.integers(1, 12), st.integers(1, 8), st.integers(1, 3))
def test_pascal_identity(t, c, d):
    lhs = qbinom(t, c, d)
    rhs = qbinom(t - 1, c, d).shift(d * c) + qbinom(t - 1, c - 1, d).shift(-d * (t - c))
    assert lhs == rhs


@given(st.integers(0, 10), st.integers(0, 10), st.integers(1, 3))
def test_negative_top(t, c, d):
    sign = -1 if c % 2 else 1
    assert qbinom(-t, c, d) == qbinom(t + c - 1, c, d) * LaurentPoly.const(sign)


@given(st.integers(-12, 12), st.integers(0, 6), st.integers(1, 3))
def test_qbinom_squared_is_v2_binomial(t, c, d):
    assert qbinom_squared(t, c, d) == qbinom(t, c, 2 * d)


@given(st.integers(0, 9), st.integers(1, 3))
def test_qfact_is_product(n, d):
    p = LaurentPoly.const(1)
    for k in range(1, n + 1):
        p = p * qint(k, d)
    assert qfact(n, d) == p


@given(laurent, laurent)
def test_divexact_roundtrip(a, b):
    if b.is_zero():
        return
    assert (a * b).divexact(b) == a


def test_divexact_rejects_remainder():
    with pytest.raises(NonExactDivision):
        (v + 1).divexact(v * v + 1)


@given(small_l, laurent, laurent)
def test_reduce_is_homomorphism(l, a, b):
    assert reduce_mod(l, a * b) == reduce_mod(l, a) * reduce_mod(l, b)
    assert reduce_mod(l, a + b) == reduce_mod(l, a) + reduce_mod(l, b)


@given(small_l, st.integers(-50, 50))
def test_cyclo_vanishes_and_v_has_order_l(l, k):
    assert reduce_mod(l, cyclo_poly(l)).is_zero()
    assert reduce_mod(l, LaurentPoly.monomial(k * l)) == 1


@given(st.sampled_from([3, 5, 7]), st.integers(0, 4), st.integers(1, 6), st.integers(1, 3))
def test_quantum_integers_at_root(l, k, b, d):
    if math.gcd(l, d) != 1:
        return
    assert reduce_mod(l, qint(k * l, d)).is_zero()
    if b < l:
        assert reduce_mod(l, qint(k * l + b, d)) == reduce_mod(l, qint(b, d))


@pytest.mark.parametrize("l", [3, 5, 7])
def test_reduction_check_grid(l):
    for m in range(4):
        for n in range(4):
            for b in range(l):
                for dd in range(l):
                    assert qbinom_reduction_check(l, m, n, b, dd)


@given(small_l, st.integers(1, 30), st.lists(st.integers(-9, 9), min_size=1, max_size=8))
def test_torsion_free(l, k, coords):
    phi = totient(l)
    coords = (coords + [0] * phi)[:phi]
    x = CycloElem(l, coords)
    assert (x * k).is_zero() == x.is_zero()


def test_level_one_is_integers():
    assert reduce_mod(1, qfact(4)) == 24
    assert reduce_mod(1, qbinom(6, 3)) == 20


def test_scalar_kinds_do_not_mix():
    with pytest.raises(ScalarKindMismatch):
        CycloElem.from_int(3, 1) + CycloElem.from_int(5, 1)
    with pytest.raises(ScalarKindMismatch):
        CycloElem.from_int(3, 1) + v


@given(laurent)
def test_json_roundtrip(p):
    assert LaurentPoly.from_json(p.to_json()) == p
    c = reduce_mod(5, p)
    assert CycloElem.from_json(c.to_json()) == c
    for key in p.to_json():
        assert isinstance(key[1], str)


def test_rings_from_json():
    assert ring_from_json(GENERIC.to_json()) == GENERIC
    r = CyclotomicRing(7)
    assert ring_from_json(r.to_json()) == r
    assert r.vpow(7) == r.one
