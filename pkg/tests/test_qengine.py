import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ifrob.errors import ModelMismatch, ScalarKindMismatch, WrongModel
from ifrob.exactring import GENERIC, LaurentPoly, qfact, qint
from ifrob.iotagroup import make_case
from ifrob.qengine import (
    AlgElem,
    act_on_simple_module,
    act_product,
    divided_power_of_generator,
    qplane_multiply,
    sl2_model,
    sl2_pair_model,
)

from randelem import random_chain, random_pair

A1 = sl2_model()
A1A1 = sl2_pair_model()
A1_D2 = sl2_model(2)
QP = make_case("QPlane").model
QP0 = make_case("QPlane", weighted=False).model


def E(n, lam, model=A1, block=0):
    return divided_power_of_generator(model, block, "E", n, lam)


def F(n, lam, model=A1, block=0):
    return divided_power_of_generator(model, block, "F", n, lam)


def qp(a, b, lam=None, model=QP0, coeff=None):
    return AlgElem.basis(model, model.key(a, b, lam), GENERIC, coeff)


# -- examples -------------------------------------------------------------------

def test_multiply_examples():
    lam = (3,)
    # E 1_{lam - i'} * F 1_lam is already normal ordered
    assert E(1, (1,)) * F(1, lam) == AlgElem.basis(A1, A1.key((1,), (1,), lam))
    assert E(1, (2,)) * E(1, (0,)) == E(2, (0,)).scale(qint(2))
    fff = F(1, (-4,)) * F(1, (-2,)) * F(1, (0,))
    assert fff == F(3, (0,)).scale(qfact(3))
    assert divided_power_of_generator(A1, 0, "E", 0, (5,)) == AlgElem.idempotent(A1, (5,))


def test_fe_commutator():
    # F E 1_lam = E F 1_lam - [<i,lam>] 1_lam
    for h in range(-4, 5):
        fe = F(1, (h + 2,)) * E(1, (h,))
        ef = AlgElem.basis(A1, A1.key((1,), (1,), (h,)))
        assert fe == ef - AlgElem.idempotent(A1, (h,)).scale(qint(h))


def test_mismatched_weights_multiply_to_zero():
    assert (E(1, (0,)) * F(1, (0,))).is_zero()


def test_qplane_examples():
    assert qplane_multiply(qp(0, 1), qp(1, 0)) == qp(1, 1, coeff=LaurentPoly.monomial(-2))
    assert qp(1, 0) * qp(1, 0) == qp(2, 0, coeff=qint(2))
    assert qp(0, 2) * qp(3, 0) == qp(3, 2, coeff=LaurentPoly.monomial(-12))


def test_module_examples():
    ef = AlgElem.basis(A1, A1.key((1,), (1,), (1,)))
    mat = act_on_simple_module(ef, 1)
    assert mat == {((0,), (0,)): LaurentPoly.const(1)}
    assert act_on_simple_module(E(2, (-1,)), 1) == {}
    proj = act_on_simple_module(AlgElem.idempotent(A1, (2,)), 4)
    assert proj == {((1,), (1,)): LaurentPoly.const(1)}


def test_errors():
    with pytest.raises(WrongModel):
        act_on_simple_module(qp(1, 0), 3)
    with pytest.raises(WrongModel):
        qplane_multiply(E(1, (0,)), E(1, (0,)))
    with pytest.raises(ModelMismatch):
        E(1, (0,)) + E(1, (0, 0), A1A1)
    with pytest.raises(ScalarKindMismatch):
        E(1, (0,)) + E(1, (0,)).reduce(3)


# -- oracle and properties ------------------------------------------------------

def _levels(rng, model):
    return tuple(rng.randint(8, 12) for _ in model.blocks)


@pytest.mark.parametrize("model", [A1, A1A1, A1_D2], ids=["A1", "A1xA1", "A1_d2"])
def test_module_oracle_random(model):
    rng = random.Random(hash(model.name) % 1000 + model.blocks[0].d)
    for _ in range(60):
        levels = _levels(rng, model)
        x, y = random_pair(rng, model, max_deg=4, weight_box=5)
        assert act_on_simple_module(x * y, levels) == act_product([x, y], levels)


@pytest.mark.parametrize("model", [A1, A1A1, QP, QP0], ids=["A1", "A1xA1", "QPlane", "QPlane0"])
def test_associativity(model):
    rng = random.Random(7)
    for _ in range(40):
        x, y, z = random_chain(rng, model, [2, 3, 2], weight_box=3)
        assert (x * y) * z == x * (y * z)


@given(st.integers(0, 6), st.integers(0, 6), st.integers(-8, 8), st.integers(1, 3))
def test_weight_bookkeeping(a, b, h, d):
    model = sl2_model(d)
    x = E(a, (h - 2 * b,), model) * F(b, (h,), model)
    for key in x.terms:
        e, f, lam = key
        assert model.left_weight(key) == (lam[0] + 2 * e[0] - 2 * f[0],)
        assert model.left_weight(key) == (h - 2 * b + 2 * a,)


@pytest.mark.parametrize("n", range(11))
def test_qplane_binomial_theorem(n):
    b = qp(1, 0) + qp(0, 1)
    power = AlgElem.idempotent(QP0)
    for _ in range(n):
        power = b * power
    want = AlgElem.zero(QP0)
    for a in range(n + 1):
        want = want + qp(a, n - a, coeff=LaurentPoly.monomial(-a * (n - a)))
    assert power.exact_div(qfact(n)) == want


@pytest.mark.parametrize("model", [A1, A1A1, QP], ids=["A1", "A1xA1", "QPlane"])
@pytest.mark.parametrize("l", [3, 5])
def test_reduce_commutes_with_multiply(model, l):
    rng = random.Random(l)
    for _ in range(30):
        x, y = random_pair(rng, model, max_deg=5)
        assert (x * y).reduce(l) == x.reduce(l) * y.reduce(l)


def test_divided_powers_of_generators():
    for n in range(1, 7):
        for h in (-3, 0, 4):
            pe = AlgElem.idempotent(A1, (h,))
            pf = AlgElem.idempotent(A1, (h,))
            for k in range(n):
                pe = E(1, (h + 2 * k,)) * pe
                pf = F(1, (h - 2 * k,)) * pf
            assert pe == E(n, (h,)).scale(qfact(n))
            assert pf == F(n, (h,)).scale(qfact(n))


def test_json_is_deterministic():
    x = E(2, (1,)) * F(3, (1,)) + F(1, (1,)).scale(LaurentPoly.monomial(-3))
    y = F(1, (1,)).scale(LaurentPoly.monomial(-3)) + E(2, (1,)) * F(3, (1,))
    assert x.to_json() == y.to_json()
