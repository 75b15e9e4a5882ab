import pytest

from ifrob.exactring import CycloElem, CyclotomicRing, LaurentPoly
from ifrob.qengine import AlgElem, sl2_model
from ifrob.smallq import (
    KSpan,
    ai1_expansions,
    closure_check,
    dim_formula,
    generators,
    projection_rank,
    small_span_rank,
)


def test_dim_examples():
    ai1 = dim_formula("AI1", None, 3)
    assert (ai1.n_pos_black, ai1.n_pos, ai1.predicted) == (0, 1, 3)
    aiii = dim_formula("AIII11", None, 3)
    assert (aiii.n_pos_black, aiii.n_pos, aiii.predicted) == (0, 2, 9)
    bii = dim_formula("BII", 2, 5)
    assert (bii.n_pos_black, bii.n_pos, bii.predicted) == (1, 4, 3125)
    assert bii.to_json()["predicted"] == "3125"
    with pytest.raises(ValueError):
        dim_formula("AI1", None, 4)


@pytest.mark.parametrize("name,n,black,pos", [
    ("AII3", None, 2, 6), ("AIV", 3, 1, 6), ("CII", 3, 2, 9), ("DII", 4, 6, 12), ("FII", None, 9, 24),
])
def test_dim_root_counts(name, n, black, pos):
    p = dim_formula(name, n, 3)
    assert (p.n_pos_black, p.n_pos) == (black, pos)
    assert p.predicted == 3 ** (black + pos)


def test_kspan_rank_over_field():
    m = sl2_model()
    ring = CyclotomicRing(3)
    span = KSpan(3)
    x = AlgElem.basis(m, m.key((0,), (1,), (0,)), ring)
    assert span.add(x)
    # v x is K-dependent on x
    assert not span.add(x.scale(CycloElem.vpow(3, 1)))
    assert span.add(x + AlgElem.idempotent(m, (0,), ring))
    assert span.rank == 2


def test_generators_order():
    assert generators("AI1", 3) == [(0, 1), (0, 2)]
    assert generators("AIII11", 3) == [(0, 1), (0, 2), (1, 1), (1, 2)]


@pytest.mark.parametrize("case,l,lam,want", [
    ("AI1", 3, (0,), 3), ("AI1", 3, (1,), 3), ("AI1", 5, (0,), 5), ("AI1", 5, (3,), 5),
])
def test_ai1_rank(case, l, lam, want):
    rep = small_span_rank(case, l, lam, 4)
    assert rep.rank == want == rep.predicted
    assert rep.stabilized and not rep.budget_too_small


def test_aiii11_rank_and_representatives():
    a = small_span_rank("AIII11", 3, (0, 0), 4)
    b = small_span_rank("AIII11", 3, (2, 1), 4)
    assert a.rank == b.rank == 9 and a.stabilized and b.stabilized


def test_budget_too_small_is_flagged():
    rep = small_span_rank("AIII11", 3, (0, 0), 1)
    assert rep.budget_too_small and rep.rank < 9


@pytest.mark.parametrize("case,l,lam", [("AI1", 3, (0,)), ("AI1", 3, (1,)), ("AI1", 5, (2,)),
                                         ("AIII11", 3, (0, 0))])
def test_closure(case, l, lam):
    rep = closure_check(case, l, lam, 4)
    assert rep["ok"], rep["failures"]


def test_ai1_expansions_at_root_of_unity():
    exp = ai1_expansions(3, (0,))
    by_m = {e["m"]: e["coefficients"] for e in exp}
    assert all(e["residual_zero"] for e in exp)
    # B B^(2) = [3] B^(3) + [2] B^(1) and [3] = 0
    assert set(by_m[2]) == {"1"}
    assert by_m[2]["1"] == str(CyclotomicRing(3).lift(LaurentPoly({1: 1, -1: 1})))
    assert by_m[0] == {"1": "1"}
    assert by_m[1] == {"2": str(CyclotomicRing(3).lift(LaurentPoly({1: 1, -1: 1})))}


def test_ai1_expansions_odd_weight():
    exp = ai1_expansions(3, (1,))
    by_m = {e["m"]: e["coefficients"] for e in exp}
    assert by_m[1] == {"0": "1", "2": str(CyclotomicRing(3).lift(LaurentPoly({1: 1, -1: 1})))}


def test_projection_rank():
    assert projection_rank("AI1", 3, (0,)) == 3
    assert projection_rank("AI1", 5, (0,)) == 5
