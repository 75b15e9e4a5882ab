"""Small quantum symmetric pairs: predicted ranks and spanning-set ranks at l-th roots of unity."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from ifrob.exactring import CycloElem, totient
from ifrob.intlinalg import SparseEchelon
from ifrob.iotagroup import idiv, make_case
from ifrob.qengine import AlgElem
from ifrob.rootdata import satake


@dataclass(frozen=True)
class DimPrediction:
    name: str
    rank_param: int | None
    l: int
    n_pos: int
    n_pos_black: int

    @property
    def predicted(self) -> int:
        return self.l ** (self.n_pos_black + self.n_pos)

    def to_json(self) -> dict:
        return {"type": self.name, "n": self.rank_param, "l": self.l,
                "positive_roots": self.n_pos, "positive_black_roots": self.n_pos_black,
                "predicted": str(self.predicted)}


def dim_formula(name: str, n: int | None, l: int) -> DimPrediction:
    """``l^(|Phi+_black| + |Phi+|)`` with both counts enumerated from the root system."""
    if l < 1 or l % 2 == 0:
        raise ValueError("l must be odd")
    pair = satake(name, n)
    n_pos = len(pair.datum.positive_roots())
    n_black = len(pair.datum.positive_roots(pair.black)) if pair.black else 0
    return DimPrediction(pair.name, n, l, n_pos, n_black)


# ---------------------------------------------------------------------------
# span computations over K = Q[v]/(f_l)
# ---------------------------------------------------------------------------

class KSpan:
    """Incremental K-span of A'-vectors, via Q-rank of their ``v^j`` multiples."""

    def __init__(self, l: int):
        self.l = l
        self.phi = totient(l)
        self.index: dict = {}
        self.echelon = SparseEchelon()
        self.basis: list[AlgElem] = []

    def _flatten(self, x: AlgElem) -> dict[int, int]:
        out = {}
        for key, c in x.terms.items():
            col = self.index.setdefault(key, len(self.index))
            for j, a in enumerate(c.coords):
                if a:
                    out[col * self.phi + j] = a
        return out

    def contains(self, x: AlgElem) -> bool:
        return not self.echelon.reduce(self._flatten(x))

    def add(self, x: AlgElem) -> bool:
        if x.is_zero() or self.contains(x):
            return False
        for j in range(self.phi):
            self.echelon.add(self._flatten(x.scale(CycloElem.vpow(self.l, j))))
        self.basis.append(x)
        return True

    @property
    def rank(self) -> int:
        q_rank = self.echelon.rank
        if q_rank % self.phi:
            raise ArithmeticError("Q-rank is not a multiple of [K:Q]")
        return q_rank // self.phi


def _nodes(case: str):
    if case == "AI1":
        return (0,)
    if case == "AIII11":
        return (0, 1)
    raise ValueError(f"small spans are implemented for AI1 and AIII11, not {case!r}")


@lru_cache(maxsize=None)
def _generator_at(case: str, node: int, n: int, mu: tuple, l: int) -> AlgElem:
    r = make_case(case, node)
    return idiv(r, n, mu).realization.reduce(l)


def generators(case: str, l: int) -> list[tuple[int, int]]:
    """``(node, n)`` for the generators ``B_i^(n)``, ``1 <= n < l``, in deterministic order."""
    return [(i, n) for i in _nodes(case) for n in range(1, l)]


def apply_generator(case: str, node: int, n: int, x: AlgElem, l: int) -> AlgElem:
    """``B_i^(n) x`` with the generator realized at every left weight of ``x``."""
    out = AlgElem.zero(x.model, x.ring)
    for mu in x.left_weights():
        out = out + _generator_at(case, node, n, mu, l) * x.restrict_left(mu)
    return out


@dataclass
class SpanReport:
    case: str
    l: int
    weight: tuple
    ranks: list = field(default_factory=list)
    predicted: int = 0
    stabilized: bool = False
    budget_too_small: bool = False

    @property
    def rank(self) -> int:
        return self.ranks[-1] if self.ranks else 0

    def to_json(self) -> dict:
        return {"case": self.case, "l": self.l, "weight": list(self.weight),
                "ranks_by_budget": self.ranks, "computed": self.rank,
                "predicted": str(self.predicted), "stabilized": self.stabilized,
                "budget_too_small": self.budget_too_small}


def span_growth(case: str, l: int, lam, budget: int) -> tuple[KSpan, list[int]]:
    """K-span of all generator words of length <= budget applied to ``1_lam``.

    Only words that enlarged the span are extended; this yields the same span
    as enumerating every word.
    """
    lam = tuple(lam)
    r = make_case(case, _nodes(case)[0])
    span = KSpan(l)
    start = AlgElem.idempotent(r.model, lam).reduce(l)
    span.add(start)
    frontier = [start]
    ranks = [span.rank]
    gens = generators(case, l)
    for _ in range(budget):
        nxt = []
        for w in frontier:
            for node, n in gens:
                y = apply_generator(case, node, n, w, l)
                if span.add(y):
                    nxt.append(y)
        frontier = nxt
        ranks.append(span.rank)
    return span, ranks


def small_span_rank(case: str, l: int, lam, budget: int) -> SpanReport:
    """Rank of the span, reported per word-length budget ``0..budget``."""
    name = "AI1" if case == "AI1" else "AIII11"
    pred = dim_formula(name, None, l).predicted
    _, ranks = span_growth(case, l, lam, budget)
    stable = len(ranks) >= 2 and ranks[-1] == ranks[-2]
    return SpanReport(case, l, tuple(lam), ranks, pred, stable, not stable)


def closure_check(case: str, l: int, lam, budget: int = 6) -> dict:
    """Every generator maps the computed span into itself.

    For AI1 the products ``B B^(m) 1_lam`` are also expanded in the basis
    ``B^(k) 1_lam`` (``k < l``) by a unitriangular solve on the F-only terms,
    so the coefficients visibly lie in A' (no division occurs).
    """
    lam = tuple(lam)
    span, ranks = span_growth(case, l, lam, budget)
    failures = []
    for idx, s in enumerate(span.basis):
        for node, n in generators(case, l):
            y = apply_generator(case, node, n, s, l)
            if not span.contains(y):
                failures.append({"basis_index": idx, "node": node, "n": n})
    out = {"case": case, "l": l, "weight": list(lam), "rank": span.rank, "ok": not failures,
           "failures": failures}
    if case == "AI1":
        out["expansions"] = ai1_expansions(l, lam)
        out["ok"] = out["ok"] and all(e["residual_zero"] for e in out["expansions"])
    return out


def ai1_expansions(l: int, lam) -> list[dict]:
    lam = tuple(lam)
    basis = [_generator_at("AI1", 0, k, lam, l) if k else
             AlgElem.idempotent(make_case("AI1").model, lam).reduce(l) for k in range(l)]
    out = []
    for m in range(l):
        target = apply_generator("AI1", 0, 1, basis[m], l)
        coeffs = {}
        rest = target
        for k in reversed(range(l)):
            key = ((0,), (k,), lam)
            c = rest.coeff(key)
            if c:
                coeffs[k] = c
                rest = rest - basis[k].scale(c)
        out.append({"m": m, "coefficients": {str(k): str(c) for k, c in sorted(coeffs.items())},
                    "residual_zero": rest.is_zero()})
    return out


def projection_rank(case: str, l: int, lam, budget: int = 6) -> int:
    """Rank of the span after dropping every term with a nonzero E-exponent."""
    span, _ = span_growth(case, l, lam, budget)
    proj = KSpan(l)
    for s in span.basis:
        proj.add(AlgElem(s.model, s.ring, {k: c for k, c in s.terms.items() if not any(k[0])}))
    return proj.rank
