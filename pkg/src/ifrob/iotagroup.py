"""Rank-one coideal generators and their iota-divided powers.

Three cases are realized:

``AI1``
    ``B 1_lam = F 1_lam + s v_i^(-<i,lam>) E 1_lam`` inside the sl2 model.
``AIII11``
    ``B_i 1_lam = F_i 1_lam + s_i v_i^(-<i,lam>) E_{tau i} 1_lam`` inside
    ``sl2 x sl2``; ``Y_i = s_i E_{tau i} K~_i^-1`` q-commutes with ``F_i``.
``QPlane``
    the abstract algebra ``F Y = v_i^-2 Y F`` with ``B = F + Y``.

Divided powers have a closed form (``idiv_closed``) and an inductive form
(``idiv_recursive``); the two are compared in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from ifrob.errors import ParityUnsupported, UnsupportedCase
from ifrob.exactring import GENERIC, LaurentPoly, qbinom, qint
from ifrob.qengine import AlgElem, Block, QPlane, Sl2Tensor, sl2_model, sl2_pair_model
from ifrob.rootdata import (
    IWeightLattice,
    SatakePair,
    apply_word_roots,
    longest_word,
    StarDatum,
    coroot_pairing,
    positive_roots_coords,
    satake,
)

CASES = ("AI1", "AIII11", "QPlane")


# ---------------------------------------------------------------------------
# parameters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Varsigma:
    """``sign * v^exponent``."""

    sign: int = 1
    exponent: int = 0

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def bar(self) -> "Varsigma":
        return Varsigma(self.sign, -self.exponent)

    def __pow__(self, k: int) -> "Varsigma":
        return Varsigma(self.sign ** k, self.exponent * k)

    def __mul__(self, other: "Varsigma") -> "Varsigma":
        return Varsigma(self.sign * other.sign, self.exponent + other.exponent)

    def poly(self) -> LaurentPoly:
        return LaurentPoly.monomial(self.exponent, self.sign)

    def to_json(self) -> dict:
        return {"sign": self.sign, "exponent": self.exponent}


@dataclass(frozen=True)
class IotaParams:
    """Per white node ``s_i`` and ``kappa_i`` (the latter must be 0)."""

    varsigma: dict = field(default_factory=dict)
    kappa: dict = field(default_factory=dict)
    starred_level: int = 1

    def __hash__(self):
        return hash((tuple(sorted(self.varsigma.items())), tuple(sorted(self.kappa.items())),
                     self.starred_level))

    def s(self, i: int) -> Varsigma:
        return self.varsigma[i]

    def starred(self, l: int) -> "IotaParams":
        """``s*_i = s_i^(l^2)``, ``kappa*_i = 0``."""
        return IotaParams({i: s ** (l * l) for i, s in self.varsigma.items()},
                          {i: 0 for i in self.kappa}, self.starred_level * l)

    def to_json(self) -> dict:
        return {
            "varsigma": {str(i): s.to_json() for i, s in sorted(self.varsigma.items())},
            "kappa": {str(i): k for i, k in sorted(self.kappa.items())},
            "starred_level": self.starred_level,
        }


def default_params(case: str, d: int = 1) -> IotaParams:
    if case == "AI1":
        return IotaParams({0: Varsigma(1, -d)}, {0: 0})
    if case in ("AIII11", "QPlane"):
        return IotaParams({0: Varsigma(1, 0), 1: Varsigma(1, 0)}, {0: 0, 1: 0})
    raise UnsupportedCase(f"no rank-one model for case {case!r}")


@dataclass
class ParamReport:
    ok: bool
    conditions: dict
    violations: list

    def to_json(self) -> dict:
        return {"ok": self.ok, "conditions": self.conditions, "violations": self.violations}


def _unit(n: int, i: int):
    return tuple(int(k == i) for k in range(n))


def validate_params(pair: SatakePair, params: IotaParams, star: StarDatum | None = None) -> ParamReport:
    """Evaluate the parameter conditions; with ``star`` check the starred parameters."""
    cartan = pair.datum.cartan
    n = cartan.rank
    if star is None:
        cm, dotm, d = cartan.cartan_matrix, cartan.dot, cartan.d
        vexp = {i: d[i] for i in range(n)}
        par = params
    else:
        cm, dotm = star.star_pairing_matrix, star.circ
        vexp = {i: star.v_star_exponent(i) for i in range(n)}
        par = params.starred(star.l) if params.starred_level == 1 else params
    tau = pair.tau
    black = sorted(pair.black)
    coroots = positive_roots_coords(tuple(zip(*cm)), black)
    roots = positive_roots_coords(cm, black)
    two_rho_vee = tuple(sum(r[k] for r in coroots) for k in range(n))
    two_rho = tuple(sum(r[k] for r in roots) for k in range(n))
    conds: dict = {}
    violations = []

    def record(name, ok):
        conds[name] = ok
        if not ok:
            violations.append(name)

    for i in pair.white:
        k = par.kappa.get(i, 0)
        record(f"kappa[{i}]", k == 0)
        record(f"kappa2[{i}]", k == 0 or LaurentPoly.const(k).bar() == LaurentPoly.const(k))
        if i not in par.varsigma:
            record(f"vs=[{i}]", False)
            continue
        ti = tau[i]
        th = pair.theta_roots(_unit(n, i))
        idot = sum(dotm[i][j] * th[j] for j in range(n))
        if idot == 0:
            record(f"vs=[{i}]", par.varsigma.get(ti) == par.varsigma[i])
        # (vs2): s_{tau i} = (-1)^<2 rho_vee, i'> v_i^(-<i, 2 rho + w tau i'>) bar(s_i)
        sign = (-1) ** (coroot_pairing(cm, two_rho_vee, _unit(n, i)) % 2)
        wti = pair.w_black_roots(_unit(n, ti)) if star is None else _w_black_in(cm, black, _unit(n, ti))
        beta = tuple(a + b for a, b in zip(two_rho, wti))
        pair_val = sum(cm[i][j] * beta[j] for j in range(n))
        rhs = Varsigma(sign, -vexp[i] * pair_val) * par.varsigma[i].bar()
        record(f"vs2[{i}]", par.varsigma.get(ti) == rhs)
    return ParamReport(not violations, conds, violations)


def _w_black_in(cm, black, beta):
    return apply_word_roots(cm, longest_word(cm, black), beta)


def pair_for_case(case: str) -> SatakePair:
    if case == "AI1":
        return satake("AI1")
    if case in ("AIII11", "QPlane"):
        return satake("AIII11")
    raise UnsupportedCase(f"no rank-one model for case {case!r}")


# ---------------------------------------------------------------------------
# rank-one cases
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RankOne:
    """A rank-one realization: the ambient model plus the generator data.

    ``node`` is the white node i; for AIII11 ``partner`` is ``tau i``.
    """

    case: str
    model: object
    node: int = 0
    params: IotaParams = field(default_factory=IotaParams)
    level: int = 1

    @property
    def d(self) -> int:
        if self.case == "QPlane":
            return self.model.d
        return self.model.blocks[self.node].d

    @property
    def partner(self) -> int:
        return 1 - self.node if self.case == "AIII11" else self.node

    def pairing(self, lam) -> int:
        """``<i, lam>`` (in the starred sense for starred cases)."""
        if self.case == "QPlane":
            if lam is None:
                return 0
            g = self.model.gate[self.node]
            return sum(x * y for x, y in zip(g, lam)) // self.model.scale
        return self.model.blocks[self.node].pairing(lam)

    def star(self, l: int) -> "RankOne":
        return RankOne(self.case, self.model.star(l), self.node, self.params.starred(l), self.level * l)

    def varsigma(self) -> Varsigma:
        return self.params.s(self.node)

    def to_json(self) -> dict:
        return {"case": self.case, "node": self.node, "d": self.d, "level": self.level,
                "params": self.params.to_json(), "model": self.model.to_json()}


def make_case(case: str, node: int = 0, d: int = 1, params: IotaParams | None = None,
              weighted: bool = True) -> RankOne:
    """Construct one of the rank-one cases with its default parameters."""
    params = default_params(case, d) if params is None else params
    if case == "AI1":
        return RankOne("AI1", sl2_model(d), 0, params)
    if case == "AIII11":
        if node not in (0, 1):
            raise ValueError("AIII11 has nodes 0 and 1")
        return RankOne("AIII11", sl2_pair_model(d), node, params)
    if case == "QPlane":
        if weighted:
            # weights of sl2 x sl2; Y_i has the weight of E_{tau i}
            amb = sl2_pair_model(d)
            root_i = amb.blocks[node].root
            root_t = amb.blocks[1 - node].root
            gate = tuple(b.coroot for b in amb.blocks)
            model = QPlane(d, root_t, root_i, gate, 1, "qplane")
        else:
            model = QPlane(d)
        return RankOne("QPlane", model, node, params)
    raise UnsupportedCase(f"case {case!r} is not realized; types with interior black nodes need braid operators")


def _mono(r: RankOne, e: Sequence[int], f: Sequence[int], lam, coeff, ring=GENERIC) -> AlgElem:
    return AlgElem.basis(r.model, r.model.key(e, f, lam), ring, coeff)


def b_generator(r: RankOne, lam) -> AlgElem:
    """``B_i 1_lam`` (generic scalars)."""
    s = r.varsigma()
    if r.case == "QPlane":
        return (_qp(r, 0, 1, lam, LaurentPoly.const(1)) + _qp(r, 1, 0, lam, s.poly()))
    h = r.pairing(lam)
    coeff = s.poly().shift(-r.d * h)
    if r.case == "AI1":
        return _mono(r, (0,), (1,), lam, 1) + _mono(r, (1,), (0,), lam, coeff)
    e = [0, 0]
    f = [0, 0]
    f[r.node] = 1
    e[r.partner] = 1
    return _mono(r, (0, 0), tuple(f), lam, 1) + _mono(r, tuple(e), (0, 0), lam, coeff)


def _qp(r: RankOne, a: int, b: int, lam, coeff) -> AlgElem:
    return AlgElem.basis(r.model, r.model.key(a, b, lam), GENERIC, coeff)


def b_window(r: RankOne, weights) -> AlgElem:
    """``sum_{mu in weights} B 1_mu``."""
    out = AlgElem.zero(r.model)
    for mu in weights:
        out = out + b_generator(r, mu)
    return out


def left_multiply_b(r: RankOne, x: AlgElem) -> AlgElem:
    """``B x`` with B placed at every left weight of ``x``."""
    if x.is_zero():
        return x
    bw = b_window(r, x.left_weights())
    if x.ring != bw.ring:
        bw = bw.to_ring(x.ring)
    return bw * x


# -- closed forms ------------------------------------------------------------

def b_small(r: RankOne, n: int, lam=None) -> AlgElem:
    """``b^(n) = sum_a v_i^(-a(n-a)) Y^(a) F^(n-a)`` in the q-plane."""
    if r.case != "QPlane":
        raise UnsupportedCase("b_small lives in the q-plane model")
    s = r.varsigma()
    out = AlgElem.zero(r.model)
    for a in range(n + 1):
        coeff = (s ** a).poly().shift(-r.d * a * (n - a))
        out = out + _qp(r, a, n - a, lam, coeff)
    return out


def realize_qplane_term(r: RankOne, a: int, b: int, lam, coeff: LaurentPoly) -> AlgElem:
    """Image of ``coeff Y_i^(a) F_i^(b) 1_lam`` in ``sl2 x sl2``.

    ``Y^(a) 1_mu = s^a v_i^(-a <i,mu>) E_{tau i}^(a) 1_mu`` since ``<i, tau i'> = 0``.
    """
    blk = r.model.blocks[r.node]
    mu = tuple(x - b * y for x, y in zip(lam, blk.root))
    s = r.varsigma() ** a
    c = coeff * s.poly().shift(-r.d * a * blk.pairing(mu))
    e = [0, 0]
    f = [0, 0]
    e[r.partner] = a
    f[r.node] = b
    return _mono(r, tuple(e), tuple(f), lam, c)


def _ai1_closed(r: RankOne, n: int, lam) -> AlgElem:
    h = r.pairing(lam)
    if h % 2:
        raise ParityUnsupported("closed formulas cover even <i, lam> only; use idiv_recursive")
    s = r.varsigma()
    if s != Varsigma(1, -r.d):
        raise UnsupportedCase("closed formulas assume s = v_i^-1")
    d = r.d
    out = AlgElem.zero(r.model)
    if n == 0:
        return AlgElem.idempotent(r.model, lam)
    hh = h // 2
    if n % 2 == 0:
        m = n // 2
        for c in range(m + 1):
            for a in range(2 * m - 2 * c + 1):
                exp = 2 * (a + c) * (m - a - hh) - 2 * a * c - (2 * c + 1) * c
                coeff = qbinom(m - c - a - hh, c, 2 * d)
                if not coeff.is_zero():
                    out = out + _mono(r, (a,), (2 * m - 2 * c - a,), lam, coeff.shift(d * exp))
    else:
        m = (n + 1) // 2
        for c in range(m):
            for a in range(2 * m - 1 - 2 * c + 1):
                exp = 2 * (a + c) * (m - a - hh) - 2 * a * c - a - (2 * c + 1) * c
                coeff = qbinom(m - c - a - hh - 1, c, 2 * d)
                if not coeff.is_zero():
                    out = out + _mono(r, (a,), (2 * m - 1 - 2 * c - a,), lam, coeff.shift(d * exp))
    return out


def phase_exponent(a: int, c: int, m: int, h: int, odd: bool) -> int:
    """Exponent of ``v_i`` in the closed formulas (``h`` even)."""
    exp = 2 * (a + c) * (m - a - h // 2) - 2 * a * c - (2 * c + 1) * c
    return exp - a if odd else exp


@dataclass
class IDivPower:
    case: str
    node: int
    n: int
    zeta: tuple
    weight: tuple | None
    parity: str
    realization: AlgElem
    method: str

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "node": self.node,
            "n": self.n,
            "parity": self.parity,
            "zeta": list(self.zeta),
            "method": self.method,
            "element": self.realization.to_json(),
        }


@lru_cache(maxsize=None)
def _lattice(case: str) -> IWeightLattice:
    return IWeightLattice(pair_for_case(case))


def _zeta_of(r: RankOne, lam) -> tuple:
    """Canonical representative of the class of ``lam`` in ``X_i``."""
    if lam is None:
        return ()
    return _lattice(r.case).reduce(lam)


def parity_of(r: RankOne, lam) -> str:
    return "even" if r.pairing(lam) % 2 == 0 else "odd"


def idiv_closed(r: RankOne, n: int, lam=None, ring=GENERIC) -> IDivPower:
    """Closed form of ``B^(n) 1_lam``; ring may be A or A'."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if r.case == "AI1":
        elem = _ai1_closed(r, n, lam)
    elif r.case == "QPlane":
        elem = b_small(r, n, lam)
    elif r.case == "AIII11":
        elem = _aiii11_closed(r, n, tuple(lam))
    else:
        raise UnsupportedCase(r.case)
    return IDivPower(r.case, r.node, n, _zeta_of(r, lam), None if lam is None else tuple(lam),
                     parity_of(r, lam) if lam is not None else "n/a", elem.to_ring(ring), "closed")


@lru_cache(maxsize=4096)
def _aiii11_closed(r: RankOne, n: int, lam: tuple) -> AlgElem:
    out = AlgElem.zero(r.model)
    for a in range(n + 1):
        out = out + realize_qplane_term(r, a, n - a, lam, LaurentPoly.monomial(-r.d * a * (n - a)))
    return out


def idiv_recursive(r: RankOne, n: int, lam=None, ring=GENERIC) -> IDivPower:
    """``B^(n) 1_lam`` from ``B B^(m) = [m+1] B^(m+1) + [m] B^(m-1)``.

    The correction term is present when ``m`` has the parity of ``<i, lam>``
    (AI1 only); the division by ``[m+1]`` is exact over A.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    seq = _recursive_sequence(r, n, None if lam is None else tuple(lam))
    return IDivPower(r.case, r.node, n, _zeta_of(r, lam), None if lam is None else tuple(lam),
                     parity_of(r, lam) if lam is not None else "n/a", seq[n].to_ring(ring), "recursive")


@lru_cache(maxsize=4096)
def _recursive_sequence(r: RankOne, n: int, lam) -> tuple:
    if n == 0:
        return (AlgElem.idempotent(r.model, lam),)
    prev = _recursive_sequence(r, n - 1, lam)
    m = n - 1
    top = left_multiply_b(r, prev[m])
    if r.case == "AI1" and m >= 1 and (m - r.pairing(lam)) % 2 == 0:
        top = top - prev[m - 1].scale(qint(m, r.d))
    return prev + (top.exact_div(qint(n, r.d)),)


def b_power(r: RankOne, n: int, lam=None) -> AlgElem:
    """``B^n 1_lam`` by repeated multiplication."""
    out = AlgElem.idempotent(r.model, lam)
    for _ in range(n):
        out = left_multiply_b(r, out)
    return out


def idiv(r: RankOne, n: int, lam=None, ring=GENERIC) -> IDivPower:
    """Preferred construction: closed form when available, otherwise recursive."""
    if r.case == "AI1" and r.pairing(lam) % 2:
        return idiv_recursive(r, n, lam, ring)
    return idiv_closed(r, n, lam, ring)


# -- the z recursion ------------------------------------------------------

def z_recursion(n_max: int, d: int = 1) -> list[AlgElem]:
    """``z^(n)`` for ``0 <= n <= n_max`` in the weight-free q-plane."""
    r = make_case("QPlane", d=d, weighted=False)
    q = r.model
    zs = [AlgElem.idempotent(q)]

    def mono(a, b, coeff):
        return AlgElem.basis(q, q.key(a, b), GENERIC, coeff)

    for n in range(1, n_max + 1):
        acc = AlgElem.zero(q)
        for a in range(n):
            e2 = -2 * n * n + 2 * n * a - a * (a - 1) // 2
            acc = acc + mono(n - a, n - a, LaurentPoly.monomial(d * e2)) * zs[a]
        acc = acc - mono(0, n, 1) * mono(n, 0, 1)
        zs.append(acc.scale(LaurentPoly.monomial(d * n * (n - 1) // 2, -1)))
    return zs


# -- weight windows ------------------------------------------------------

def same_class(r: RankOne, lam, mu) -> bool:
    return _zeta_of(r, lam) == _zeta_of(r, mu)


def embed_window(r: RankOne, builder, zeta_rep, window) -> AlgElem:
    """``sum_{lam in window, class(lam) = class(zeta_rep)} builder(lam)``."""
    out = AlgElem.zero(r.model)
    for lam in window:
        lam = tuple(lam)
        if same_class(r, lam, zeta_rep):
            out = out + builder(lam)
    return out


def translation_consistent(r: RankOne, n: int, lam, shift) -> bool:
    """Spot check across two representatives ``lam`` and ``lam + shift`` of one class.

    The realizations differ (coefficients depend on the pairing), so the check
    is that both constructions agree at each representative and, for AI1, the
    parity is shared and the ``F^(n)`` coefficient is 1 at both.
    """
    lam = tuple(lam)
    lam2 = tuple(x + y for x, y in zip(lam, shift))
    if not same_class(r, lam, lam2):
        raise ValueError("shift must preserve the class")
    if r.case == "AI1" and parity_of(r, lam) != parity_of(r, lam2):
        return False
    for mu in (lam, lam2):
        x = idiv(r, n, mu).realization
        if idiv_recursive(r, n, mu).realization != x:
            return False
        if r.case == "AI1" and x.coeff(((0,), (n,), mu)) != LaurentPoly.const(1):
            return False
    return True
