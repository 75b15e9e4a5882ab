"""Modified quantum groups at desk scale.

Two models are provided:

* :class:`Sl2Tensor` -- a product of mutually orthogonal sl2 blocks in the
  modified form.  Basis monomials are ``prod_c E_c^(e_c) F_c^(f_c) 1_lam``
  (E before F inside each block, blocks commute), keyed by ``(e, f, lam)``
  with ``lam`` the right weight.
* :class:`QPlane` -- the algebra on ``Y, F`` with ``F Y = v_i^-2 Y F``,
  keyed by ``(a, b, lam)`` for ``Y^(a) F^(b) 1_lam`` (``lam`` may be ``None``
  in the weight-free variant).

Elements of either model are :class:`AlgElem` values over a scalar ring from
:mod:`ifrob.exactring`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from ifrob.errors import ModelMismatch, NonExactDivision, ScalarKindMismatch, WrongModel
from ifrob.exactring import (
    GENERIC,
    CyclotomicRing,
    CycloElem,
    GenericRing,
    LaurentPoly,
    ONE,
    qbinom,
    qint,
)

Vec = tuple[int, ...]
Ring = GenericRing | CyclotomicRing


def _vadd(a: Sequence[int], b: Sequence[int], k: int = 1) -> Vec:
    return tuple(x + k * y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# sl2 blocks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Block:
    """One sl2 factor: ``v_c = v^d``, root ``c'`` in X, coroot ``c`` with pairing scale.

    The pairing of the block with a weight is ``<c, lam> / scale``; the scale is
    ``l`` for blocks of a starred model and 1 otherwise.
    """

    d: int
    root: Vec
    coroot: Vec
    scale: int = 1

    def pairing(self, lam: Sequence[int]) -> int:
        p = sum(x * y for x, y in zip(self.coroot, lam))
        if p % self.scale:
            raise ValueError(f"weight {tuple(lam)} is outside the starred lattice")
        return p // self.scale

    def raw_pairing(self, lam: Sequence[int]) -> int:
        return sum(x * y for x, y in zip(self.coroot, lam))

    def starred(self, l: int) -> "Block":
        return Block(self.d * l * l, tuple(l * x for x in self.root), self.coroot, self.scale * l)


@lru_cache(maxsize=None)
def sl2_product(a: int, b: int, c: int, dd: int, h: int, d: int) -> tuple[tuple[tuple[int, int], LaurentPoly], ...]:
    """``E^(a) F^(b) * E^(c) F^(dd) 1_lam`` in one block, ``h = <i, lam>``.

    Uses ``F^(b) E^(c) 1_nu = sum_t [b - c - <i,nu>, t] E^(c-t) F^(b-t) 1_nu``
    at ``nu = lam - dd i'``.
    """
    h_nu = h - 2 * dd
    out = []
    for t in range(min(b, c) + 1):
        coeff = qbinom(b - c - h_nu, t, d)
        if coeff.is_zero():
            continue
        coeff = coeff * qbinom(a + c - t, a, d) * qbinom(b - t + dd, dd, d)
        if not coeff.is_zero():
            out.append(((a + c - t, b + dd - t), coeff))
    return tuple(out)


@dataclass(frozen=True)
class Sl2Tensor:
    """Modified form of ``U(sl2)^{x r}`` with weights in ``X = Z^rank_x``."""

    blocks: tuple[Block, ...]
    rank_x: int
    name: str = "sl2"

    def __post_init__(self):
        for c, blk in enumerate(self.blocks):
            if len(blk.root) != self.rank_x or len(blk.coroot) != self.rank_x:
                raise ValueError("block vectors must live in X = Z^rank_x")
            for c2, other in enumerate(self.blocks):
                val = blk.raw_pairing(other.root)
                want = 2 * blk.scale if c == c2 else 0
                if val != want:
                    raise ValueError("blocks must be orthogonal sl2 factors")

    kind = "sl2"

    @property
    def nblocks(self) -> int:
        return len(self.blocks)

    def _check_weight(self, lam) -> Vec:
        lam = tuple(int(x) for x in lam)
        if len(lam) != self.rank_x:
            raise ValueError(f"weight {lam} has wrong length")
        for blk in self.blocks:
            blk.pairing(lam)
        return lam

    def key(self, e: Sequence[int], f: Sequence[int], lam: Sequence[int]):
        e, f = tuple(e), tuple(f)
        if len(e) != self.nblocks or len(f) != self.nblocks or min(e + f) < 0:
            raise ValueError("exponents must be non-negative, one per block")
        return (e, f, self._check_weight(lam))

    def idempotent_key(self, lam):
        z = (0,) * self.nblocks
        return self.key(z, z, lam)

    def right_weight(self, key) -> Vec:
        return key[2]

    def left_weight(self, key) -> Vec:
        e, f, lam = key
        out = lam
        for blk, a, b in zip(self.blocks, e, f):
            if a != b:
                out = _vadd(out, blk.root, a - b)
        return out

    def pairing(self, c: int, lam) -> int:
        return self.blocks[c].pairing(lam)

    def mul_keys(self, k1, k2):
        """Normal-ordered product of two basis monomials, generic coefficients."""
        e1, f1, w1 = k1
        e2, f2, w2 = k2
        if w1 != self.left_weight(k2):
            return ()
        per_block = []
        for c, blk in enumerate(self.blocks):
            res = sl2_product(e1[c], f1[c], e2[c], f2[c], blk.pairing(w2), blk.d)
            if not res:
                return ()
            per_block.append(res)
        if len(per_block) == 1:
            return tuple((((ef[0],), (ef[1],), w2), coeff) for ef, coeff in per_block[0])
        out = []
        for combo in itertools.product(*per_block):
            coeff = ONE
            for _, cf in combo:
                coeff = coeff * cf
            out.append(((tuple(x[0][0] for x in combo), tuple(x[0][1] for x in combo), w2), coeff))
        return tuple(out)

    def star(self, l: int) -> "Sl2Tensor":
        return Sl2Tensor(tuple(b.starred(l) for b in self.blocks), self.rank_x, f"{self.name}*{l}")

    def in_xstar(self, lam, l: int) -> bool:
        return all(blk.raw_pairing(lam) % (blk.scale * l) == 0 for blk in self.blocks)

    def fr_key(self, key, l: int):
        e, f, lam = key
        if any(x % l for x in e + f) or not self.in_xstar(lam, l):
            return None
        return (tuple(x // l for x in e), tuple(x // l for x in f), lam)

    def degree(self, key) -> int:
        return sum(key[0]) + sum(key[1])

    def key_json(self, key) -> dict:
        return {"e": list(key[0]), "f": list(key[1]), "weight": list(key[2])}

    def to_json(self) -> dict:
        return {
            "kind": "sl2",
            "name": self.name,
            "blocks": [{"d": b.d, "root": list(b.root), "coroot": list(b.coroot), "scale": b.scale}
                       for b in self.blocks],
        }


def sl2_model(d: int = 1) -> Sl2Tensor:
    """Simply connected sl2: ``X = Z omega``, ``i' = 2 omega``."""
    return Sl2Tensor((Block(d, (2,), (1,)),), 1, "A1")


def sl2_pair_model(d: int = 1) -> Sl2Tensor:
    """Simply connected ``sl2 x sl2`` with ``X = Z^2``."""
    return Sl2Tensor((Block(d, (2, 0), (1, 0)), Block(d, (0, 2), (0, 1))), 2, "A1xA1")


# ---------------------------------------------------------------------------
# q-plane
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QPlane:
    """``Y^(a) F^(b) 1_lam`` with ``F Y = v^(-2d) Y F``.

    ``y_shift`` and ``f_shift`` are the weights of ``Y`` and ``F`` (F lowers by
    ``f_shift``); ``gate`` lists the coroots that cut out ``X*``.  With
    ``y_shift = None`` the model is weight-free and every key carries ``None``.
    """

    d: int = 1
    y_shift: Vec | None = None
    f_shift: Vec | None = None
    gate: tuple[Vec, ...] = ()
    scale: int = 1
    name: str = "qplane"

    kind = "qplane"

    @property
    def weighted(self) -> bool:
        return self.y_shift is not None

    def key(self, a: int, b: int, lam=None):
        if a < 0 or b < 0:
            raise ValueError("exponents must be non-negative")
        if self.weighted:
            if lam is None:
                raise ValueError("weighted q-plane needs a weight")
            lam = tuple(int(x) for x in lam)
        else:
            lam = None
        return (a, b, lam)

    def idempotent_key(self, lam=None):
        return self.key(0, 0, lam)

    def right_weight(self, key):
        return key[2]

    def left_weight(self, key):
        a, b, lam = key
        if lam is None:
            return None
        return _vadd(_vadd(lam, self.y_shift, a), self.f_shift, -b)

    def mul_keys(self, k1, k2):
        a, b, w1 = k1
        c, dd, w2 = k2
        if w1 != self.left_weight(k2):
            return ()
        coeff = qbinom(a + c, a, self.d) * qbinom(b + dd, b, self.d)
        if b and c:
            coeff = coeff.shift(-2 * self.d * b * c)
        return (((a + c, b + dd, w2), coeff),)

    def star(self, l: int) -> "QPlane":
        if not self.weighted:
            return QPlane(self.d * l * l, None, None, (), self.scale * l, f"{self.name}*{l}")
        return QPlane(self.d * l * l, tuple(l * x for x in self.y_shift),
                      tuple(l * x for x in self.f_shift), self.gate, self.scale * l,
                      f"{self.name}*{l}")

    def in_xstar(self, lam, l: int) -> bool:
        if lam is None:
            return True
        return all(sum(x * y for x, y in zip(g, lam)) % (self.scale * l) == 0 for g in self.gate)

    def fr_key(self, key, l: int):
        a, b, lam = key
        if a % l or b % l or not self.in_xstar(lam, l):
            return None
        return (a // l, b // l, lam)

    def degree(self, key) -> int:
        return key[0] + key[1]

    def key_json(self, key) -> dict:
        out = {"y": key[0], "f": key[1]}
        if key[2] is not None:
            out["weight"] = list(key[2])
        return out

    def to_json(self) -> dict:
        out = {"kind": "qplane", "name": self.name, "d": self.d, "scale": self.scale}
        if self.weighted:
            out["y_shift"] = list(self.y_shift)
            out["f_shift"] = list(self.f_shift)
        return out


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------

def _scalar_json(x):
    return x.to_json()


class AlgElem:
    """Finite linear combination of basis monomials of one model over one ring."""

    __slots__ = ("model", "ring", "terms")

    def __init__(self, model, ring: Ring, terms=None):
        self.model = model
        self.ring = ring
        clean = {}
        for k, c in (terms or {}).items():
            if not ring.owns(c):
                raise ScalarKindMismatch(f"scalar {c!r} does not belong to {ring!r}")
            if c:
                clean[k] = c
        self.terms = clean

    # -- construction ----------------------------------------------------
    @classmethod
    def zero(cls, model, ring: Ring = GENERIC) -> "AlgElem":
        return cls(model, ring, {})

    @classmethod
    def basis(cls, model, key, ring: Ring = GENERIC, coeff=None) -> "AlgElem":
        c = ring.one if coeff is None else _as_scalar(ring, coeff)
        return cls(model, ring, {key: c})

    @classmethod
    def idempotent(cls, model, lam=None, ring: Ring = GENERIC) -> "AlgElem":
        return cls.basis(model, model.idempotent_key(lam), ring)

    # -- helpers ---------------------------------------------------------
    def _compatible(self, other: "AlgElem"):
        if self.model != other.model:
            raise ModelMismatch(f"{self.model.name} vs {other.model.name}")
        if self.ring != other.ring:
            raise ScalarKindMismatch(f"{self.ring!r} vs {other.ring!r}")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, AlgElem):
            return NotImplemented
        return self.model == other.model and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.model, self.ring, frozenset(self.terms.items())))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0]))

    def coeff(self, key):
        return self.terms.get(key, self.ring.zero)

    def iter_weights(self):
        """Right weights occurring in the support."""
        return sorted({self.model.right_weight(k) for k in self.terms}, key=_sort_key)

    def left_weights(self):
        return sorted({self.model.left_weight(k) for k in self.terms}, key=_sort_key)

    def restrict(self, lam) -> "AlgElem":
        """``x 1_lam``."""
        lam = None if lam is None else tuple(lam)
        return AlgElem(self.model, self.ring,
                       {k: c for k, c in self.terms.items() if self.model.right_weight(k) == lam})

    def restrict_left(self, lam) -> "AlgElem":
        """``1_lam x``."""
        lam = None if lam is None else tuple(lam)
        return AlgElem(self.model, self.ring,
                       {k: c for k, c in self.terms.items() if self.model.left_weight(k) == lam})

    def max_degree(self) -> int:
        return max((self.model.degree(k) for k in self.terms), default=0)

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        self._compatible(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return AlgElem(self.model, self.ring, out)

    def __neg__(self):
        return AlgElem(self.model, self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "AlgElem":
        s = _as_scalar(self.ring, s)
        if not s:
            return AlgElem(self.model, self.ring, {})
        return AlgElem(self.model, self.ring, {k: s * c for k, c in self.terms.items()})

    def __rmul__(self, s):
        if isinstance(s, (int, LaurentPoly, CycloElem)):
            return self.scale(s)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, LaurentPoly, CycloElem)):
            return self.scale(other)
        if not isinstance(other, AlgElem):
            return NotImplemented
        self._compatible(other)
        return multiply(self, other)

    def __pow__(self, k: int) -> "AlgElem":
        if k < 1:
            raise ValueError("use an idempotent for the zeroth power")
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    def exact_div(self, p) -> "AlgElem":
        """Divide every coefficient exactly by a generic scalar (A only)."""
        if not isinstance(self.ring, GenericRing):
            raise ScalarKindMismatch("exact division is only defined over A")
        p = LaurentPoly.const(p) if isinstance(p, int) else p
        out = {}
        for k, c in self.terms.items():
            try:
                out[k] = c.divexact(p)
            except NonExactDivision as exc:
                raise NonExactDivision(
                    f"coefficient of {self.model.key_json(k)} not divisible by {p}") from exc
        return AlgElem(self.model, self.ring, out)

    def to_ring(self, ring: Ring) -> "AlgElem":
        """Base change ``A -> ring`` (identity when ``ring`` is already the scalar ring)."""
        if ring == self.ring:
            return self
        if not isinstance(self.ring, GenericRing):
            raise ScalarKindMismatch("only generic elements can be reduced")
        return AlgElem(self.model, ring, {k: ring.lift(c) for k, c in self.terms.items()})

    def reduce(self, l: int) -> "AlgElem":
        return self.to_ring(CyclotomicRing(l))

    def map_keys(self, fn, model=None) -> "AlgElem":
        """Apply a key map (``None`` drops the term); coefficients are summed."""
        model = self.model if model is None else model
        out: dict = {}
        for k, c in self.terms.items():
            nk = fn(k)
            if nk is None:
                continue
            s = out.get(nk)
            out[nk] = c if s is None else s + c
        return AlgElem(model, self.ring, out)

    # -- serialization ---------------------------------------------------
    def to_json(self) -> dict:
        return {
            "model": self.model.to_json(),
            "scalar": self.ring.to_json(),
            "terms": [dict(self.model.key_json(k), coeff=_scalar_json(c), text=str(c))
                      for k, c in self.sorted_terms()],
        }

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = [f"({c})*{self.model.key_json(k)}" for k, c in self.sorted_terms()]
        return " + ".join(parts)


def _sort_key(key):
    # None-safe ordering for weight-free keys
    if isinstance(key, tuple):
        return tuple(_sort_key(x) for x in key)
    if key is None:
        return ()
    return key


def _as_scalar(ring: Ring, s):
    if isinstance(s, int):
        return ring.from_int(s)
    if isinstance(s, LaurentPoly):
        return ring.lift(s)
    if ring.owns(s):
        return s
    raise ScalarKindMismatch(f"scalar {s!r} does not belong to {ring!r}")


def multiply(x: AlgElem, y: AlgElem) -> AlgElem:
    """Normal-ordered product ``x * y``."""
    x._compatible(y)
    model, ring = x.model, x.ring
    by_left: dict = {}
    for k, c in y.terms.items():
        by_left.setdefault(model.left_weight(k), []).append((k, c))
    out: dict = {}
    for k1, c1 in x.terms.items():
        partners = by_left.get(model.right_weight(k1))
        if not partners:
            continue
        for k2, c2 in partners:
            c12 = c1 * c2
            for k, coeff in model.mul_keys(k1, k2):
                val = c12 * ring.lift(coeff)
                s = out.get(k)
                out[k] = val if s is None else s + val
    return AlgElem(model, ring, {k: c for k, c in out.items() if c})


def qplane_multiply(x: AlgElem, y: AlgElem) -> AlgElem:
    if x.model.kind != "qplane" or y.model.kind != "qplane":
        raise WrongModel("qplane_multiply needs q-plane elements")
    return multiply(x, y)


def divided_power_of_generator(model: Sl2Tensor, block: int, which: str, n: int, lam,
                               ring: Ring = GENERIC) -> AlgElem:
    """``E_c^(n) 1_lam`` or ``F_c^(n) 1_lam``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    e = [0] * model.nblocks
    f = [0] * model.nblocks
    if which.upper() == "E":
        e[block] = n
    elif which.upper() == "F":
        f[block] = n
    else:
        raise ValueError("which must be 'E' or 'F'")
    return AlgElem.basis(model, model.key(e, f, lam), ring)


# ---------------------------------------------------------------------------
# module-action oracle
# ---------------------------------------------------------------------------

SparseMatrix = dict  # {(row_index, col_index): scalar}


def _module_weight(model: Sl2Tensor, highest: Vec, k: Sequence[int]) -> Vec:
    out = tuple(highest)
    for blk, kc in zip(model.blocks, k):
        out = _vadd(out, blk.root, -kc)
    return out


def default_highest_weight(model: Sl2Tensor, levels: Sequence[int]) -> Vec:
    """A weight ``Lam`` with ``<c, Lam> = N_c``, assuming coroots form a coordinate frame."""
    lam = [0] * model.rank_x
    for blk, n in zip(model.blocks, levels):
        support = [j for j, x in enumerate(blk.coroot) if x]
        if len(support) != 1 or blk.coroot[support[0]] != blk.scale:
            raise ValueError("supply the highest weight explicitly for this model")
        lam[support[0]] = n
    out = tuple(lam)
    for blk, n in zip(model.blocks, levels):
        if blk.pairing(out) != n:
            raise ValueError("supply the highest weight explicitly for this model")
    return out


def act_on_simple_module(x: AlgElem, levels, highest=None) -> SparseMatrix:
    """Matrix of ``x`` on the simple module ``L(N_1) x ... x L(N_r)``.

    Basis ``m_k`` (``0 <= k_c <= N_c``) of weight ``Lam - sum k_c c'``;
    ``F^(b) m_k = [k+b, b] m_{k+b}`` and ``E^(a) m_k = [N-k+a, a] m_{k-a}``.
    """
    model = x.model
    if model.kind != "sl2":
        raise WrongModel("the module oracle needs an sl2-tensor element")
    if isinstance(levels, int):
        levels = (levels,) * model.nblocks
    levels = tuple(levels)
    if highest is None:
        highest = default_highest_weight(model, levels)
    ring = x.ring
    weight_index: dict = {}
    for k in itertools.product(*(range(n + 1) for n in levels)):
        weight_index.setdefault(_module_weight(model, highest, k), []).append(k)
    out: SparseMatrix = {}
    for (e, f, lam), c in x.terms.items():
        for k in weight_index.get(lam, ()):
            coeff = ring.one
            target = []
            for blk, n, kc, a, b in zip(model.blocks, levels, k, e, f):
                k1 = kc + b
                if k1 > n:
                    coeff = None
                    break
                k2 = k1 - a
                if k2 < 0:
                    coeff = None
                    break
                coeff = coeff * ring.lift(qbinom(k1, b, blk.d) * qbinom(n - k1 + a, a, blk.d))
                target.append(k2)
            if coeff is None or not coeff:
                continue
            pos = (tuple(target), k)
            s = out.get(pos)
            val = c * coeff
            out[pos] = val if s is None else s + val
    return {p: v for p, v in out.items() if v}


def matrix_product(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    by_row: dict = {}
    for (r, c), val in b.items():
        by_row.setdefault(r, []).append((c, val))
    out: SparseMatrix = {}
    for (r, mid), val in a.items():
        for c, val2 in by_row.get(mid, ()):
            s = out.get((r, c))
            p = val * val2
            out[(r, c)] = p if s is None else s + p
    return {p: v for p, v in out.items() if v}


def matrix_sum(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    out = dict(a)
    for p, v in b.items():
        s = out.get(p)
        out[p] = v if s is None else s + v
    return {p: v for p, v in out.items() if v}


def act_product(factors: Iterable[AlgElem], levels, highest=None) -> SparseMatrix:
    """Action of an unordered (not normal-ordered) product, factor by factor."""
    mats = [act_on_simple_module(f, levels, highest) for f in factors]
    out = mats[0]
    for m in mats[1:]:
        out = matrix_product(out, m)
    return out

