"""Seeded random elements for the engine and Frobenius tests."""

from __future__ import annotations

import random

from ifrob.exactring import GENERIC, LaurentPoly
from ifrob.qengine import AlgElem


def random_laurent(rng: random.Random, span: int = 3, max_terms: int = 3) -> LaurentPoly:
    return LaurentPoly({rng.randint(-span, span): rng.randint(-3, 3) for _ in range(rng.randint(1, max_terms))})


def random_scalar(rng: random.Random, ring):
    p = random_laurent(rng)
    while p.is_zero() or not ring.lift(p):
        p = random_laurent(rng)
    return ring.lift(p)


def _exp(rng, bound: int, bias: int | None) -> int:
    if bias and rng.random() < 0.85:
        return bias * rng.randint(0, bound // bias)
    return rng.randint(0, bound)


def _random_key(rng, model, deg: int, right, bias):
    """A basis key of total degree <= ``deg`` on the right weight ``right``."""
    if model.kind == "sl2":
        n = model.nblocks
        while True:
            e = tuple(_exp(rng, deg, bias) for _ in range(n))
            f = tuple(_exp(rng, deg, bias) for _ in range(n))
            if sum(e) + sum(f) <= deg:
                return model.key(e, f, right)
    while True:
        a, b = _exp(rng, deg, bias), _exp(rng, deg, bias)
        if a + b <= deg:
            return model.key(a, b, right)


def random_on(rng, model, rights, deg: int, ring=GENERIC, terms: int = 2, bias=None) -> AlgElem:
    """Random element whose terms have right weights drawn from ``rights``."""
    x = AlgElem.zero(model, ring)
    while x.is_zero():
        for _ in range(rng.randint(1, terms)):
            key = _random_key(rng, model, deg, rng.choice(rights), bias)
            x = x + AlgElem.basis(model, key, ring, random_scalar(rng, ring))
    return x


def random_weight(rng, model, box: int, step: int = 1):
    if model.kind == "qplane" and not model.weighted:
        return None
    rank = model.rank_x if model.kind == "sl2" else len(model.y_shift)
    return tuple(step * rng.randint(-box, box) for _ in range(rank))


def random_chain(rng, model, degrees, ring=GENERIC, weight_box: int = 4, terms: int = 2,
                 bias=None, weight_step: int = 1, start=None) -> list[AlgElem]:
    """Elements ``x_1, ..., x_k`` with ``x_j`` placed on left weights of ``x_{j+1}``."""
    rights = [random_weight(rng, model, weight_box, weight_step) if start is None else tuple(start)]
    out = []
    for deg in reversed(degrees):
        x = random_on(rng, model, rights, deg, ring, terms, bias)
        out.append(x)
        rights = x.left_weights()
    return out[::-1]


def random_pair(rng, model, max_deg: int = 4, **kw):
    """``(x, y)`` with ``deg x + deg y <= max_deg`` and (usually) nonzero product."""
    dy = rng.randint(0, max_deg)
    return tuple(random_chain(rng, model, [max_deg - dy, dy], **kw))
