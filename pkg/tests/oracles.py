"""Independent reference computations used only by the tests.

Nothing here calls into ifrob's arithmetic: q-numbers are built with sympy or
with plain dicts, so agreement is a genuine cross-check.
"""

from __future__ import annotations

from functools import lru_cache

import sympy

V = sympy.Symbol("v")


def sympy_to_dict(expr) -> dict[int, int]:
    """Laurent polynomial in v (sympy) -> {exponent: coefficient}."""
    expr = sympy.expand(sympy.cancel(expr))
    num, den = sympy.fraction(sympy.together(expr))
    den_poly = sympy.Poly(den, V)
    if len(den_poly.terms()) != 1:
        raise ArithmeticError(f"not a Laurent polynomial: {expr}")
    (shift,), dc = den_poly.terms()[0]
    out = {}
    for (e,), c in sympy.Poly(num, V).terms():
        q, r = divmod(int(c), int(dc))
        if r:
            raise ArithmeticError("non-integral coefficient")
        if q:
            out[e - shift] = q
    return out


def sympy_qint(n: int, d: int = 1):
    x = V ** d
    return (x ** n - x ** (-n)) / (x - 1 / x)


def sympy_qbinom(t: int, c: int, d: int = 1) -> dict[int, int]:
    """Product formula prod_{s<c} [t-s] / [c]!, divided exactly by sympy."""
    num = sympy.Integer(1)
    den = sympy.Integer(1)
    for s in range(c):
        num *= sympy_qint(t - s, d)
        den *= sympy_qint(s + 1, d)
    return sympy_to_dict(num / den)


def _add(a: dict, b: dict, shift: int = 0) -> dict:
    out = dict(a)
    for e, c in b.items():
        out[e + shift] = out.get(e + shift, 0) + c
    return {e: c for e, c in out.items() if c}


@lru_cache(maxsize=None)
def _pascal(t: int, c: int, d: int) -> tuple:
    if c == 0:
        return ((0, 1),)
    if t < c:
        # 0 <= t < c
        return ()
    a = dict(_pascal(t - 1, c, d))
    b = dict(_pascal(t - 1, c - 1, d))
    return tuple(sorted(_add({e + d * c: x for e, x in a.items()}, b, -d * (t - c)).items()))


def pascal_qbinom(t: int, c: int, d: int = 1) -> dict[int, int]:
    """Balanced Pascal recurrence; negative tops through [-t, c] = (-1)^c [t+c-1, c]."""
    if c < 0:
        return {}
    if t >= 0:
        return dict(_pascal(t, c, d))
    sign = -1 if c % 2 else 1
    return {e: sign * x for e, x in _pascal(-t + c - 1, c, d)}


def poly_dict(p) -> dict[int, int]:
    """ifrob LaurentPoly -> plain dict."""
    return {int(e): int(c) for e, c in p.terms.items()}


def eval_at_root(coeffs: dict[int, int], l: int):
    """Exact value at exp(2 pi i / l) as a sympy number (for reduction oracles)."""
    z = sympy.exp(2 * sympy.pi * sympy.I / l)
    return sympy.nsimplify(sum(c * z ** e for e, c in coeffs.items()))


# -- plain-integer product formula ----------------------------------------------
# polynomials as (shift, [c_0, c_1, ...]) meaning v^shift * sum c_k v^k

def _pmul(a, b):
    sa, ca = a
    sb, cb = b
    out = [0] * (len(ca) + len(cb) - 1)
    for i, x in enumerate(ca):
        if x:
            for j, y in enumerate(cb):
                out[i + j] += x * y
    return sa + sb, out


def _pdiv_exact(a, b):
    sa, num = a
    sb, den = b
    num = list(num)
    while den and den[-1] == 0:
        den.pop()
    lead = den[-1]
    q = [0] * max(1, len(num) - len(den) + 1)
    for k in range(len(num) - len(den), -1, -1):
        c, r = divmod(num[k + len(den) - 1], lead)
        if r:
            raise ArithmeticError("inexact leading coefficient")
        q[k] = c
        for j, y in enumerate(den):
            num[k + j] -= c * y
    if any(num):
        raise ArithmeticError("nonzero remainder")
    return sa - sb, q


def _qint_poly(n: int, d: int):
    """[n]_{v^d} = v^{-d(n-1)} (1 + v^{2d} + ... + v^{2d(n-1)}), and [-n] = -[n]."""
    if n == 0:
        return 0, [0]
    sign = 1 if n > 0 else -1
    n = abs(n)
    coeffs = [0] * (2 * d * (n - 1) + 1)
    for k in range(n):
        coeffs[2 * d * k] = sign
    return -d * (n - 1), coeffs


def product_formula_qbinom(t: int, c: int, d: int = 1) -> dict[int, int]:
    """``prod_{s=0}^{c-1} [t-s] / [c]!`` by integer long division."""
    num = (0, [1])
    den = (0, [1])
    for s in range(c):
        num = _pmul(num, _qint_poly(t - s, d))
        den = _pmul(den, _qint_poly(s + 1, d))
    if not any(num[1]):
        return {}
    shift, q = _pdiv_exact(num, den)
    return {shift + k: x for k, x in enumerate(q) if x}
