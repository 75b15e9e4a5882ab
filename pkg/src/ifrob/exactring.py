"""Exact arithmetic in Z[v, v^-1] and in its cyclotomic quotients.

Two scalar types live here:

* :class:`LaurentPoly`, an integer Laurent polynomial in ``v`` (the generic
  coefficient ring).
* :class:`CycloElem`, an element of ``Z[v, v^-1]/(f_l)`` for odd ``l``, kept
  in the canonical basis ``1, v, ..., v^(phi(l)-1)``.

All q-combinatorics (balanced q-integers, q-factorials, q-binomials with
arbitrary integer top) produce :class:`LaurentPoly` values; :func:`reduce_mod`
is the quotient map to the root-of-unity ring.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Mapping, Union

from ifrob.errors import NonExactDivision, ScalarKindMismatch


class LaurentPoly:
    """Immutable integer Laurent polynomial in one variable ``v``."""

    __slots__ = ("_terms", "_key")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        acc: dict[int, int] = {}
        for e, c in items:
            if c:
                acc[e] = acc.get(e, 0) + c
        self._terms = {e: c for e, c in acc.items() if c}
        self._key: tuple | None = None

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def _raw(cls, terms: dict[int, int]) -> "LaurentPoly":
        # terms already free of zeros
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._key = None
        return obj

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    def min_exp(self) -> int:
        return min(self._terms)

    def max_exp(self) -> int:
        return max(self._terms)

    def is_const(self) -> bool:
        return not self._terms or set(self._terms) == {0}

    def const_value(self) -> int:
        if not self.is_const():
            raise ValueError(f"{self} is not constant")
        return self._terms.get(0, 0)

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other)
        if isinstance(other, CycloElem):
            raise ScalarKindMismatch("cannot mix generic and root-of-unity scalars")
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._terms) == 1:
                (e, c), = self._terms.items()
                if c in (1, -1):
                    return LaurentPoly.monomial(e * k, c ** (-k))
            raise ValueError("only signed monomials have Laurent inverses")
        result = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``v**k``."""
        return LaurentPoly._raw({e + k: c for e, c in self._terms.items()})

    def bar(self) -> "LaurentPoly":
        """The bar involution ``v -> v^-1``."""
        return LaurentPoly._raw({-e: c for e, c in self._terms.items()})

    def subs_power(self, d: int) -> "LaurentPoly":
        """Substitute ``v -> v**d``."""
        if d == 0:
            return LaurentPoly.const(sum(self._terms.values()))
        return LaurentPoly._raw({e * d: c for e, c in self._terms.items()})

    def evaluate(self, x):
        """Evaluate at a number; negative exponents need ``x`` invertible."""
        return sum(c * x**e for e, c in self._terms.items())

    def at_one(self) -> int:
        return sum(self._terms.values())

    def divexact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient ``self / other``; raises :class:`NonExactDivision`."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if self.is_zero():
            return self
        lo_n, lo_d = self.min_exp(), other.min_exp()
        num = [0] * (self.max_exp() - lo_n + 1)
        for e, c in self._terms.items():
            num[e - lo_n] = c
        den = [0] * (other.max_exp() - lo_d + 1)
        for e, c in other._terms.items():
            den[e - lo_d] = c
        quot, rem = _poly_divmod(num, den)
        if any(rem):
            raise NonExactDivision(f"({self}) / ({other}) leaves a remainder")
        return LaurentPoly({i + lo_n - lo_d: c for i, c in enumerate(quot) if c})

    def __truediv__(self, other):
        if isinstance(other, int):
            out = {}
            for e, c in self._terms.items():
                q, r = divmod(c, other)
                if r:
                    raise NonExactDivision(f"{self} not divisible by {other}")
                out[e] = q
            return LaurentPoly._raw(out)
        return self.divexact(other)

    # -- comparison / hashing ---------------------------------------------
    def _sortkey(self) -> tuple:
        if self._key is None:
            self._key = tuple(sorted(self._terms.items()))
        return self._key

    def __eq__(self, other):
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash(self._sortkey())

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            if e == 0:
                mono = str(abs(c))
            else:
                vpart = "v" if e == 1 else f"v^{e}"
                mono = vpart if abs(c) == 1 else f"{abs(c)}*{vpart}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, mono))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {s} {m}" for s, m in parts[1:])

    def to_json(self) -> list:
        return [[e, str(c)] for e, c in self._sortkey()]

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        return cls((int(e), int(c)) for e, c in data)


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Long division of integer polynomials (lists low -> high)."""
    while den and den[-1] == 0:
        den = den[:-1]
    rem = list(num)
    lead = den[-1]
    dd = len(den) - 1
    if len(rem) - 1 < dd:
        return [0], rem
    quot = [0] * (len(rem) - dd)
    for k in range(len(rem) - 1, dd - 1, -1):
        c = rem[k]
        if not c:
            continue
        q, r = divmod(c, lead)
        if r:
            raise NonExactDivision("leading coefficient does not divide")
        quot[k - dd] = q
        for j, dc in enumerate(den):
            rem[k - dd + j] -= q * dc
    return quot, rem[:dd] if dd else [0]


V = LaurentPoly.monomial(1)
ONE = LaurentPoly.const(1)
ZERO = LaurentPoly()


# ---------------------------------------------------------------------------
# q-combinatorics
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def qint(n: int, d: int = 1) -> LaurentPoly:
    """Balanced q-integer ``[n]`` in ``v_i = v**d``."""
    if n == 0:
        return ZERO
    if n < 0:
        return -qint(-n, d)
    return LaurentPoly({d * (n - 1 - 2 * k): 1 for k in range(n)})


@lru_cache(maxsize=None)
def qfact(n: int, d: int = 1) -> LaurentPoly:
    if n < 0:
        raise ValueError("qfact needs n >= 0")
    out = ONE
    for k in range(1, n + 1):
        out = out * qint(k, d)
    return out


@lru_cache(maxsize=None)
def qbinom(t: int, c: int, d: int = 1) -> LaurentPoly:
    """Balanced q-binomial with arbitrary integer top ``t`` and bottom ``c >= 0``.

    Numerator product ``prod_{s=1..c} [t-s+1]`` followed by exact division by
    ``[c]!``.
    """
    if c < 0:
        raise ValueError("qbinom needs c >= 0")
    if c == 0:
        return ONE
    num = ONE
    for s in range(1, c + 1):
        num = num * qint(t - s + 1, d)
        if num.is_zero():
            return ZERO
    return num.divexact(qfact(c, d))


def qbinom_squared(t: int, c: int, d: int = 1) -> LaurentPoly:
    """The ``v_i^2``-binomial, i.e. :func:`qbinom` with ``v_i`` replaced by ``v_i^2``."""
    return qbinom(t, c, 2 * d)


def int_binom(t: int, c: int) -> int:
    """Generalized integer binomial ``t(t-1)...(t-c+1)/c!`` (0 for c < 0)."""
    if c < 0:
        return 0
    if t >= 0:
        return math.comb(t, c)
    return (-1) ** c * math.comb(c - t - 1, c)


# ---------------------------------------------------------------------------
# cyclotomic quotient
# ---------------------------------------------------------------------------

def _check_level(l: int) -> None:
    if not isinstance(l, int) or l < 1 or l % 2 == 0:
        raise ValueError(f"root-of-unity arithmetic needs odd l >= 1, got {l!r}")


@lru_cache(maxsize=None)
def cyclo_poly(l: int) -> LaurentPoly:
    """The ``l``-th cyclotomic polynomial ``f_l`` (odd ``l`` only)."""
    _check_level(l)
    out = LaurentPoly({l: 1, 0: -1})
    for k in range(1, l):
        if l % k == 0:
            out = out.divexact(cyclo_poly(k))
    return out


@lru_cache(maxsize=None)
def totient(l: int) -> int:
    return sum(1 for k in range(1, l + 1) if math.gcd(k, l) == 1)


@lru_cache(maxsize=None)
def _power_table(l: int) -> tuple[tuple[int, ...], ...]:
    """Coordinates of ``v^k`` in the canonical basis, for ``0 <= k < l``."""
    phi = totient(l)
    f = cyclo_poly(l)
    fco = [f.coeff(k) for k in range(phi + 1)]  # monic, degree phi
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(l):
        rows.append(tuple(cur))
        # multiply by v and reduce v^phi = -sum fco[k] v^k
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for k in range(phi):
                cur[k] -= top * fco[k]
    return tuple(rows)


class CycloElem:
    """Element of ``A' = Z[v, v^-1]/(f_l)`` in canonical coordinates."""

    __slots__ = ("l", "coords")

    def __init__(self, l: int, coords: Iterable[int]):
        _check_level(l)
        coords = tuple(int(c) for c in coords)
        if len(coords) != totient(l):
            raise ValueError(f"need {totient(l)} coordinates for l={l}")
        self.l = l
        self.coords = coords

    @classmethod
    def from_int(cls, l: int, c: int) -> "CycloElem":
        return cls(l, (c,) + (0,) * (totient(l) - 1))

    @classmethod
    def vpow(cls, l: int, k: int) -> "CycloElem":
        return cls(l, _power_table(l)[k % l])

    def _coerce(self, other) -> "CycloElem":
        if isinstance(other, CycloElem):
            if other.l != self.l:
                raise ScalarKindMismatch(f"cannot mix l={self.l} and l={other.l}")
            return other
        if isinstance(other, int):
            return CycloElem.from_int(self.l, other)
        if isinstance(other, LaurentPoly):
            raise ScalarKindMismatch("cannot mix generic and root-of-unity scalars")
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloElem(self.l, (a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return CycloElem(self.l, (-a for a in self.coords))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloElem(self.l, (a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        phi = len(self.coords)
        conv = [0] * (2 * phi - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    if b:
                        conv[i + j] += a * b
        return _from_exponent_coeffs(self.l, enumerate(conv))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = CycloElem.from_int(self.l, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, int):
            return self.coords == CycloElem.from_int(self.l, other).coords
        if isinstance(other, CycloElem):
            return self.l == other.l and self.coords == other.coords
        return NotImplemented

    def __hash__(self):
        return hash((self.l, self.coords))

    def to_laurent(self) -> LaurentPoly:
        return LaurentPoly(enumerate(self.coords))

    def __repr__(self):
        return f"CycloElem(l={self.l}, {self.to_laurent()})"

    def __str__(self):
        return str(self.to_laurent())

    def to_json(self) -> dict:
        return {"l": self.l, "coords": [str(c) for c in self.coords]}

    @classmethod
    def from_json(cls, data) -> "CycloElem":
        return cls(int(data["l"]), (int(c) for c in data["coords"]))


def _from_exponent_coeffs(l: int, pairs) -> CycloElem:
    table = _power_table(l)
    out = [0] * totient(l)
    for e, c in pairs:
        if c:
            row = table[e % l]
            for k, r in enumerate(row):
                if r:
                    out[k] += c * r
    return CycloElem(l, out)


def reduce_mod(l: int, p: LaurentPoly) -> CycloElem:
    """The quotient map ``A -> A'``: ``v^-1 -> v^(l-1)``, then remainder mod ``f_l``."""
    _check_level(l)
    return _from_exponent_coeffs(l, p._terms.items())


def qbinom_reduction_check(l: int, m: int, n: int, b: int, d_exp: int) -> bool:
    """Lusztig's reduction ``[ml+b, nl+d] = binom(m, n) [b, d]`` in ``A'``."""
    _check_level(l)
    if not (0 <= b < l and 0 <= d_exp < l and m >= 0 and n >= 0):
        raise ValueError("need 0 <= b, d_exp < l and m, n >= 0")
    lhs = reduce_mod(l, qbinom(m * l + b, n * l + d_exp, 1))
    factor = math.comb(m, n) if n <= m else 0
    rhs = reduce_mod(l, qbinom(b, d_exp, 1)) * factor
    return lhs == rhs


# ---------------------------------------------------------------------------
# scalar rings
# ---------------------------------------------------------------------------

Scalar = Union[LaurentPoly, CycloElem]


class GenericRing:
    """Scalars in ``A = Z[v, v^-1]``."""

    kind = "generic"

    def __eq__(self, other):
        return isinstance(other, GenericRing)

    def __hash__(self):
        return hash("generic")

    def __repr__(self):
        return "GenericRing()"

    @property
    def zero(self) -> LaurentPoly:
        return ZERO

    @property
    def one(self) -> LaurentPoly:
        return ONE

    def from_int(self, c: int) -> LaurentPoly:
        return LaurentPoly.const(c)

    def vpow(self, k: int) -> LaurentPoly:
        return LaurentPoly.monomial(k)

    def lift(self, p: LaurentPoly) -> LaurentPoly:
        return p

    def owns(self, x) -> bool:
        return isinstance(x, LaurentPoly)

    def to_json(self):
        return "generic"


class CyclotomicRing:
    """Scalars in ``A' = Z[v, v^-1]/(f_l)``, ``l`` odd."""

    kind = "root_of_unity"

    def __init__(self, l: int):
        _check_level(l)
        self.l = l

    def __eq__(self, other):
        return isinstance(other, CyclotomicRing) and other.l == self.l

    def __hash__(self):
        return hash(("cyclo", self.l))

    def __repr__(self):
        return f"CyclotomicRing({self.l})"

    @property
    def zero(self) -> CycloElem:
        return CycloElem.from_int(self.l, 0)

    @property
    def one(self) -> CycloElem:
        return CycloElem.from_int(self.l, 1)

    def from_int(self, c: int) -> CycloElem:
        return CycloElem.from_int(self.l, c)

    def vpow(self, k: int) -> CycloElem:
        return CycloElem.vpow(self.l, k)

    def lift(self, p: LaurentPoly) -> CycloElem:
        return _cached_reduce(self.l, p)

    def owns(self, x) -> bool:
        return isinstance(x, CycloElem) and x.l == self.l

    def to_json(self):
        return {"l": self.l}


@lru_cache(maxsize=200_000)
def _cached_reduce(l: int, p: LaurentPoly) -> CycloElem:
    return reduce_mod(l, p)


GENERIC = GenericRing()


def ring_from_json(data) -> GenericRing | CyclotomicRing:
    if data == "generic":
        return GENERIC
    return CyclotomicRing(int(data["l"]))
