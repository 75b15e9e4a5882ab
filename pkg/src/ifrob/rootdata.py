"""Finite root data, Weyl group actions, star data and Satake pairs.

Conventions: a Cartan datum is the symmetric matrix ``i.j`` with
``i.i in {2, 4, 6}``; the Cartan integers are ``<i, j'> = 2 (i.j)/(i.i)``.
Root-space computations (positive roots, ``w_bullet``, half sums) are done in
simple-root coordinates and mapped into ``X`` through the simple roots ``i'``.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from ifrob.errors import NonFiniteType
from ifrob.intlinalg import (
    Lattice,
    dot,
    hnf,
    identity,
    integer_kernel,
    is_positive_definite,
    mat_mul,
    mat_vec,
    transpose,
)

Vec = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]

ROOT_BOUND = 10_000


# ---------------------------------------------------------------------------
# Cartan data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CartanDatum:
    """Symmetric pairing ``i.j`` on the node set ``0..n-1``."""

    dot: Matrix
    name: str = ""

    def __post_init__(self):
        n = len(self.dot)
        for i in range(n):
            if self.dot[i][i] not in (2, 4, 6):
                raise ValueError(f"i.i must be 2, 4 or 6 (node {i})")
            for j in range(n):
                if self.dot[i][j] != self.dot[j][i]:
                    raise ValueError("pairing is not symmetric")
                if i != j and self.dot[i][j] > 0:
                    raise ValueError("off-diagonal pairing must be <= 0")
                if (2 * self.dot[i][j]) % self.dot[i][i]:
                    raise ValueError("2 i.j / i.i must be an integer")
        if not is_positive_definite(self.dot):
            raise NonFiniteType(f"Cartan datum {self.name or self.dot} is not of finite type")

    @property
    def rank(self) -> int:
        return len(self.dot)

    @property
    def d(self) -> Vec:
        """``(i.i)/2`` per node."""
        return tuple(self.dot[i][i] // 2 for i in range(self.rank))

    @cached_property
    def cartan_matrix(self) -> Matrix:
        n = self.rank
        return tuple(
            tuple(2 * self.dot[i][j] // self.dot[i][i] for j in range(n)) for i in range(n)
        )

    def root_dot(self, a: Sequence[int], b: Sequence[int]) -> int:
        """``.``-pairing of two vectors in simple-root coordinates."""
        return sum(a[i] * self.dot[i][j] * b[j] for i in range(self.rank) for j in range(self.rank))


def _chain(n: int, diag: list[int], links: dict[tuple[int, int], int]) -> Matrix:
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = diag[i]
    for (i, j), val in links.items():
        m[i][j] = m[j][i] = val
    return tuple(tuple(r) for r in m)


def cartan_type(kind: str, n: int) -> CartanDatum:
    """Connected finite Cartan datum, Bourbaki node order (0-indexed)."""
    kind = kind.upper()
    if kind == "A" and n >= 1:
        return CartanDatum(_chain(n, [2] * n, {(i, i + 1): -1 for i in range(n - 1)}), f"A{n}")
    if kind == "B" and n >= 2:
        diag = [4] * (n - 1) + [2]
        return CartanDatum(_chain(n, diag, {(i, i + 1): -2 for i in range(n - 1)}), f"B{n}")
    if kind == "C" and n >= 2:
        diag = [2] * (n - 1) + [4]
        links = {(i, i + 1): -1 for i in range(n - 2)}
        links[(n - 2, n - 1)] = -2
        return CartanDatum(_chain(n, diag, links), f"C{n}")
    if kind == "D" and n >= 3:
        links = {(i, i + 1): -1 for i in range(n - 2)}
        links[(n - 3, n - 1)] = -1
        return CartanDatum(_chain(n, [2] * n, links), f"D{n}")
    if kind == "E" and n in (6, 7, 8):
        links = {(0, 2): -1, (1, 3): -1, (2, 3): -1}
        for i in range(3, n - 1):
            links[(i, i + 1)] = -1
        return CartanDatum(_chain(n, [2] * n, links), f"E{n}")
    if kind == "F" and n == 4:
        return CartanDatum(_chain(4, [4, 4, 2, 2], {(0, 1): -2, (1, 2): -2, (2, 3): -1}), "F4")
    if kind == "G" and n == 2:
        return CartanDatum(_chain(2, [2, 6], {(0, 1): -3}), "G2")
    raise ValueError(f"unknown Cartan type {kind}{n}")


def product_datum(*parts: CartanDatum) -> CartanDatum:
    n = sum(p.rank for p in parts)
    m = [[0] * n for _ in range(n)]
    off = 0
    for p in parts:
        for i in range(p.rank):
            for j in range(p.rank):
                m[off + i][off + j] = p.dot[i][j]
        off += p.rank
    return CartanDatum(tuple(tuple(r) for r in m), "x".join(p.name for p in parts))


_TYPE_RE = re.compile(r"([A-Ga-g])(\d+)")


def parse_type(name: str) -> CartanDatum:
    """Parse ``"B2"``, ``"A1xA1"`` (factors joined by ``x``)."""
    parts = []
    for token in name.split("x"):
        m = _TYPE_RE.fullmatch(token.strip())
        if not m:
            raise ValueError(f"cannot parse Cartan type {name!r}")
        parts.append(cartan_type(m.group(1), int(m.group(2))))
    return parts[0] if len(parts) == 1 else product_datum(*parts)


def connected_types(max_rank: int) -> list[CartanDatum]:
    out = []
    for n in range(1, max_rank + 1):
        out.append(cartan_type("A", n))
        if n >= 2:
            out.append(cartan_type("B", n))
            out.append(cartan_type("C", n))
        if n >= 4:
            out.append(cartan_type("D", n))
    if max_rank >= 2:
        out.append(cartan_type("G", 2))
    if max_rank >= 4:
        out.append(cartan_type("F", 4))
    if max_rank >= 6:
        out.extend(cartan_type("E", n) for n in (6, 7, 8) if n <= max_rank)
    return out


def finite_types(max_rank: int) -> list[CartanDatum]:
    """All finite Cartan data of rank <= max_rank (products in sorted factor order)."""
    conn = connected_types(max_rank)
    out: list[CartanDatum] = []

    def rec(start: int, left: int, acc: list[CartanDatum]):
        if acc:
            out.append(acc[0] if len(acc) == 1 else product_datum(*acc))
        for k in range(start, len(conn)):
            if conn[k].rank <= left:
                rec(k, left - conn[k].rank, acc + [conn[k]])

    rec(0, max_rank, [])
    return out


def identify_type(cm: Sequence[Sequence[int]]) -> str | None:
    """Name of the connected type whose Bourbaki Cartan matrix equals ``cm``."""
    n = len(cm)
    target = tuple(tuple(r) for r in cm)
    cands = [c for c in connected_types(max(n, 1)) if c.rank == n]
    for c in cands:
        if c.cartan_matrix == target:
            return c.name
    if n <= 8:
        # fall back to matching up to a relabelling of the nodes
        for c in cands:
            ref = c.cartan_matrix
            for perm in itertools.permutations(range(n)):
                if all(target[perm[i]][perm[j]] == ref[i][j] for i in range(n) for j in range(n)):
                    return c.name
    return None


# ---------------------------------------------------------------------------
# root systems in simple-root coordinates
# ---------------------------------------------------------------------------

def _reflect(cm: Matrix, i: int, beta: Vec) -> Vec:
    # s_i(beta) = beta - <i, beta> alpha_i, <i, beta> = sum_j a_ij beta_j
    pair = sum(cm[i][j] * beta[j] for j in range(len(beta)))
    return tuple(b - pair * (k == i) for k, b in enumerate(beta))


def positive_roots_coords(cm: Matrix, nodes: Iterable[int] | None = None) -> list[Vec]:
    """Positive roots of the parabolic subsystem on ``nodes``, in simple-root coords."""
    n = len(cm)
    nodes = list(range(n)) if nodes is None else sorted(nodes)
    simple = [tuple(int(k == i) for k in range(n)) for i in nodes]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in nodes:
                gamma = _reflect(cm, i, beta)
                if gamma not in seen and all(g >= 0 for g in gamma) and any(gamma):
                    seen.add(gamma)
                    nxt.append(gamma)
                    if len(seen) > ROOT_BOUND:
                        raise NonFiniteType("reflection closure exceeded the safety bound")
        frontier = nxt
    return sorted(seen, key=lambda r: (sum(r), r))


def longest_word(cm: Matrix, nodes: Iterable[int]) -> tuple[int, ...]:
    """A reduced word for the longest element of the parabolic subgroup."""
    nodes = sorted(nodes)
    n = len(cm)
    word: list[int] = []
    # w acts on simple-root coords; extend w by s_i while w(alpha_i) > 0

    def apply(word_, beta):
        for i in reversed(word_):
            beta = _reflect(cm, i, beta)
        return beta

    progressing = True
    count = 0
    while progressing:
        progressing = False
        for i in nodes:
            alpha = tuple(int(k == i) for k in range(n))
            if all(x >= 0 for x in apply(word, alpha)):
                word.append(i)
                progressing = True
                count += 1
                if count > ROOT_BOUND:
                    raise NonFiniteType("longest element search did not terminate")
                break
    return tuple(word)


def apply_word_roots(cm: Matrix, word: Sequence[int], beta: Sequence[int]) -> Vec:
    beta = tuple(beta)
    for i in reversed(word):
        beta = _reflect(cm, i, beta)
    return beta


# ---------------------------------------------------------------------------
# root data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RootDatum:
    """``X = Z^r``; simple roots ``i'`` in X, coroots ``i`` as functionals on X."""

    cartan: CartanDatum
    simple_roots: tuple[Vec, ...]
    simple_coroots: tuple[Vec, ...]
    lattice: str = "explicit"

    def __post_init__(self):
        cm = self.cartan.cartan_matrix
        n = self.cartan.rank
        if len(self.simple_roots) != n or len(self.simple_coroots) != n:
            raise ValueError("need one root and one coroot per node")
        for i in range(n):
            for j in range(n):
                if dot(self.simple_coroots[i], self.simple_roots[j]) != cm[i][j]:
                    raise ValueError(f"<{i}, {j}'> disagrees with the Cartan matrix")

    @property
    def rank_x(self) -> int:
        return len(self.simple_roots[0])

    @property
    def nodes(self) -> range:
        return range(self.cartan.rank)

    def pairing(self, i: int, lam: Sequence[int]) -> int:
        """``<i, lam>``."""
        return dot(self.simple_coroots[i], lam)

    def root_to_x(self, coords: Sequence[int]) -> Vec:
        r = self.rank_x
        return tuple(sum(c * self.simple_roots[i][k] for i, c in enumerate(coords)) for k in range(r))

    def coroot_to_y(self, coords: Sequence[int]) -> Vec:
        r = self.rank_x
        return tuple(sum(c * self.simple_coroots[i][k] for i, c in enumerate(coords)) for k in range(r))

    def reflection_x(self, i: int) -> Matrix:
        """Matrix of ``s_i(lam) = lam - <i, lam> i'`` on X."""
        r = self.rank_x
        a, h = self.simple_roots[i], self.simple_coroots[i]
        return tuple(tuple(int(p == q) - a[p] * h[q] for q in range(r)) for p in range(r))

    def reflection_y(self, i: int) -> Matrix:
        """Matrix of ``s_i(mu) = mu - <mu, i'> i`` on Y."""
        r = self.rank_x
        a, h = self.simple_roots[i], self.simple_coroots[i]
        return tuple(tuple(int(p == q) - h[p] * a[q] for q in range(r)) for p in range(r))

    def word_x(self, word: Sequence[int]) -> Matrix:
        m = identity(self.rank_x)
        for i in word:
            m = mat_mul(m, self.reflection_x(i))
        return m

    def word_y(self, word: Sequence[int]) -> Matrix:
        m = identity(self.rank_x)
        for i in word:
            m = mat_mul(m, self.reflection_y(i))
        return m

    def positive_roots(self, nodes: Iterable[int] | None = None) -> list[Vec]:
        """Positive roots (as vectors in X) of the parabolic subsystem on ``nodes``."""
        coords = positive_roots_coords(self.cartan.cartan_matrix, nodes)
        return [self.root_to_x(c) for c in coords]

    def to_json(self) -> dict:
        return {
            "type": self.cartan.name,
            "lattice": self.lattice,
            "roots": [list(r) for r in self.simple_roots],
            "coroots": [list(c) for c in self.simple_coroots],
        }


def simply_connected(cartan: CartanDatum | str) -> RootDatum:
    """X = weight lattice in fundamental-weight coordinates."""
    if isinstance(cartan, str):
        cartan = parse_type(cartan)
    cm = cartan.cartan_matrix
    n = cartan.rank
    roots = tuple(tuple(cm[j][i] for j in range(n)) for i in range(n))
    coroots = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    return RootDatum(cartan, roots, coroots, "simply_connected")


def adjoint(cartan: CartanDatum | str) -> RootDatum:
    """X = root lattice in simple-root coordinates."""
    if isinstance(cartan, str):
        cartan = parse_type(cartan)
    cm = cartan.cartan_matrix
    n = cartan.rank
    roots = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    coroots = tuple(tuple(cm[i][j] for j in range(n)) for i in range(n))
    return RootDatum(cartan, roots, coroots, "adjoint")


def datum_from_json(data: dict) -> RootDatum:
    cartan = parse_type(data["type"])
    lattice = data.get("lattice", "simply_connected")
    if lattice == "simply_connected":
        return simply_connected(cartan)
    if lattice == "adjoint":
        return adjoint(cartan)
    roots = tuple(tuple(int(x) for x in r) for r in data["roots"])
    coroots = tuple(tuple(int(x) for x in r) for r in data["coroots"])
    return RootDatum(cartan, roots, coroots, "explicit")


# ---------------------------------------------------------------------------
# star datum
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StarDatum:
    """The datum ``(I, o)`` and ``X* = {lam : <i, lam> in l_i Z}`` for a given ``l``."""

    base: RootDatum
    l: int

    def __post_init__(self):
        if self.l < 1:
            raise ValueError("l must be positive")

    @cached_property
    def l_i(self) -> Vec:
        """Minimal positive ``l_i`` with ``l_i (i.i)/2 in lZ``."""
        return tuple(self.l // math.gcd(self.l, d) for d in self.base.cartan.d)

    @cached_property
    def circ(self) -> Matrix:
        """``i o j = (i.j) l_i l_j``."""
        li = self.l_i
        dm = self.base.cartan.dot
        n = len(li)
        return tuple(tuple(dm[i][j] * li[i] * li[j] for j in range(n)) for i in range(n))

    @cached_property
    def circ_cartan_matrix(self) -> Matrix:
        """``2 (i o j)/(i o i)``; the o-values need not lie in {2, 4, 6}."""
        c = self.circ
        n = len(c)
        return tuple(tuple(2 * c[i][j] // c[i][i] for j in range(n)) for i in range(n))

    @cached_property
    def star_pairing_matrix(self) -> Matrix:
        """``<i*, j'*>* = <i, l_j j'> / l_i``."""
        cm = self.base.cartan.cartan_matrix
        li = self.l_i
        n = len(li)
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                num = cm[i][j] * li[j]
                if num % li[i]:
                    raise ValueError("star pairing is not integral")
                row.append(num // li[i])
            out.append(tuple(row))
        return tuple(out)

    def contains(self, lam: Sequence[int]) -> bool:
        """``lam in X*``."""
        return all(self.base.pairing(i, lam) % li == 0 for i, li in enumerate(self.l_i))

    def star_root(self, i: int) -> Vec:
        """``i'* = l_i i'``."""
        return tuple(self.l_i[i] * x for x in self.base.simple_roots[i])

    def star_pairing(self, i: int, lam: Sequence[int]) -> int:
        """``<i*, lam>* = <i, lam>/l_i`` for ``lam in X*``."""
        p = self.base.pairing(i, lam)
        if p % self.l_i[i]:
            raise ValueError(f"{tuple(lam)} is not in X*")
        return p // self.l_i[i]

    @cached_property
    def xstar_basis(self) -> list[Vec]:
        base = self.base
        n, r = base.cartan.rank, base.rank_x
        # kernel of [C | -diag(l_i)] projected to the first r coordinates
        a = [list(base.simple_coroots[i]) + [-self.l_i[i] * int(k == i) for k in range(n)]
             for i in range(n)]
        ker = integer_kernel(a)
        return [tuple(row) for row in hnf([k[:r] for k in ker])]

    def v_star_exponent(self, i: int) -> int:
        """``v_i* = v^((i o i)/2)``."""
        return self.circ[i][i] // 2

    def type_report(self) -> dict:
        cm_dot = self.base.cartan.cartan_matrix
        cm_circ = self.circ_cartan_matrix
        return {
            "l": self.l,
            "l_i": list(self.l_i),
            "cartan_dot": [list(r) for r in cm_dot],
            "cartan_circ": [list(r) for r in cm_circ],
            "same_type": cm_dot == cm_circ,
            "circ_type": identify_type(cm_circ) if _connected(cm_circ) else None,
            "uniform_l": all(x == self.l for x in self.l_i),
        }


def _connected(cm) -> bool:
    n = len(cm)
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j not in seen and cm[i][j]:
                seen.add(j)
                stack.append(j)
    return len(seen) == n


def build_star_datum(datum: RootDatum, l: int, check: bool = True) -> StarDatum:
    """Star datum; for odd ``l`` (prime to 3 with a G2 factor) assert the type is unchanged."""
    star = StarDatum(datum, l)
    if check and same_type_expected(datum.cartan, l):
        if star.circ_cartan_matrix != datum.cartan.cartan_matrix:
            raise AssertionError("o-Cartan matrix differs from the .-Cartan matrix")
        if star.star_pairing_matrix != datum.cartan.cartan_matrix:
            raise AssertionError("<i*, j'*>* differs from <i, j'>")
        if any(x != l for x in star.l_i):
            raise AssertionError(f"l_i = {star.l_i} is not uniformly {l}")
    return star


def same_type_expected(cartan: CartanDatum, l: int) -> bool:
    """``l`` odd, and prime to 3 when a G2 factor is present."""
    if l % 2 == 0:
        return False
    has_g2 = 3 in cartan.d
    return not (has_g2 and l % 3 == 0)


# ---------------------------------------------------------------------------
# Satake pairs
# ---------------------------------------------------------------------------

def _perm_matrix(tau: Sequence[int]) -> Matrix:
    n = len(tau)
    # e_j -> e_tau(j)
    return tuple(tuple(int(tau[q] == p) for q in range(n)) for p in range(n))


@dataclass(frozen=True)
class SatakePair:
    """``(I_bullet, tau)`` on a root datum; ``tau`` is a permutation of the nodes."""

    datum: RootDatum
    black: frozenset[int]
    tau: tuple[int, ...]
    name: str = ""
    tau_x: Matrix | None = None

    def __post_init__(self):
        n = self.datum.cartan.rank
        if sorted(self.tau) != list(range(n)):
            raise ValueError("tau must be a permutation of the nodes")
        if any(self.tau[self.tau[i]] != i for i in range(n)):
            raise ValueError("tau must be an involution")
        dm = self.datum.cartan.dot
        if any(dm[self.tau[i]][self.tau[j]] != dm[i][j] for i in range(n) for j in range(n)):
            raise ValueError("tau does not preserve the pairing")
        if not self.black <= set(range(n)):
            raise ValueError("black nodes must be nodes")

    @property
    def white(self) -> list[int]:
        return [i for i in self.datum.nodes if i not in self.black]

    @cached_property
    def tau_matrix_x(self) -> Matrix:
        if self.tau_x is not None:
            return self.tau_x
        if self.datum.lattice in ("simply_connected", "adjoint"):
            return _perm_matrix(self.tau)
        raise ValueError("explicit root data need an explicit tau_x")

    @cached_property
    def tau_matrix_y(self) -> Matrix:
        # pairing invariance: tau_Y = tau_X^{-T} = tau_X^T for an involution
        return transpose(self.tau_matrix_x)

    @cached_property
    def w_black_word(self) -> tuple[int, ...]:
        return longest_word(self.datum.cartan.cartan_matrix, self.black)

    @cached_property
    def w_black_x(self) -> Matrix:
        return self.datum.word_x(self.w_black_word)

    @cached_property
    def w_black_y(self) -> Matrix:
        return self.datum.word_y(self.w_black_word)

    @cached_property
    def theta_x(self) -> Matrix:
        """``theta = -w_bullet o tau`` on X."""
        m = mat_mul(self.w_black_x, self.tau_matrix_x)
        return tuple(tuple(-x for x in row) for row in m)

    @cached_property
    def theta_y(self) -> Matrix:
        m = mat_mul(self.w_black_y, self.tau_matrix_y)
        return tuple(tuple(-x for x in row) for row in m)

    def theta(self, lam: Sequence[int]) -> Vec:
        return mat_vec(self.theta_x, lam)

    # -- black root system data (simple-root coordinates) -----------------
    @cached_property
    def black_positive_roots(self) -> list[Vec]:
        return positive_roots_coords(self.datum.cartan.cartan_matrix, self.black)

    @cached_property
    def black_positive_coroots(self) -> list[Vec]:
        return positive_roots_coords(transpose(self.datum.cartan.cartan_matrix), self.black)

    @cached_property
    def two_rho_black(self) -> Vec:
        """``2 rho_bullet`` in simple-root coordinates (stored with denominator 2)."""
        n = self.datum.cartan.rank
        return tuple(sum(r[k] for r in self.black_positive_roots) for k in range(n))

    @cached_property
    def two_rho_black_vee(self) -> Vec:
        """``2 rho_bullet^vee`` in simple-coroot coordinates."""
        n = self.datum.cartan.rank
        return tuple(sum(r[k] for r in self.black_positive_coroots) for k in range(n))

    def w_black_roots(self, beta: Sequence[int]) -> Vec:
        return apply_word_roots(self.datum.cartan.cartan_matrix, self.w_black_word, beta)

    def simple(self, i: int) -> Vec:
        return tuple(int(k == i) for k in self.datum.nodes)

    def theta_roots(self, beta: Sequence[int]) -> Vec:
        """``theta`` on the root lattice, simple-root coordinates."""
        beta = tuple(beta)
        taub = [0] * len(beta)
        for k, b in enumerate(beta):
            taub[self.tau[k]] += b
        return tuple(-x for x in self.w_black_roots(taub))

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "datum": self.datum.to_json(),
            "black": sorted(self.black),
            "tau": list(self.tau),
        }


def coroot_pairing(cm: Matrix, coroot_coords: Sequence[int], root_coords: Sequence[int]) -> int:
    """``<sum c_k k, sum b_j j'> = sum c_k a_kj b_j``."""
    n = len(cm)
    return sum(coroot_coords[k] * cm[k][j] * root_coords[j] for k in range(n) for j in range(n))


@dataclass
class AdmissibilityReport:
    admissible: bool
    conditions: dict[str, bool]
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"admissible": self.admissible, "conditions": self.conditions, "details": self.details}


def admissible_check(pair: SatakePair, star: StarDatum | None = None) -> AdmissibilityReport:
    """Conditions (1)-(3) of admissibility, w.r.t. the datum or its star datum."""
    cm = star.circ_cartan_matrix if star is not None else pair.datum.cartan.cartan_matrix
    n = len(cm)
    black = sorted(pair.black)
    tau = pair.tau
    cond1 = {tau[j] for j in black} == set(black)
    word = longest_word(cm, black)
    cond2 = True
    for j in black:
        img = apply_word_roots(cm, word, tuple(int(k == j) for k in range(n)))
        if tuple(-x for x in img) != tuple(int(k == tau[j]) for k in range(n)):
            cond2 = False
    coroots = positive_roots_coords(transpose(cm), black)
    two_rho_vee = tuple(sum(r[k] for r in coroots) for k in range(n))
    cond3 = True
    bad = []
    for j in range(n):
        if j in pair.black or tau[j] != j:
            continue
        val = coroot_pairing(cm, two_rho_vee, tuple(int(k == j) for k in range(n)))
        if val % 2:
            cond3 = False
            bad.append(j)
    conds = {"tau_preserves_black": cond1, "tau_is_minus_w_black": cond2, "rho_vee_integral": cond3}
    return AdmissibilityReport(
        all(conds.values()),
        conds,
        {"two_rho_black_vee": list(two_rho_vee), "failing_white_nodes": bad,
         "cartan_matrix": [list(r) for r in cm], "type": identify_type(cm) if _connected(cm) else None},
    )


# ---------------------------------------------------------------------------
# Satake catalog (real rank one)
# ---------------------------------------------------------------------------

SATAKE_NAMES = ("AI1", "AII3", "AIII11", "AIV", "BII", "CII", "DII", "FII")


def satake(name: str, n: int | None = None, lattice: str = "simply_connected") -> SatakePair:
    """Real rank one Satake pairs by their catalog names (0-indexed nodes)."""
    key = name.upper().replace("_", "")
    make = simply_connected if lattice == "simply_connected" else adjoint
    if key == "AI1":
        d = make(cartan_type("A", 1))
        return SatakePair(d, frozenset(), (0,), "AI1")
    if key == "AII3":
        d = make(cartan_type("A", 3))
        return SatakePair(d, frozenset({0, 2}), (0, 1, 2), "AII3")
    if key == "AIII11":
        d = make(product_datum(cartan_type("A", 1), cartan_type("A", 1)))
        return SatakePair(d, frozenset(), (1, 0), "AIII11")
    if key == "AIV":
        n = 2 if n is None else n
        if n < 2:
            raise ValueError("AIV needs n >= 2")
        d = make(cartan_type("A", n))
        tau = tuple(n - 1 - k if k in (0, n - 1) else k for k in range(n))
        return SatakePair(d, frozenset(range(1, n - 1)), tau, f"AIV{n}")
    if key == "BII":
        n = 2 if n is None else n
        d = make(cartan_type("B", n))
        return SatakePair(d, frozenset(range(1, n)), tuple(range(n)), f"BII{n}")
    if key == "CII":
        n = 3 if n is None else n
        if n < 3:
            raise ValueError("CII needs n >= 3")
        d = make(cartan_type("C", n))
        return SatakePair(d, frozenset(k for k in range(n) if k != 1), tuple(range(n)), f"CII{n}")
    if key == "DII":
        n = 4 if n is None else n
        if n < 4:
            raise ValueError("DII needs n >= 4")
        d = make(cartan_type("D", n))
        tau = list(range(n))
        if n % 2 == 0:
            # black part D_{n-1} has odd rank, so -w_bullet swaps the fork
            tau[n - 2], tau[n - 1] = n - 1, n - 2
        return SatakePair(d, frozenset(range(1, n)), tuple(tau), f"DII{n}")
    if key == "FII":
        d = make(cartan_type("F", 4))
        return SatakePair(d, frozenset({0, 1, 2}), (0, 1, 2, 3), "FII")
    raise ValueError(f"unknown Satake type {name!r}")


def b2_remark_pair() -> SatakePair:
    """B2 with the short node black and tau = id."""
    d = simply_connected(cartan_type("B", 2))
    return SatakePair(d, frozenset({1}), (0, 1), "B2-remark")


def frobenius_side_condition(pair: SatakePair) -> dict[int, bool]:
    """For white ``i`` with ``tau i = i != w_bullet i``: is ``w_bullet(i') - i'`` not a root?"""
    cm = pair.datum.cartan.cartan_matrix
    roots = set(positive_roots_coords(cm))
    roots |= {tuple(-x for x in r) for r in roots}
    out = {}
    for i in pair.white:
        if pair.tau[i] != i:
            continue
        a = pair.simple(i)
        wa = pair.w_black_roots(a)
        if wa == a:
            continue
        diff = tuple(x - y for x, y in zip(wa, a))
        out[i] = diff not in roots
    return out


# ---------------------------------------------------------------------------
# iota weight lattice
# ---------------------------------------------------------------------------

class IWeightLattice:
    """``X_i = X / X_breve`` with ``X_breve = {lam - theta(lam)}``, and ``Y^i``."""

    def __init__(self, pair: SatakePair):
        self.pair = pair
        r = pair.datum.rank_x
        th = pair.theta_x
        gens = []
        for k in range(r):
            e = tuple(int(j == k) for j in range(r))
            te = mat_vec(th, e)
            gens.append(tuple(a - b for a, b in zip(e, te)))
        self.breve_generators = gens
        self.breve = Lattice(gens, r)

    @property
    def breve_basis(self):
        return self.breve.basis

    def reduce(self, lam: Sequence[int]) -> Vec:
        return self.breve.reduce(lam)

    def same_class(self, a: Sequence[int], b: Sequence[int]) -> bool:
        return self.reduce(a) == self.reduce(b)

    def in_breve(self, lam: Sequence[int]) -> bool:
        return tuple(lam) in self.breve

    def parity_is_class_invariant(self, i: int) -> bool:
        return all(self.pair.datum.pairing(i, g) % 2 == 0 for g in self.breve_generators)

    def in_y_iota(self, mu: Sequence[int]) -> bool:
        return mat_vec(self.pair.theta_y, mu) == tuple(mu)


def istar_membership(lattice: IWeightLattice, star: StarDatum, lam: Sequence[int]) -> dict:
    """``lam in X*`` and whether its class lies in ``X*_i``.

    Under the standing assumption ``X_breve* = X* cap X_breve`` the class test
    reduces to the representative test (the class is read modulo ``X_breve*``).
    """
    inx = star.contains(lam)
    return {"in_xstar": inx, "class_in_xstar_iota": inx, "class": list(lattice.reduce(lam))}


def box(r: int, radius: int):
    return itertools.product(range(-radius, radius + 1), repeat=r)


@dataclass
class BoxReport:
    ok: bool
    checked: int
    inconclusive: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"ok": self.ok, "checked": self.checked,
                "inconclusive": [list(x) for x in self.inconclusive],
                "failures": [list(x) for x in self.failures]}


def breve_equality_check(pair: SatakePair, star: StarDatum, box_radius: int) -> BoxReport:
    """Brute-force ``X* cap X_breve subseteq X_breve*`` inside a coordinate box."""
    lat = IWeightLattice(pair)
    r = pair.datum.rank_x
    witnesses = {}
    for mu in box(r, box_radius + star.l):
        if star.contains(mu):
            diff = tuple(a - b for a, b in zip(mu, pair.theta(mu)))
            witnesses.setdefault(diff, mu)
    checked = 0
    inconclusive = []
    failures = []
    for x in box(r, box_radius):
        if star.contains(x) and lat.in_breve(x):
            checked += 1
            if x not in witnesses:
                inconclusive.append(x)
    # the reverse inclusion X_breve* subseteq X* cap X_breve is checked on the witnesses
    for diff in witnesses:
        if max(abs(c) for c in diff) <= box_radius:
            if not (star.contains(diff) and lat.in_breve(diff)):
                failures.append(diff)
    return BoxReport(not inconclusive and not failures, checked, inconclusive, failures)


def theta_stability_check(star: StarDatum, pair: SatakePair, box_radius: int) -> BoxReport:
    """``theta(X* cap box) subseteq X*``."""
    checked = 0
    failures = []
    for lam in box(pair.datum.rank_x, box_radius):
        if star.contains(lam):
            checked += 1
            if not star.contains(pair.theta(lam)):
                failures.append(lam)
    return BoxReport(not failures, checked, [], failures)
