"""lambda-representation generators, L-generators and subscript tables.

``L(i,j)`` is ``|i><j| + |j><i|``, ``Lh(i,j)`` is ``-i|i><j| + i|j><i|`` and
``d(k,l)`` is ``|k><k| - |l><l|``; indices are 1-based with ``i < j``.
The L-generators ``L^eps_{omega,alpha} = |omega><omega+alpha| +
(-1)^(1+eps) |omega+alpha><omega|`` bridge this basis and the spinors.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

import numpy as np
import sympy

from .gauss import Gauss, I
from .spinor import BitString, Spinor

KINDS = ("L", "Lh", "d")


def width_for(dim: int) -> int:
    """Number of qubits needed to index ``dim`` levels (at least one)."""
    if dim < 2:
        raise ValueError(f"dimension must be >= 2, got {dim}")
    return max(1, (dim - 1).bit_length())


@dataclass(frozen=True)
class LambdaGen:
    kind: str
    i: int
    j: int
    dim: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if not 1 <= self.i < self.j <= self.dim:
            raise ValueError(f"need 1 <= i < j <= {self.dim}, got ({self.i},{self.j})")

    def sort_key(self):
        return (KINDS.index(self.kind), self.i, self.j)

    @property
    def label(self) -> int:
        """Binary-partitioning label ``(i-1) xor (j-1)``; zero for ``d``."""
        return 0 if self.kind == "d" else (self.i - 1) ^ (self.j - 1)

    def __str__(self):
        return f"{self.kind}({self.i},{self.j})"

    def with_dim(self, dim: int) -> "LambdaGen":
        return LambdaGen(self.kind, self.i, self.j, dim)


def canonical(kind: str, i: int, j: int, dim: int) -> tuple[int, Optional[LambdaGen]]:
    """Normalize arbitrary subscripts: returns ``(sign, gen)``, gen None for zero."""
    if i == j:
        if kind == "L":
            raise ValueError("L(i,i) is a projector, not a generator")
        return 0, None
    if i < j:
        return 1, LambdaGen(kind, i, j, dim)
    return (1 if kind == "L" else -1), LambdaGen(kind, j, i, dim)


def to_matrix(g: LambdaGen) -> np.ndarray:
    m = np.zeros((g.dim, g.dim), dtype=complex)
    a, b = g.i - 1, g.j - 1
    if g.kind == "L":
        m[a, b] = m[b, a] = 1
    elif g.kind == "Lh":
        m[a, b], m[b, a] = -1j, 1j
    else:
        m[a, a], m[b, b] = 1, -1
    return m


def _combine(terms, key=lambda g: g.sort_key()):
    acc = defaultdict(Gauss)
    for c, g in terms:
        if g is not None and c:
            acc[g] = acc[g] + c
    return sorted(((c, g) for g, c in acc.items() if c), key=lambda t: key(t[1]))


def _d(a, b):
    return 1 if a == b else 0


def _raw_commutator(a: LambdaGen, b: LambdaGen):
    """Terms ``(coef, kind, x, y)`` of ``[a, b]`` for distinct pairs or d's."""
    i, j, k, l = a.i, a.j, b.i, b.j
    if a.kind == "d" and b.kind == "d":
        return []
    if a.kind == "d":
        return [(-c, kd, x, y) for c, kd, x, y in _raw_commutator(b, a)]
    if b.kind == "d":
        if a.kind == "L":
            return [(I * (-_d(i, k) + _d(i, l) + _d(j, k) - _d(j, l)), "Lh", i, j)]
        return [(I * (_d(i, k) - _d(i, l) - _d(j, k) + _d(j, l)), "L", i, j)]
    if a.kind == "L" and b.kind == "L":
        return [(I * _d(j, l), "Lh", i, k), (I * _d(j, k), "Lh", i, l),
                (I * _d(i, l), "Lh", j, k), (I * _d(i, k), "Lh", j, l)]
    if a.kind == "L" and b.kind == "Lh":
        return [(I * _d(j, l), "L", i, k), (-I * _d(j, k), "L", i, l),
                (I * _d(i, l), "L", j, k), (-I * _d(i, k), "L", j, l)]
    if a.kind == "Lh" and b.kind == "L":
        return [(-c, kd, x, y) for c, kd, x, y in _raw_commutator(b, a)]
    return [(I * _d(j, l), "Lh", i, k), (-I * _d(j, k), "Lh", i, l),
            (-I * _d(i, l), "Lh", j, k), (I * _d(i, k), "Lh", j, l)]


def lambda_commutator(a: LambdaGen, b: LambdaGen) -> list[tuple[Gauss, LambdaGen]]:
    """``[a, b]`` as an exact combination of lambda-generators."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    if a.kind != "d" and b.kind != "d" and (a.i, a.j) == (b.i, b.j):
        if a.kind == b.kind:
            return []
        c = Gauss.of(2) * I
        return [(c if a.kind == "L" else -c, LambdaGen("d", a.i, a.j, a.dim))]
    out = []
    for c, kind, x, y in _raw_commutator(a, b):
        if not c:
            continue
        sign, g = canonical(kind, x, y, a.dim)
        if g is not None:
            out.append((c * sign, g))
    return _combine(out)


def split_d(g: LambdaGen) -> list[tuple[int, LambdaGen]]:
    """Express ``d(i,j)`` in the ``d(1,l)`` basis."""
    if g.kind != "d" or g.i == 1:
        return [(1, g)]
    return [(1, LambdaGen("d", 1, g.j, g.dim)), (-1, LambdaGen("d", 1, g.i, g.dim))]


def hermitian_bracket(a: LambdaGen, b: LambdaGen) -> list[tuple[Fraction, LambdaGen]]:
    """``-i[a, b]``, real, with diagonal terms in the ``d(1,l)`` basis."""
    terms = []
    for c, g in lambda_commutator(a, b):
        for s, h in split_d(g):
            terms.append((c * (-I) * s, h))
    return [(c.real(), g) for c, g in _combine(terms)]


def diagonal_to_d(diag: Iterable, dim: int) -> list[tuple[object, LambdaGen]]:
    """Traceless diagonal vector as a combination of ``d(1,l)``."""
    diag = list(diag)
    if sum(diag):
        raise ValueError("diagonal part is not traceless")
    return [(-diag[l], LambdaGen("d", 1, l + 1, dim)) for l in range(1, dim) if diag[l]]


# L-generators ---------------------------------------------------------------


@dataclass(frozen=True)
class LGen:
    """``L^eps_{omega,alpha}``; ``alpha = 0`` gives the diagonal element ``2|omega><omega|``
    for ``eps = 1`` and zero for ``eps = 0``."""

    epsilon: int
    omega: BitString
    alpha: BitString

    def __post_init__(self):
        if self.epsilon not in (0, 1):
            raise ValueError("epsilon must be 0 or 1")
        if self.omega.width != self.alpha.width:
            raise ValueError("omega and alpha must have equal width")

    @property
    def width(self):
        return self.omega.width

    def sort_key(self):
        return (self.alpha.value, self.epsilon, self.omega.value)

    def __str__(self):
        return f"L^{self.epsilon}_{{{self.omega},{self.alpha}}}"


def lgen_canonical(g: LGen) -> tuple[int, Optional[LGen]]:
    """Rewrite with ``omega <= omega+alpha``; returns ``(sign, gen)``."""
    if not g.alpha:
        return (1, g) if g.epsilon == 1 else (0, None)
    other = g.omega ^ g.alpha
    if g.omega.value < other.value:
        return 1, g
    return (1 if g.epsilon == 1 else -1), LGen(g.epsilon, other, g.alpha)


def lgen_matrix(g: LGen) -> np.ndarray:
    n = 1 << g.width
    m = np.zeros((n, n), dtype=complex)
    w, v = g.omega.value, (g.omega ^ g.alpha).value
    m[w, v] += 1
    m[v, w] += (-1) ** (1 + g.epsilon)
    return m


def _lcombine(terms):
    out = []
    for c, g in terms:
        if not c:
            continue
        s, h = lgen_canonical(g)
        if h is not None:
            out.append((Gauss.of(c) * s, h))
    return _combine(out)


def _lgen_product_terms(a: LGen, b: LGen, eps: int):
    # both brackets share these coefficients; only the superscript differs
    e, s = a.epsilon, b.epsilon
    w, al, t, be = a.omega, a.alpha, b.omega, b.alpha
    sgn_s = (-1) ** s
    c1 = _d(w ^ al, t) - sgn_s * _d(w ^ al, t ^ be)
    c2 = -((-1) ** e) * (_d(w, t) - sgn_s * _d(w, t ^ be))
    return _lcombine([(c1, LGen(eps, w, al ^ be)), (c2, LGen(eps, w ^ al, al ^ be))])


def lgen_commutator(a: LGen, b: LGen) -> list[tuple[Gauss, LGen]]:
    """``[a, b]``.  The sign pattern inside the delta brackets matches the
    anticommutator; a plus sign there disagrees with the matrix product."""
    return _lgen_product_terms(a, b, (a.epsilon + b.epsilon) % 2)


def lgen_anticommutator(a: LGen, b: LGen) -> list[tuple[Gauss, LGen]]:
    return _lgen_product_terms(a, b, (1 + a.epsilon + b.epsilon) % 2)


def lambda_to_spinors(g: LGen) -> list[tuple[Fraction, Spinor]]:
    """Expand an L-generator over bare spinors ``S^zeta_alpha`` (phase 0)."""
    p = g.width
    want = (1 + g.epsilon) % 2
    scale = Fraction(1, 1 << (p - 1))
    out = []
    for z in range(1 << p):
        zeta = BitString(z, p)
        if zeta.dot2(g.alpha) == want:
            out.append((scale * (-1) ** zeta.dot2(g.omega), Spinor(zeta, g.alpha)))
    return out


def spinor_to_lambdas(s: Spinor) -> list[tuple[Gauss, LGen]]:
    """Expand ``i^k S^zeta_alpha`` over canonical L-generators."""
    p = s.width
    eps = (1 + s.zeta.dot2(s.alpha)) % 2
    half = Fraction(1, 2)
    phase = Gauss.i_pow(s.phase)
    terms = []
    for w in range(1 << p):
        omega = BitString(w, p)
        terms.append((phase * (half * (-1) ** s.zeta.dot2(omega)), LGen(eps, omega, s.alpha)))
    return _lcombine(terms)


def lgens_to_lambda(terms: Iterable[tuple[object, LGen]], dim: Optional[int] = None
                    ) -> list[tuple[Gauss, LambdaGen]]:
    """Rewrite a traceless combination of L-generators in the lambda basis.

    Diagonal L-generators are gathered into ``d(1,l)`` terms.  Levels beyond
    ``dim`` must carry zero weight.
    """
    terms = list(terms)
    if not terms:
        return []
    n = 1 << terms[0][1].width
    dim = n if dim is None else dim
    diag = [Gauss() for _ in range(n)]
    out = []
    for c, g in terms:
        c = Gauss.of(c)
        s, g = lgen_canonical(g)
        if g is None:
            continue
        c = c * s
        if not g.alpha:
            diag[g.omega.value] += c * 2
            continue
        i, j = g.omega.value + 1, (g.omega ^ g.alpha).value + 1
        if j > dim:
            raise ValueError(f"term {g} leaves the first {dim} levels")
        if g.epsilon == 1:
            out.append((c, LambdaGen("L", i, j, dim)))
        else:
            out.append((c * I, LambdaGen("Lh", i, j, dim)))
    if any(diag[dim:]):
        raise ValueError(f"diagonal weight beyond level {dim}")
    out.extend((c, g) for c, g in diagonal_to_d(diag[:dim], dim))
    return _combine(out)


def lambda_to_lgens(g: LambdaGen) -> list[tuple[Gauss, LGen]]:
    """Inverse direction: a lambda-generator of su(2^p) as L-generators."""
    p = width_for(g.dim)
    if g.dim != 1 << p:
        raise ValueError("L-generators need a power-of-two dimension")
    w, v = BitString(g.i - 1, p), BitString(g.j - 1, p)
    if g.kind == "L":
        return [(Gauss.of(1), LGen(1, w, w ^ v))]
    if g.kind == "Lh":
        return [(-I, LGen(0, w, w ^ v))]
    half = Gauss.of(Fraction(1, 2))
    zero = BitString.zero(p)
    return [(half, LGen(1, w, zero)), (-half, LGen(1, v, zero))]


# Gell-Mann style bases -------------------------------------------------------


@dataclass(frozen=True)
class ScaledSum:
    """``scale * sum(c * g)`` with a symbolic scale such as ``1/sqrt(3)``."""

    name: str
    scale: sympy.Expr
    terms: tuple[tuple[int, LambdaGen], ...]

    def to_matrix(self) -> np.ndarray:
        return float(self.scale) * sum(c * to_matrix(g) for c, g in self.terms)


def orthogonal_diagonal_basis(dim: int) -> list[ScaledSum]:
    """``sqrt(2/(l(l-1))) * sum_{i<l} d(i,l)`` for ``l = 2..dim``."""
    out = []
    for l in range(2, dim + 1):
        scale = sympy.sqrt(sympy.Rational(2, l * (l - 1)))
        out.append(ScaledSum(f"D{l}", scale, tuple((1, LambdaGen("d", i, l, dim)) for i in range(1, l))))
    return out


def gellmann_basis() -> list[ScaledSum]:
    one = sympy.Integer(1)
    mats = [
        ("mu1", one, ((1, LambdaGen("L", 1, 2, 3)),)),
        ("mu2", one, ((1, LambdaGen("Lh", 1, 2, 3)),)),
        ("mu3", one, ((1, LambdaGen("d", 1, 2, 3)),)),
        ("mu4", one, ((1, LambdaGen("L", 1, 3, 3)),)),
        ("mu5", one, ((1, LambdaGen("Lh", 1, 3, 3)),)),
        ("mu6", one, ((1, LambdaGen("L", 2, 3, 3)),)),
        ("mu7", one, ((1, LambdaGen("Lh", 2, 3, 3)),)),
        ("mu8", 1 / sympy.sqrt(3), ((1, LambdaGen("d", 1, 3, 3)), (1, LambdaGen("d", 2, 3, 3)))),
    ]
    return [ScaledSum(*m) for m in mats]


# subscript tables ------------------------------------------------------------

Pair = tuple[int, int]
DISJOINT = "disjoint"
SAME = "same"


def _check_pair(a: Pair) -> Pair:
    i, j = a
    if i == j or i < 1 or j < 1:
        raise ValueError(f"malformed subscript pair {a}")
    return (i, j) if i < j else (j, i)


def subscript_multiply(a: Pair, b: Pair) -> Union[Pair, str]:
    """Product of subscript pairs: the symmetric difference when exactly one index is shared."""
    a, b = _check_pair(a), _check_pair(b)
    if a == b:
        return SAME
    common = set(a) & set(b)
    if not common:
        return DISJOINT
    return tuple(sorted(set(a) ^ set(b)))


def pair_label(a: Pair) -> int:
    i, j = _check_pair(a)
    return (i - 1) ^ (j - 1)


@dataclass(frozen=True)
class SubscriptTable:
    dim: int
    rows: tuple[tuple[Pair, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(sorted(_check_pair(x) for x in row)) for row in self.rows)
        seen = set()
        for row in rows:
            used = [k for x in row for k in x]
            if len(used) != len(set(used)):
                raise ValueError(f"row {row} repeats an index")
            if max(used, default=0) > self.dim:
                raise ValueError(f"row {row} exceeds dimension {self.dim}")
            if seen & set(row):
                raise ValueError(f"row {row} repeats a pair of an earlier row")
            seen |= set(row)
        object.__setattr__(self, "rows", rows)

    def __eq__(self, other):
        if not isinstance(other, SubscriptTable):
            return NotImplemented
        return self.dim == other.dim and set(self.rows) == set(other.rows)

    def __hash__(self):
        return hash((self.dim, frozenset(self.rows)))

    @property
    def complete(self) -> bool:
        return sum(len(r) for r in self.rows) == self.dim * (self.dim - 1) // 2

    def row_of(self, pair: Pair) -> Optional[int]:
        pair = _check_pair(pair)
        for k, row in enumerate(self.rows):
            if pair in row:
                return k
        return None

    def __str__(self):
        return "\n".join(" ".join(f"({i},{j})" for i, j in row) for row in self.rows)


@dataclass
class TableReport:
    closed: bool
    violations: list[tuple[int, int, tuple[Pair, ...]]]


def binary_table(dim: int) -> SubscriptTable:
    """Rows grouped by the label ``(i-1) xor (j-1)``."""
    p = width_for(dim)
    rows = []
    for z in range(1, 1 << p):
        row = tuple((i, j) for i in range(1, dim + 1) for j in range(i + 1, dim + 1)
                    if (i - 1) ^ (j - 1) == z)
        if row:
            rows.append(row)
    return SubscriptTable(dim, tuple(rows))


def _products(r1, r2) -> set:
    out = set()
    for x in r1:
        for y in r2:
            m = subscript_multiply(x, y)
            if m not in (DISJOINT, SAME):
                out.add(m)
    return out


def _valid_row(pairs) -> bool:
    used = [k for x in pairs for k in x]
    return len(used) == len(set(used))


def table_closure_check(t: SubscriptTable) -> TableReport:
    """Every cross-row product set must fit inside one single other row.

    For a partial table a product set that is not yet listed is accepted
    when it could still become a row of its own.
    """
    violations = []
    for a in range(len(t.rows)):
        for b in range(a + 1, len(t.rows)):
            prods = _products(t.rows[a], t.rows[b])
            if not prods:
                continue
            homes = {t.row_of(x) for x in prods}
            if len(homes) == 1 and None not in homes and homes.isdisjoint({a, b}):
                continue
            if not t.complete and homes == {None} and _valid_row(prods):
                continue
            violations.append((a, b, tuple(sorted(prods))))
    return TableReport(not violations, violations)


def complete_table(dim: int, rows: Iterable[Iterable[Pair]]) -> SubscriptTable:
    """Induce the remaining rows from products of the given (independent) rows."""
    rows = [tuple(sorted(_check_pair(x) for x in r)) for r in rows]
    changed = True
    while changed:
        changed = False
        for a in range(len(rows)):
            for b in range(a + 1, len(rows)):
                prods = _products(rows[a], rows[b])
                if not prods:
                    continue
                placed = [r for r in rows if set(r) & prods]
                if placed:
                    continue
                if not _valid_row(prods):
                    raise TableClosureError(rows[a], rows[b], tuple(sorted(prods)))
                rows.append(tuple(sorted(prods)))
                changed = True
    table = SubscriptTable(dim, tuple(rows))
    report = table_closure_check(table)
    if not report.closed:
        a, b, prods = report.violations[0]
        raise TableClosureError(table.rows[a], table.rows[b], prods)
    return table


class TableClosureError(ValueError):
    def __init__(self, row_a, row_b, products):
        self.row_a, self.row_b, self.products = row_a, row_b, products
        super().__init__(f"rows {row_a} and {row_b} multiply into {products}, not one row")


class InteractionError(ValueError):
    def __init__(self, first: Pair, second: Pair):
        self.first, self.second = first, second
        super().__init__(f"interaction pairs {first} and {second} carry different labels")


def glue_tables(t1: SubscriptTable, t2: SubscriptTable, interaction: Iterable[Pair]) -> SubscriptTable:
    """Glue two closed tables on disjoint index sets ``1..n`` and ``n+1..2n``.

    Beginning rows merge rows of equal binary label; the interaction row must
    pair the two halves with one common label.
    """
    if t1.dim != t2.dim:
        raise ValueError("tables must have equal dimension")
    n = t1.dim
    interaction = [_check_pair(x) for x in interaction]
    for x in interaction:
        if not (x[0] <= n < x[1] <= 2 * n):
            raise ValueError(f"interaction pair {x} does not join the two halves")
    for x in interaction[1:]:
        if pair_label(x) != pair_label(interaction[0]):
            raise InteractionError(interaction[0], x)
    lower, upper = {}, {}
    for row in t1.rows:
        lower.setdefault(pair_label(row[0]), []).extend(row)
    for row in t2.rows:
        upper.setdefault(pair_label(row[0]), []).extend((i + n, j + n) for i, j in row)
    beginning = [tuple(lower.get(z, [])) + tuple(upper.get(z, [])) for z in sorted(set(lower) | set(upper))]
    return complete_table(2 * n, beginning + [tuple(interaction)])
