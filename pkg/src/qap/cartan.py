"""Cartan subalgebras of su(2^p) spanned by spinors, and Cartan selections.

Neighbors of a Cartan subalgebra A come from its partition: every abelian
subspace X extends to ``X + {a in A : [a, X] = 0}``.  Breadth-first search
from the intrinsic center lists all spinor Cartan subalgebras shell by shell.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Optional, Sequence, Union

from .linear import Gen, Span
from .partition import (QuotientAlgebra, Subspace, _bracket_any, _dense_contains, _nonzero,
                        build_qap)
from .spinor import BitString, Spinor, commutes


@dataclass(frozen=True)
class CartanSubalgebra:
    basis: frozenset  # hermitian spinors

    def __post_init__(self):
        spins = list(self.basis)
        if not spins:
            raise ValueError("empty Cartan subalgebra")
        p = spins[0].width
        if len(spins) != (1 << p) - 1:
            raise ValueError(f"need {(1 << p) - 1} spinors, got {len(spins)}")
        for i, a in enumerate(spins):
            if not a.is_hermitian or (not a.zeta and not a.alpha):
                raise ValueError(f"{a} is not a non-identity hermitian spinor")
            for b in spins[i + 1:]:
                if not commutes(a, b):
                    raise ValueError(f"{a.pauli()} and {b.pauli()} anticommute")

    @classmethod
    def of(cls, spinors: Iterable[Union[Spinor, str]]) -> "CartanSubalgebra":
        out = []
        for s in spinors:
            if isinstance(s, str):
                s = Spinor.from_pauli(s) if not s.startswith("S[") else Spinor.parse(s)
            out.append(s.hermitian_form())
        return cls(frozenset(out))

    @classmethod
    def intrinsic(cls, p: int) -> "CartanSubalgebra":
        return cls(frozenset(Spinor.hermitized(BitString(z, p), BitString.zero(p)) for z in range(1, 1 << p)))

    @property
    def p(self) -> int:
        return next(iter(self.basis)).width

    def sorted(self) -> list[Spinor]:
        return sorted(self.basis, key=lambda s: s.sort_key())

    def to_subspace(self) -> Subspace:
        return Subspace(BitString.zero(self.p), False, [Gen.atom(s) for s in self.sorted()])

    def words(self) -> list[str]:
        return [s.pauli() for s in self.sorted()]

    def key(self) -> frozenset:
        return frozenset(_vec(s) for s in self.basis)


def _vec(s: Spinor) -> int:
    return (s.zeta.value << s.width) | s.alpha.value


def _spinor(v: int, p: int) -> Spinor:
    return Spinor.hermitized(BitString(v >> p, p), BitString(v & ((1 << p) - 1), p))


def extend_neighbors(a: CartanSubalgebra) -> list[CartanSubalgebra]:
    """Neighbors of ``a`` read off from its quotient algebra partition."""
    q = build_qap(a.to_subspace(), verify=False)
    out, seen = [], set()
    for z in q.labels():
        for side in q.pairs[z]:
            xs = side.atoms()
            keep = [c for c in a.basis if all(commutes(c, x) for x in xs)]
            nb = CartanSubalgebra(frozenset(xs) | frozenset(keep))
            if nb.key() not in seen:
                seen.add(nb.key())
                out.append(nb)
    return out


def _symp(u: int, v: int, p: int) -> int:
    m = (1 << p) - 1
    return (((u >> p) & v & m).bit_count() + (u & m & (v >> p)).bit_count()) & 1


def neighbor_keys(key: frozenset, p: int) -> list[frozenset]:
    """Same neighbors as ``extend_neighbors`` computed on symplectic bit-vectors.

    The group ``G = key + {0}`` splits every coset ``sG`` into the halves
    ``<s, g> = 0`` and ``<s, g> = 1``.
    """
    group = [0] + sorted(key)
    seen_cosets = set()
    out = []
    for s in range(1, 1 << (2 * p)):
        if s in key:
            continue
        coset = frozenset(s ^ g for g in group)
        if coset in seen_cosets:
            continue
        seen_cosets.add(coset)
        keep = frozenset(g for g in key if not _symp(s, g, p))
        for bit in (0, 1):
            half = frozenset(s ^ g for g in group if _symp(s, g, p) == bit)
            out.append(half | keep)
    return out


@dataclass
class ShellEnumeration:
    p: int
    shells: list  # list of lists of CartanSubalgebra

    @property
    def counts(self) -> list[int]:
        return [len(s) for s in self.shells]

    @property
    def total(self) -> int:
        return sum(self.counts)

    def all(self) -> list[CartanSubalgebra]:
        return [c for s in self.shells for c in s]


def enumerate_cartans(p: int, method: str = "symplectic") -> ShellEnumeration:
    """Breadth-first shells from the intrinsic center.

    ``method="qap"`` builds every partition explicitly; ``"symplectic"`` uses
    ``neighbor_keys`` and is much faster for ``p = 4``.
    """
    if p < 1:
        raise ValueError("p must be positive")
    start = CartanSubalgebra.intrinsic(p)
    seen = {start.key()}
    shells = [[start]]
    while True:
        nxt = []
        for a in shells[-1]:
            if method == "qap":
                keys = [(n.key(), n) for n in extend_neighbors(a)]
            elif method == "symplectic":
                keys = [(k, None) for k in neighbor_keys(a.key(), p)]
            else:
                raise ValueError(f"unknown method {method!r}")
            for k, n in keys:
                if k not in seen:
                    seen.add(k)
                    nxt.append(n if n is not None else CartanSubalgebra(frozenset(_spinor(v, p) for v in k)))
        if not nxt:
            return ShellEnumeration(p, shells)
        shells.append(nxt)


def cartan_count(p: int) -> int:
    """Closed form ``prod_{k=1..p} (2^k + 1)`` for the number of spinor Cartan subalgebras."""
    out = 1
    for k in range(1, p + 1):
        out *= (1 << k) + 1
    return out


# selections ------------------------------------------------------------------


class DependentLabels(ValueError):
    pass


class ContradictoryPicks(ValueError):
    pass


Pick = tuple  # (label, hat)


@dataclass
class CartanSelection:
    """Choice of one side per label; ``hat[z]`` is True when ``What_z`` is chosen."""

    q: QuotientAlgebra
    hat: dict

    def f(self, z: BitString) -> int:
        """``f(z) = 1 + s(z)``; linear in ``z`` for every valid selection."""
        return 0 if self.hat[z] else 1

    def chosen(self) -> list[Subspace]:
        return [self.q.subspace(z, self.hat[z]) for z in self.q.labels()]

    def complement(self) -> list[Subspace]:
        return [self.q.subspace(z, not self.hat[z]) for z in self.q.labels()]

    def describe(self) -> str:
        return ", ".join(self.q.subspace(z, self.hat[z]).name for z in self.q.labels())


def _as_label(z, p: int) -> BitString:
    if isinstance(z, BitString):
        return z
    if isinstance(z, str):
        return BitString.from_str(z)
    return BitString(int(z), p)


def _rank(vals: Iterable[int]) -> int:
    rows: list[int] = []
    for v in vals:
        for r in rows:
            v = min(v, v ^ r)
        if v:
            rows.append(v)
    return len(rows)


def _landing(q: QuotientAlgebra, a: Subspace, b: Subspace, z: BitString) -> Optional[bool]:
    """Side (hat flag) of label ``z`` that contains ``[a, b]``; None if it vanishes."""
    w, h = q.pairs[z]
    for x in a.basis:
        for y in b.basis:
            r = _bracket_any(x, y)
            if _nonzero(r):
                if w.contains(r):
                    return False
                if h.contains(r):
                    return True
                raise ValueError(f"[{a.name}, {b.name}] leaves label {z}")
    return None


def resolve_selection(q: QuotientAlgebra, picks: Iterable[Pick]) -> CartanSelection:
    """Complete a partial choice of sides by closure under brackets."""
    p = q.p
    known: dict = {}
    for z, hat in picks:
        z = _as_label(z, p)
        if z not in q.pairs:
            raise ValueError(f"label {z} is not in the partition")
        if known.get(z, hat) != hat:
            raise ContradictoryPicks(f"both sides of {z} picked")
        known[z] = bool(hat)
    if _rank(z.value for z in known) < p:
        raise DependentLabels(f"picked labels {[str(z) for z in known]} do not span {p} bits")
    changed = True
    while changed:
        changed = False
        for a, b in product(list(known), repeat=2):
            if a.value >= b.value:
                continue
            c = a ^ b
            side = _landing(q, q.subspace(a, known[a]), q.subspace(b, known[b]), c)
            if side is None:
                continue
            if c in known:
                if known[c] != side:
                    raise ContradictoryPicks(
                        f"{q.subspace(a, known[a]).name} and {q.subspace(b, known[b]).name} force "
                        f"{q.subspace(c, side).name}, but {q.subspace(c, known[c]).name} was picked")
                continue
            known[c] = side
            changed = True
    missing = [z for z in q.labels() if z not in known]
    if missing:
        raise ValueError(f"labels {[str(z) for z in missing]} left undetermined")
    return CartanSelection(q, {z: known[z] for z in q.labels()})


def unit_labels(p: int) -> list[BitString]:
    return [BitString(1 << (p - 1 - k), p) for k in range(p)]


def enumerate_selections(q: QuotientAlgebra) -> list[CartanSelection]:
    """All ``2^p`` selections, indexed by the sides picked on single-bit labels."""
    units = unit_labels(q.p)
    return [resolve_selection(q, zip(units, bits)) for bits in product((False, True), repeat=q.p)]


def parse_selection(text: str, p: int) -> list[Pick]:
    """``"001:W,010:W,100:hat"`` -> picks."""
    picks = []
    for part in filter(None, (x.strip() for x in text.split(","))):
        label, _, side = part.partition(":")
        side = side.strip().lower()
        if side not in ("w", "hat", "ŵ", "h"):
            raise ValueError(f"bad side in {part!r}")
        z = BitString.from_str(label.strip())
        if z.width != p:
            raise ValueError(f"label {label} does not have {p} bits")
        picks.append((z, side != "w"))
    return picks


# Cartan decomposition -----------------------------------------------------------


@dataclass
class CartanSplit:
    """``g = t + p``: ``t`` is the selected subalgebra, ``p`` holds the center and the rest."""

    selection: CartanSelection
    t: list = field(default_factory=list)
    p: list = field(default_factory=list)

    @property
    def q(self) -> QuotientAlgebra:
        return self.selection.q


@dataclass
class SplitReport:
    ok: bool
    failures: list
    type_ai: bool


def make_split(sel: CartanSelection) -> CartanSplit:
    return CartanSplit(sel, sel.chosen(), [sel.q.center] + sel.complement())


class _Target:
    """Membership test for the union of several subspaces, built once."""

    def __init__(self, subs: Sequence[Subspace]):
        gens = [g for sub in subs for g in sub.basis]
        self.span = Span(gens) if all(isinstance(g, Gen) for g in gens) else None
        self.mats = [m for sub in subs for m in sub.matrices()]

    def contains(self, r) -> bool:
        if self.span is not None and isinstance(r, Gen):
            return self.span.contains(r)
        return _dense_contains(self.mats, r.to_matrix() if isinstance(r, Gen) else r)


def verify_split(split: CartanSplit) -> SplitReport:
    """Check ``[t,t] < t``, ``[t,p] < p``, ``[p,p] < t``, trace orthogonality and type AI."""
    failures = []
    groups = {"t": split.t, "p": split.p}
    targets = {k: _Target(v) for k, v in groups.items()}
    rules = [("t", "t", "t"), ("t", "p", "p"), ("p", "p", "t")]
    for a, b, target in rules:
        for x in groups[a]:
            for y in groups[b]:
                bad = any(_nonzero(r) and not targets[target].contains(r)
                          for r in (_bracket_any(gx, gy) for gx in x.basis for gy in y.basis))
                if bad:
                    failures.append(f"[{x.name}, {y.name}] not in {target}")
    for x in split.t:
        for y in split.p:
            for gx in x.basis:
                for gy in y.basis:
                    tr = gx.trace_with(gy) if isinstance(gx, Gen) else abs((gx @ gy).trace())
                    if tr and abs(float(tr)) > 1e-10:
                        failures.append(f"Tr({x.name} {y.name}) != 0")
    return SplitReport(not failures, failures, _type_ai(split))


def _type_ai(split: CartanSplit) -> bool:
    """The center is maximal abelian in ``p``: ad(center) is injective on the other part of ``p``."""
    center = split.q.center
    others = [g for s in split.p[1:] for g in s.basis]
    if not others:
        return True
    if not all(isinstance(g, Gen) for g in others + center.basis):
        return False
    # injectivity: images of independent elements stay independent
    rows = []
    for g in others:
        v = {}
        for k, c in enumerate(center.basis):
            for a, val in g.bracket(c).terms.items():
                v[(k, a)] = val
        rows.append(v)
    return _exact_rank(rows) == len(others)


def _exact_rank(rows: list[dict]) -> int:
    piv: dict = {}
    rank = 0
    for v in rows:
        v = dict(v)
        for k in list(piv):
            if k in v and v[k]:
                c = v[k]
                for kk, vv in piv[k].items():
                    v[kk] = v.get(kk, Fraction(0)) - c * vv
        v = {k: x for k, x in v.items() if x}
        if not v:
            continue
        k0 = min(v, key=repr)
        inv = 1 / v[k0]
        v = {k: x * inv for k, x in v.items()}
        for k in piv:
            if k0 in piv[k] and piv[k][k0]:
                c = piv[k][k0]
                piv[k] = {kk: piv[k].get(kk, Fraction(0)) - c * v.get(kk, Fraction(0))
                          for kk in set(piv[k]) | set(v)}
                piv[k] = {kk: x for kk, x in piv[k].items() if x}
        piv[k0] = v
        rank += 1
    return rank
