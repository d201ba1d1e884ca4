"""Exact linear combinations of hermitian atoms and their spans.

Atoms are hermitian spinors or lambda-generators.  Coefficients are
Fractions; the bracket ``-i[a, b]`` keeps them rational.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Union

import numpy as np

from . import lambdas, spinor
from .lambdas import LambdaGen
from .spinor import Spinor

Atom = Union[Spinor, LambdaGen]


def atom_key(a: Atom):
    return a.sort_key()


def atom_bracket(a: Atom, b: Atom) -> list[tuple[Fraction, Atom]]:
    if isinstance(a, Spinor) and isinstance(b, Spinor):
        r = spinor.hermitian_bracket(a, b)
        return [] if r is None else [(Fraction(r[0]), r[1])]
    if isinstance(a, LambdaGen) and isinstance(b, LambdaGen):
        return lambdas.hermitian_bracket(a, b)
    raise TypeError("cannot mix spinor and lambda atoms")


def atom_matrix(a: Atom) -> np.ndarray:
    if isinstance(a, Spinor):
        return spinor.to_matrix(a)
    return lambdas.to_matrix(a)


def atom_trace(a: Atom, b: Atom) -> Fraction:
    """``Tr(a b)`` for two atoms of the same family."""
    if isinstance(a, Spinor):
        return Fraction(1 << a.width) if a == b else Fraction(0)
    if a.kind != b.kind:
        return Fraction(0)
    if a.kind != "d":
        return Fraction(2) if a == b else Fraction(0)
    if a.i == 1 and b.i == 1:
        return Fraction(2) if a.j == b.j else Fraction(1)
    return Fraction(int(np.trace(lambdas.to_matrix(a) @ lambdas.to_matrix(b)).real))


class Gen:
    """A real linear combination of hermitian atoms."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        for a, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[a] = c
        self.terms: dict = clean
        self._hash = None

    @classmethod
    def atom(cls, a: Atom, coef=1) -> "Gen":
        return cls({a: coef})

    @classmethod
    def from_terms(cls, pairs: Iterable[tuple[object, Atom]]) -> "Gen":
        acc: dict = {}
        for c, a in pairs:
            acc[a] = acc.get(a, Fraction(0)) + Fraction(c)
        return cls(acc)

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Atom, Fraction]]:
        return iter(sorted(self.terms.items(), key=lambda t: atom_key(t[0])))

    def __add__(self, other: "Gen") -> "Gen":
        acc = dict(self.terms)
        for a, c in other.terms.items():
            acc[a] = acc.get(a, Fraction(0)) + c
        return Gen(acc)

    def __neg__(self) -> "Gen":
        return Gen({a: -c for a, c in self.terms.items()})

    def __sub__(self, other: "Gen") -> "Gen":
        return self + (-other)

    def scale(self, c) -> "Gen":
        c = Fraction(c)
        return Gen({a: c * v for a, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, Gen) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def leading(self) -> Atom:
        return min(self.terms, key=atom_key)

    def single_atom(self) -> Optional[Atom]:
        if len(self.terms) == 1:
            (a, c), = self.terms.items()
            if c == 1:
                return a
        return None

    def bracket(self, other: "Gen") -> "Gen":
        acc: dict = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                for c, h in atom_bracket(a, b):
                    acc[h] = acc.get(h, Fraction(0)) + ca * cb * c
        return Gen(acc)

    def trace_with(self, other: "Gen") -> Fraction:
        return sum((ca * cb * atom_trace(a, b) for a, ca in self.terms.items()
                    for b, cb in other.terms.items()), Fraction(0))

    def to_matrix(self, dim: Optional[int] = None) -> np.ndarray:
        if not self.terms:
            if dim is None:
                raise ValueError("empty generator needs an explicit dimension")
            return np.zeros((dim, dim), dtype=complex)
        return sum(float(c) * atom_matrix(a) for a, c in self.terms.items())

    def __str__(self):
        a = self.single_atom()
        if a is not None:
            return _atom_text(a)
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{_atom_text(a)}" for a, c in self)

    def __repr__(self):
        return f"Gen({self})"


def _atom_text(a: Atom) -> str:
    return a.short() if isinstance(a, Spinor) else str(a)


_LAMBDA_TEXT = re.compile(r"^(L|Lh|d)\((\d+),(\d+)\)$")


def parse_atom(text: str, dim: Optional[int] = None) -> Atom:
    text = text.strip()
    if text.startswith("S["):
        s = Spinor.parse(text)
        if not s.is_hermitian:
            raise ValueError(f"atom {text!r} is not hermitian")
        return s.hermitian_form()
    m = _LAMBDA_TEXT.match(text)
    if not m:
        raise ValueError(f"cannot parse generator atom {text!r}")
    if dim is None:
        raise ValueError("lambda atoms need the algebra dimension")
    return LambdaGen(m[1], int(m[2]), int(m[3]), dim)


def parse_gen(text: str, dim: Optional[int] = None) -> Gen:
    """Inverse of ``str(Gen)``."""
    pairs = []
    for part in text.split(" + "):
        part = part.strip()
        if "*" in part and not part.startswith("S["):
            coef, atom = part.split("*", 1)
            pairs.append((Fraction(coef), parse_atom(atom, dim)))
        else:
            pairs.append((Fraction(1), parse_atom(part, dim)))
    return Gen.from_terms(pairs)


class Span:
    """Exact span kept in reduced row-echelon form over the atoms."""

    def __init__(self, gens: Iterable[Gen] = ()):
        self._rows: dict = {}
        self.basis: list[Gen] = []
        for g in gens:
            self.add(g)

    def __len__(self):
        return len(self.basis)

    def reduce(self, g: Gen) -> dict:
        v = dict(g.terms)
        for a in [a for a in v if a in self._rows]:
            c = v.get(a)
            if not c:
                continue
            for b, cb in self._rows[a].items():
                nv = v.get(b, Fraction(0)) - c * cb
                if nv:
                    v[b] = nv
                else:
                    v.pop(b, None)
        return v

    def contains(self, g: Gen) -> bool:
        return not self.reduce(g)

    __contains__ = contains

    def add(self, g: Gen) -> bool:
        """Add ``g``; returns False when it is already in the span."""
        r = self.reduce(g)
        if not r:
            return False
        piv = min(r, key=atom_key)
        inv = 1 / r[piv]
        r = {a: c * inv for a, c in r.items()}
        for row in self._rows.values():
            c = row.get(piv)
            if c:
                for b, cb in r.items():
                    nv = row.get(b, Fraction(0)) - c * cb
                    if nv:
                        row[b] = nv
                    else:
                        row.pop(b, None)
        self._rows[piv] = r
        self.basis.append(g)
        return True

    def rref(self) -> list[Gen]:
        return [Gen(self._rows[a]) for a in sorted(self._rows, key=atom_key)]

    def coordinates(self, g: Gen) -> dict:
        """Coefficients of ``g`` on the RREF rows keyed by pivot atom."""
        if self.reduce(g):
            raise ValueError(f"{g} is not in the span")
        return {a: g.terms.get(a, Fraction(0)) for a in self._rows}
