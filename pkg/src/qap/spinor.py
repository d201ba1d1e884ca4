"""Spinor generators of su(2^p) in the s-representation.

A spinor ``S^zeta_alpha`` is the tensor product of one-qubit factors
``|0><a| + (-1)^e |1><1+a|`` and is identified by two p-bit strings plus a
phase ``i^k``.  Bit strings are stored as integers whose most significant
bit is the first (leftmost) tensor slot, so that the integer value of a basis
label equals its row index in the Kronecker ordering.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import reduce
from typing import Optional

import numpy as np

MAX_WIDTH = 12


@dataclass(frozen=True, order=True)
class BitString:
    value: int
    width: int

    def __post_init__(self):
        if not 1 <= self.width <= MAX_WIDTH:
            raise ValueError(f"width must lie in 1..{MAX_WIDTH}, got {self.width}")
        if not 0 <= self.value < (1 << self.width):
            raise ValueError(f"value {self.value} does not fit in {self.width} bits")

    @classmethod
    def from_str(cls, bits: str) -> "BitString":
        if not bits or set(bits) - {"0", "1"}:
            raise ValueError(f"not a binary string: {bits!r}")
        return cls(int(bits, 2), len(bits))

    @classmethod
    def zero(cls, width: int) -> "BitString":
        return cls(0, width)

    def _check(self, other: "BitString"):
        if self.width != other.width:
            raise ValueError(f"width mismatch: {self.width} vs {other.width}")

    def __xor__(self, other: "BitString") -> "BitString":
        self._check(other)
        return BitString(self.value ^ other.value, self.width)

    __add__ = __xor__

    def dot(self, other: "BitString") -> int:
        """Full integer inner product: popcount of the bitwise AND."""
        self._check(other)
        return (self.value & other.value).bit_count()

    def dot2(self, other: "BitString") -> int:
        return self.dot(other) & 1

    def weight(self) -> int:
        return self.value.bit_count()

    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> (self.width - 1 - k)) & 1 for k in range(self.width))

    def __str__(self):
        return format(self.value, f"0{self.width}b")

    def __bool__(self):
        return self.value != 0


class Parity(Enum):
    COMMUTE = 0
    ANTICOMMUTE = 1


# one-qubit factors S^e_a, indexed [e][a]
_ONE_QUBIT = {
    (0, 0): np.array([[1, 0], [0, 1]], dtype=complex),
    (1, 0): np.array([[1, 0], [0, -1]], dtype=complex),
    (0, 1): np.array([[0, 1], [1, 0]], dtype=complex),
    (1, 1): np.array([[0, 1], [-1, 0]], dtype=complex),
}

_PAULI_BITS = {"I": (0, 0), "Z": (1, 0), "X": (0, 1), "Y": (1, 1)}

_TEXT = re.compile(r"^\s*S\[([01]+)/([01]+)\](?:\*i\^(\d+))?\s*$")


@dataclass(frozen=True)
class Spinor:
    """The operator ``i^phase * S^zeta_alpha``."""

    zeta: BitString
    alpha: BitString
    phase: int = 0

    def __post_init__(self):
        if self.zeta.width != self.alpha.width:
            raise ValueError("zeta and alpha must have equal width")
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def from_bits(cls, zeta: str, alpha: str, phase: int = 0) -> "Spinor":
        return cls(BitString.from_str(zeta), BitString.from_str(alpha), phase)

    @classmethod
    def hermitized(cls, zeta: BitString, alpha: BitString) -> "Spinor":
        return cls(zeta, alpha, -zeta.dot(alpha))

    @classmethod
    def from_pauli(cls, word: str) -> "Spinor":
        """Hermitian spinor for a Pauli word such as ``"ZIX"``."""
        word = word.upper()
        z = "".join(str(_PAULI_BITS[c][0]) for c in word)
        a = "".join(str(_PAULI_BITS[c][1]) for c in word)
        return cls.hermitized(BitString.from_str(z), BitString.from_str(a))

    @classmethod
    def identity(cls, width: int) -> "Spinor":
        return cls(BitString.zero(width), BitString.zero(width))

    @property
    def width(self) -> int:
        return self.zeta.width

    @property
    def is_hermitian(self) -> bool:
        return self.phase == (-self.zeta.dot(self.alpha)) % 4

    def hermitian_form(self) -> "Spinor":
        return Spinor.hermitized(self.zeta, self.alpha)

    def pauli(self) -> str:
        """Pauli word of the underlying tensor product, phase dropped."""
        names = {(0, 0): "I", (1, 0): "Z", (0, 1): "X", (1, 1): "Y"}
        return "".join(names[z, a] for z, a in zip(self.zeta.bits(), self.alpha.bits()))

    def support(self) -> int:
        """Number of non-identity tensor slots."""
        return (self.zeta.value | self.alpha.value).bit_count()

    def sort_key(self):
        return (self.alpha.value, self.zeta.value)

    def __mul__(self, other: "Spinor") -> "Spinor":
        return spinor_mul(self, other)

    def __str__(self):
        return f"S[{self.zeta}/{self.alpha}]*i^{self.phase}"

    def short(self) -> str:
        """Text form without the phase; only meaningful for hermitian spinors."""
        return f"S[{self.zeta}/{self.alpha}]"

    @classmethod
    def parse(cls, text: str) -> "Spinor":
        """Inverse of ``str``; a missing ``*i^k`` suffix means the hermitian form."""
        m = _TEXT.match(text)
        if not m:
            raise ValueError(f"not a spinor: {text!r}")
        zeta, alpha = BitString.from_str(m[1]), BitString.from_str(m[2])
        if m[3] is None:
            return cls.hermitized(zeta, alpha)
        return cls(zeta, alpha, int(m[3]))


def _same_width(a: Spinor, b: Spinor):
    if a.width != b.width:
        raise ValueError(f"width mismatch: {a.width} vs {b.width}")


def spinor_mul(a: Spinor, b: Spinor) -> Spinor:
    _same_width(a, b)
    sign = 2 * b.zeta.dot2(a.alpha)
    return Spinor(a.zeta ^ b.zeta, a.alpha ^ b.alpha, a.phase + b.phase + sign)


def parity(a: Spinor, b: Spinor) -> Parity:
    _same_width(a, b)
    return Parity((b.zeta.dot(a.alpha) + a.zeta.dot(b.alpha)) & 1)


def commutes(a: Spinor, b: Spinor) -> bool:
    return parity(a, b) is Parity.COMMUTE


def commutator(a: Spinor, b: Spinor) -> Optional[tuple[int, Spinor]]:
    """``ab - ba`` as ``(2, ab)``, or None when the spinors commute."""
    if commutes(a, b):
        return None
    return 2, spinor_mul(a, b)


def hermitian_bracket(a: Spinor, b: Spinor) -> Optional[tuple[int, Spinor]]:
    """``-i[a, b]`` for hermitian spinors, as ``(+-2, hermitian spinor)``."""
    if commutes(a, b):
        return None
    c = spinor_mul(a, b)
    h = Spinor.hermitized(c.zeta, c.alpha)
    # -i * 2 * i^k * i^e h  with e = zeta.alpha of the product
    m = (c.phase + c.zeta.dot(c.alpha) + 3) % 4
    if m & 1:
        raise ValueError("bracket of non-hermitian spinors")
    return (2 if m == 0 else -2), h


@dataclass(frozen=True)
class BasisState:
    """``i^phase |label>``; ``sign`` is defined when the phase is real."""

    label: BitString
    phase: int = 0

    def __post_init__(self):
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def signed(cls, label: BitString, sign: int) -> "BasisState":
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        return cls(label, 0 if sign == 1 else 2)

    @property
    def sign(self) -> int:
        if self.phase & 1:
            raise ValueError("state carries an imaginary phase")
        return 1 if self.phase == 0 else -1


def apply_to_state(s: Spinor, b: BasisState) -> BasisState:
    if s.width != b.label.width:
        raise ValueError(f"width mismatch: {s.width} vs {b.label.width}")
    out = b.label ^ s.alpha
    return BasisState(out, b.phase + s.phase + 2 * s.zeta.dot2(out))


def s_rotate(r: Spinor, theta: float, target: Spinor) -> list[tuple[float, Spinor]]:
    """Conjugate ``target`` by ``R = exp(i theta r)``: returns ``R^dag target R``.

    Both spinors must be hermitian.  The result is a real combination of at
    most two hermitian spinors; vanishing terms are dropped.
    """
    _same_width(r, target)
    if not (r.is_hermitian and target.is_hermitian):
        raise ValueError("s_rotate expects hermitian spinors")
    if commutes(r, target):
        return [(1.0, target)]
    # cos(2t) target + i sin(2t) target*r
    prod = spinor_mul(target, r)
    h = Spinor.hermitized(prod.zeta, prod.alpha)
    m = (prod.phase + prod.zeta.dot(prod.alpha) + 1) % 4
    sign = 1.0 if m == 0 else -1.0
    terms = [(float(np.cos(2 * theta)), target), (sign * float(np.sin(2 * theta)), h)]
    return [(c, s) for c, s in terms if abs(c) > 1e-15]


def to_matrix(s: Spinor) -> np.ndarray:
    if s.width > MAX_WIDTH:
        raise ValueError(f"width {s.width} too large for a dense matrix")
    factors = [_ONE_QUBIT[e, a] for e, a in zip(s.zeta.bits(), s.alpha.bits())]
    return (1j ** s.phase) * reduce(np.kron, factors)


def all_spinors(width: int, include_identity: bool = False) -> list[Spinor]:
    """Every hermitian spinor of the given width in canonical (alpha, zeta) order."""
    out = [
        Spinor.hermitized(BitString(z, width), BitString(a, width))
        for a in range(1 << width)
        for z in range(1 << width)
    ]
    return out if include_identity else out[1:]
