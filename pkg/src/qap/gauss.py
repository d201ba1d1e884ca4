"""Exact Gaussian rationals ``re + i*im`` with Fraction parts."""
from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Union

Number = Union[int, Fraction, "Gauss"]


class Gauss(NamedTuple):
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @classmethod
    def of(cls, x: Number) -> "Gauss":
        if isinstance(x, Gauss):
            return x
        return cls(Fraction(x), Fraction(0))

    @classmethod
    def i_pow(cls, k: int) -> "Gauss":
        return [cls(Fraction(1)), cls(Fraction(0), Fraction(1)),
                cls(Fraction(-1)), cls(Fraction(0), Fraction(-1))][k % 4]

    def __add__(self, other: Number) -> "Gauss":
        o = Gauss.of(other)
        return Gauss(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> "Gauss":
        return Gauss(-self.re, -self.im)

    def __sub__(self, other: Number) -> "Gauss":
        return self + (-Gauss.of(other))

    def __mul__(self, other: Number) -> "Gauss":
        o = Gauss.of(other)
        return Gauss(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def real(self) -> Fraction:
        if self.im:
            raise ValueError(f"{self} is not real")
        return self.re

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        return f"({self.re}{'+' if self.im > 0 else '-'}{abs(self.im)}i)"


ZERO = Gauss()
ONE = Gauss.of(1)
I = Gauss.i_pow(1)
