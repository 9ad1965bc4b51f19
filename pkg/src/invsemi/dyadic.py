"""Exact nonnegative dyadic rationals ``p / 2**q``."""

from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering

_LITERAL = re.compile(r"^\s*(\d+)\s*/\s*2\s*\^\s*(\d+)\s*$")


@total_ordering
class Dyadic:
    """A value ``numerator / 2**exponent`` kept in lowest terms.

    Only nonnegative values exist; subtraction that would go below zero
    raises ``ValueError`` instead of silently wrapping.
    """

    __slots__ = ("numerator", "exponent")

    def __init__(self, numerator: int = 0, exponent: int = 0):
        if numerator < 0:
            raise ValueError("dyadic values are nonnegative")
        if exponent < 0:
            numerator <<= -exponent
            exponent = 0
        if numerator == 0:
            exponent = 0
        else:
            tz = (numerator & -numerator).bit_length() - 1
            shift = min(tz, exponent)
            numerator >>= shift
            exponent -= shift
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "exponent", exponent)

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic is immutable")

    @classmethod
    def pow2(cls, k: int) -> "Dyadic":
        """``2**k`` for any integer ``k``."""
        return cls(1, -k)

    @classmethod
    def weight(cls, n: int) -> "Dyadic":
        """Weight ``2**-(n+1)`` attached to the point ``n``."""
        return cls(1, n + 1)

    @classmethod
    def tail_weight(cls, k: int) -> "Dyadic":
        """Sum of the weights of all points ``>= k``, i.e. ``2**-k``."""
        return cls(1, k)

    @classmethod
    def parse(cls, text: str) -> "Dyadic":
        m = _LITERAL.match(text)
        if m is None:
            raise ValueError(f"not a dyadic literal: {text!r}")
        return cls(int(m.group(1)), int(m.group(2)))

    def _align(self, other: "Dyadic") -> tuple[int, int, int]:
        e = max(self.exponent, other.exponent)
        return self.numerator << (e - self.exponent), other.numerator << (e - other.exponent), e

    def __add__(self, other):
        if isinstance(other, int):
            other = Dyadic(other)
        if not isinstance(other, Dyadic):
            return NotImplemented
        a, b, e = self._align(other)
        return Dyadic(a + b, e)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = Dyadic(other)
        if not isinstance(other, Dyadic):
            return NotImplemented
        a, b, e = self._align(other)
        if a < b:
            raise ValueError(f"{self} - {other} is negative")
        return Dyadic(a - b, e)

    def __mul__(self, other):
        if isinstance(other, int):
            if other < 0:
                raise ValueError("dyadic values are nonnegative")
            return Dyadic(self.numerator * other, self.exponent)
        if isinstance(other, Dyadic):
            return Dyadic(self.numerator * other.numerator, self.exponent + other.exponent)
        return NotImplemented

    __rmul__ = __mul__

    def abs_diff(self, other: "Dyadic") -> "Dyadic":
        return self - other if self >= other else other - self

    def round_to(self, exponent: int) -> "Dyadic":
        """Nearest multiple of ``2**-exponent`` (ties round up)."""
        if self.exponent <= exponent:
            return self
        drop = self.exponent - exponent
        q = (self.numerator + (1 << (drop - 1))) >> drop
        return Dyadic(q, exponent)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Dyadic(other) if other >= 0 else None
            if other is None:
                return False
        if not isinstance(other, Dyadic):
            return NotImplemented
        return self.numerator == other.numerator and self.exponent == other.exponent

    def __lt__(self, other):
        if isinstance(other, int):
            other = Dyadic(other)
        if not isinstance(other, Dyadic):
            return NotImplemented
        a, b, _ = self._align(other)
        return a < b

    def __hash__(self):
        return hash((self.numerator, self.exponent))

    def __bool__(self):
        return self.numerator != 0

    def to_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.exponent)

    def __float__(self):
        return self.numerator / (1 << self.exponent)

    def __str__(self):
        return f"{self.numerator}/2^{self.exponent}"

    def __repr__(self):
        return f"Dyadic({self.numerator}, {self.exponent})"


ZERO = Dyadic(0)
ONE = Dyadic(1)
