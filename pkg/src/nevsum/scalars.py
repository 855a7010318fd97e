"""Gaussian rational scalars: complex numbers with exact rational parts.

All decision-making arithmetic in this library happens in the field
Q(i) = {a + b*i : a, b rational}.  `ExactScalar` wraps two
`fractions.Fraction` values and supports full field arithmetic.  Values
are immutable and hashable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

RationalLike = Union[int, Fraction, str]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"not a rational value: {x!r}")


class ExactScalar:
    """An element a + b*i of the Gaussian rationals."""

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("ExactScalar is immutable")

    # --- constructors -------------------------------------------------

    @staticmethod
    def of(x) -> "ExactScalar":
        if isinstance(x, ExactScalar):
            return x
        if isinstance(x, (int, Fraction, str)):
            return ExactScalar(x)
        raise TypeError(f"cannot coerce {x!r} to ExactScalar")

    # --- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def sign_real(self) -> int:
        """Sign of a real scalar (-1, 0, 1); error if not real."""
        if self.im != 0:
            raise ValueError(f"sign of non-real scalar {self}")
        return (self.re > 0) - (self.re < 0)

    # --- arithmetic ---------------------------------------------------

    def __add__(self, other):
        o = ExactScalar.of(other)
        return ExactScalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar(-self.re, -self.im)

    def __sub__(self, other):
        o = ExactScalar.of(other)
        return ExactScalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return ExactScalar.of(other) - self

    def __mul__(self, other):
        o = ExactScalar.of(other)
        return ExactScalar(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def conj(self) -> "ExactScalar":
        return ExactScalar(self.re, -self.im)

    def abs2(self) -> Fraction:
        """|s|^2 as an exact rational."""
        return self.re * self.re + self.im * self.im

    def inv(self) -> "ExactScalar":
        n = self.abs2()
        if n == 0:
            raise ZeroDivisionError("inverse of zero ExactScalar")
        return ExactScalar(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * ExactScalar.of(other).inv()

    def __rtruediv__(self, other):
        return ExactScalar.of(other) * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # --- comparison / hashing ------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactScalar(other)
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    # --- display --------------------------------------------------------

    def __repr__(self):
        return f"ExactScalar({self})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def to_complex(self) -> complex:
        """Float view; for display only, never for decisions."""
        return complex(float(self.re), float(self.im))


ZERO = ExactScalar(0)
ONE = ExactScalar(1)
I = ExactScalar(0, 1)


def sc(re=0, im=0) -> ExactScalar:
    """Shorthand constructor, e.g. sc(1, -2) == 1 - 2i."""
    return ExactScalar(re, im)
