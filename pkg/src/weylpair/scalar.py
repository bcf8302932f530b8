"""Exact scalars: rationals, optionally extended by a single square root.

Rational values are plain :class:`fractions.Fraction` objects.  A value
``a + b*sqrt(d)`` with ``b != 0`` is a :class:`Quad`; every arithmetic
result whose radical part cancels is demoted back to a ``Fraction`` so that
equality between scalars stays structural.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["Quad", "RadicandMismatch", "as_scalar", "is_zero", "format_scalar", "sqrt"]


class RadicandMismatch(ValueError):
    """Two radical scalars with different radicands were combined."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class Quad:
    """The number ``a + b*sqrt(d)`` with rational ``a, b`` and integer ``d``."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        d = int(d)
        if d == 0 or d == 1:
            raise ValueError("radicand must be a nonzero integer other than 1")
        self.a = _frac(a)
        self.b = _frac(b)
        self.d = d

    @staticmethod
    def make(a, b, d: int):
        b = _frac(b)
        if b == 0:
            return _frac(a)
        return Quad(a, b, d)

    def _coerce(self, other):
        if isinstance(other, Quad):
            if other.d != self.d:
                raise RadicandMismatch(f"sqrt({self.d}) combined with sqrt({other.d})")
            return other.a, other.b
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return NotImplemented

    def __add__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        return Quad.make(self.a + c[0], self.b + c[1], self.d)

    __radd__ = __add__

    def __neg__(self):
        return Quad(-self.a, -self.b, self.d)

    def __sub__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        return Quad.make(self.a - c[0], self.b - c[1], self.d)

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        return Quad.make(c[0] - self.a, c[1] - self.b, self.d)

    def __mul__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        a, b = c
        return Quad.make(self.a * a + self.d * self.b * b, self.a * b + self.b * a, self.d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def conjugate(self):
        return Quad(self.a, -self.b, self.d)

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError(f"{self} is a zero divisor (d={self.d} is a square)")
        return Quad.make(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        if isinstance(other, Quad):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            return Quad.make(self.a / other, self.b / other, self.d)
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Fraction(1)
        base = self
        while k:
            if k & 1:
                out = base * out
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Quad):
            return self.a == other.a and self.b == other.b and self.d == other.d
        if isinstance(other, (int, Fraction)):
            return False  # b != 0 by construction
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return True

    def __repr__(self):
        return f"Quad({self.a}, {self.b}, {self.d})"

    def __str__(self):
        return format_scalar(self)


def sqrt(d: int):
    """``sqrt(d)`` as a scalar; exact rational when ``d`` is a perfect square."""
    d = int(d)
    if d == 0:
        return Fraction(0)
    # pull square factors out so that sqrt(-4) becomes 2*sqrt(-1)
    k, rest = 1, abs(d)
    f = 2
    while f * f <= rest:
        while rest % (f * f) == 0:
            rest //= f * f
            k *= f
        f += 1
    rest = rest if d > 0 else -rest
    if rest == 1:
        return Fraction(k)
    return Quad(0, k, rest)


def as_scalar(x):
    if isinstance(x, (Fraction, Quad)):
        return x
    return _frac(x)


def is_zero(x) -> bool:
    return not isinstance(x, Quad) and x == 0


def format_scalar(x) -> str:
    """Text form: ``3``, ``-3/2`` or ``(a+b*sqrt(d))``."""
    if isinstance(x, Quad):
        if x.a == 0:
            return f"({x.b}*sqrt({x.d}))"
        sign = "+" if x.b > 0 else "-"
        return f"({x.a}{sign}{abs(x.b)}*sqrt({x.d}))"
    return str(_frac(x))
