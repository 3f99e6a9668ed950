"""Scalar field selection: exact rationals by default, optionally a prime field."""

from contextlib import contextmanager
from fractions import Fraction

_PRIME = None


class GFp:
    """Element of the prime field Z/p."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        if isinstance(v, Fraction):
            v = v.numerator * pow(v.denominator, -1, p)
        self.v = int(v) % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, GFp):
            return other.v
        return GFp(other, self.p).v

    def __add__(self, other):
        return GFp(self.v + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return GFp(self.v - self._coerce(other), self.p)

    def __rsub__(self, other):
        return GFp(self._coerce(other) - self.v, self.p)

    def __mul__(self, other):
        return GFp(self.v * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o == 0:
            raise ZeroDivisionError("division by zero in GF(p)")
        return GFp(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return GFp(other, self.p) / self

    def __neg__(self):
        return GFp(-self.v, self.p)

    def __eq__(self, other):
        if isinstance(other, GFp):
            return self.v == other.v
        return self.v == GFp(other, self.p).v

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v} mod {self.p}"

    def __str__(self):
        return str(self.v)


def prime():
    return _PRIME


def scalar(x):
    """Convert an int/Fraction/str into the active scalar type."""
    if isinstance(x, str):
        x = Fraction(x)
    if _PRIME is None:
        return x if isinstance(x, Fraction) else Fraction(x)
    return x if isinstance(x, GFp) else GFp(x, _PRIME)


@contextmanager
def prime_field(p):
    """Temporarily compute over Z/p instead of Q."""
    global _PRIME
    old = _PRIME
    _PRIME = p
    try:
        yield
    finally:
        _PRIME = old


def fmt(x):
    """Render a scalar as a rational string ("3", "-1/2")."""
    if isinstance(x, GFp):
        return str(x.v)
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
