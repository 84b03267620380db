"""Exact real quadratic surds a + b*sqrt(D) with rational a, b.

Used for dilatations, pseudo-Anosov fixed points and the n**(-3/2)
weights of the property-A witnesses. Signs and comparisons are decided
exactly by comparing a**2 with b**2 * D.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd, isqrt
from typing import Union

Number = Union[int, Fraction]


def _squarefree_split(n: int) -> tuple[int, int]:
    """Write n = s**2 * r with r squarefree; return (s, r)."""
    s, r = 1, n
    f = 2
    while f * f <= r:
        while r % (f * f) == 0:
            r //= f * f
            s *= f
        f += 1
    return s, r


class QuadraticSurd:
    """The number a + b*sqrt(D); D is kept squarefree (D = 1 means rational)."""

    __slots__ = ("a", "b", "D")

    def __init__(self, a: Number = 0, b: Number = 0, D: int = 1):
        if D < 0:
            raise ValueError("only real surds are supported")
        a, b = Fraction(a), Fraction(b)
        if D == 0:
            b = Fraction(0)
            D = 1
        s, r = _squarefree_split(D)
        b *= s
        if r == 1:
            a, b = a + b, Fraction(0)
        if b == 0:
            r = 1
        self.a, self.b, self.D = a, b, r

    @classmethod
    def sqrt(cls, n: Number) -> "QuadraticSurd":
        n = Fraction(n)
        if n < 0:
            raise ValueError("square root of a negative number")
        # sqrt(p/q) = sqrt(p*q)/q
        return cls(0, Fraction(1, n.denominator), n.numerator * n.denominator)

    def _coerce(self, other) -> "QuadraticSurd":
        if isinstance(other, QuadraticSurd):
            if other.D != self.D and other.b != 0 and self.b != 0:
                raise ValueError("surds over different fields: sqrt(%d), sqrt(%d)" % (self.D, other.D))
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticSurd(other)
        return NotImplemented

    def _field(self, other: "QuadraticSurd") -> int:
        return self.D if self.b != 0 else other.D

    def is_rational(self) -> bool:
        return self.b == 0

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticSurd(self.a + o.a, self.b + o.b, self._field(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadraticSurd(-self.a, -self.b, self.D)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        D = self._field(o)
        return QuadraticSurd(self.a * o.a + self.b * o.b * D, self.a * o.b + self.b * o.a, D)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadraticSurd":
        return QuadraticSurd(self.a, -self.b, self.D)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.D

    def inverse(self) -> "QuadraticSurd":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("surd is zero")
        return QuadraticSurd(self.a / n, -self.b / n, self.D)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def sign(self) -> int:
        a, b = self.a, self.b
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        return sa if a * a > b * b * self.D else sb

    def __eq__(self, other):
        o = self._coerce(other) if isinstance(other, (int, Fraction, QuadraticSurd)) else NotImplemented
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b and (self.b == 0 or self.D == o.D)

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.D))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self):
        if (self.a > 0) != (self.b > 0) and self.a != 0 and self.b != 0:
            # avoid cancellation: a + b r = (a^2 - b^2 D) / (a - b r)
            return float(self.norm()) / (float(self.a) - float(self.b) * self.D ** 0.5)
        return float(self.a) + float(self.b) * self.D ** 0.5

    def floor(self) -> int:
        """Exact floor, via integer square roots."""
        # a + b sqrt(D) = (u + v sqrt(D)) / w with integers, w > 0
        u, v, w = self.as_integers()
        if v == 0:
            return u // w
        r = isqrt(v * v * self.D)  # floor(|v| sqrt D)
        root = r if v > 0 else -r - 1  # floor(v sqrt D), irrational so never exact
        # floor((u + x)/w) with floor(x) = root and x irrational
        return (u + root) // w

    def as_integers(self) -> tuple[int, int, int]:
        """Integers (u, v, w), w > 0 and gcd(u, v, w) = 1, with value (u + v*sqrt(D))/w."""
        w = self.a.denominator * self.b.denominator // gcd(self.a.denominator, self.b.denominator)
        u = int(self.a * w)
        v = int(self.b * w)
        g = gcd(gcd(u, v), w)
        return u // g, v // g, w // g

    def __repr__(self):
        return "QuadraticSurd(%s)" % self

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        u, v, w = self.as_integers()
        return "(%d%+d√%d)/%d" % (u, v, self.D, w)

    @classmethod
    def parse(cls, text: str) -> "QuadraticSurd":
        """Read the "(u+v√D)/w" format; plain rationals are accepted too."""
        t = text.replace(" ", "").replace("sqrt", "√")
        m = re.fullmatch(r"\(?([+-]?\d+)([+-]\d*)√(\d+)\)?(?:/(\d+))?", t)
        if m:
            u = int(m.group(1))
            vs = m.group(2)
            v = int(vs + "1") if vs in ("+", "-") else int(vs)
            D = int(m.group(3))
            w = int(m.group(4) or 1)
            return cls(Fraction(u, w), Fraction(v, w), D)
        return cls(Fraction(t))
