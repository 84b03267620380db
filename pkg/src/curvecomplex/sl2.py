"""Integer 2x2 matrices of determinant one."""

from __future__ import annotations

import re
from dataclasses import dataclass


@dataclass(frozen=True)
class SL2Matrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError("determinant of %s is not 1" % (self,))

    @classmethod
    def identity(cls) -> "SL2Matrix":
        return cls(1, 0, 0, 1)

    @classmethod
    def parse(cls, text: str) -> "SL2Matrix":
        """Read "[[a,b],[c,d]]"."""
        nums = re.findall(r"-?\d+", text.replace("−", "-"))
        if len(nums) != 4:
            raise ValueError("expected four integers in %r" % text)
        return cls(*map(int, nums))

    def __str__(self):
        return "[[%d,%d],[%d,%d]]" % (self.a, self.b, self.c, self.d)

    def __matmul__(self, other: "SL2Matrix") -> "SL2Matrix":
        return SL2Matrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self):
        return SL2Matrix(-self.a, -self.b, -self.c, -self.d)

    def inverse(self) -> "SL2Matrix":
        return SL2Matrix(self.d, -self.b, -self.c, self.a)

    def trace(self) -> int:
        return self.a + self.d

    def __pow__(self, n: int) -> "SL2Matrix":
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        out = SL2Matrix.identity()
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    def is_scalar(self) -> bool:
        """True for +I and -I, which act trivially on slopes."""
        return self.b == 0 and self.c == 0 and self.a == self.d

    def rows(self):
        return [[self.a, self.b], [self.c, self.d]]


S = SL2Matrix(0, -1, 1, 0)
T = SL2Matrix(1, 1, 0, 1)


def random_word(rng, length: int) -> SL2Matrix:
    """A product of `length` letters drawn from S, T and their inverses."""
    letters = [S, S.inverse(), T, T.inverse()]
    m = SL2Matrix.identity()
    for _ in range(length):
        m = m @ letters[rng.randrange(4)]
    return m
