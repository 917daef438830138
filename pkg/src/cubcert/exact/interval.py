from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor


@dataclass(frozen=True)
class IntervalRat:
    """Closed interval with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> "IntervalRat":
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains_integer(self) -> bool:
        return interval_contains_integer(self)

    def _lift(self, other) -> "IntervalRat":
        return other if isinstance(other, IntervalRat) else IntervalRat.point(other)

    def __add__(self, other):
        o = self._lift(other)
        return IntervalRat(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return IntervalRat(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return IntervalRat(min(ps), max(ps))

    __rmul__ = __mul__

    def square(self) -> "IntervalRat":
        if self.lo >= 0:
            return IntervalRat(self.lo**2, self.hi**2)
        if self.hi <= 0:
            return IntervalRat(self.hi**2, self.lo**2)
        return IntervalRat(0, max(self.lo**2, self.hi**2))

    def __pow__(self, n: int):
        if n == 2:
            return self.square()
        out = IntervalRat.point(1)
        for _ in range(n):
            out = out * self
        return out

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


def interval_contains_integer(w: IntervalRat) -> bool:
    # closed convention: an integer endpoint counts
    return ceil(w.lo) <= floor(w.hi)
