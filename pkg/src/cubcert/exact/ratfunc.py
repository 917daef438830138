from __future__ import annotations

from fractions import Fraction

from .poly import Poly, exact_div, inverse, poly_gcd


class RatFunc:
    """Quotient of two rational polynomials in one variable, kept in lowest terms.

    Used for elements of Q(d) such as the forced value ``1/(d+2)``.
    """

    __slots__ = ("num", "den", "var")

    def __init__(self, num, den=None, var: str = "d"):
        if not isinstance(num, Poly):
            num = Poly([num], var)
        if den is None:
            den = Poly([1], num.var)
        elif not isinstance(den, Poly):
            den = Poly([den], num.var)
        if num.var != den.var:
            raise ValueError("numerator and denominator in different variables")
        if not den:
            raise ZeroDivisionError("zero denominator")
        g = poly_gcd(num, den)
        if g.degree() > 0:
            num, den = exact_div(num, g), exact_div(den, g)
        inv = inverse(den.lc)
        self.num = num * inv
        self.den = den * inv
        self.var = num.var

    def _lift(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly) and other.var == self.var:
            return RatFunc(other)
        return RatFunc(Poly([other], self.var))

    def __add__(self, other):
        o = self._lift(other)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inv(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * self._lift(other).inv()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        return RatFunc(self.num**n, self.den**n)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        try:
            o = self._lift(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self.den.degree() == 0 and self.num.degree() <= 0:
            return hash(self.num.coeff(0))
        return hash((self.num, self.den))

    def __call__(self, x) -> Fraction:
        return self.num(x) / self.den(x)

    def __repr__(self):
        return f"RatFunc({self.num!s}, {self.den!s})"

    def __str__(self):
        if self.den.degree() == 0:
            return str(self.num)
        return f"({self.num})/({self.den})"
