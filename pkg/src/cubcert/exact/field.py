"""Simple algebraic extensions Q[c]/(f) with a chosen real embedding."""

from __future__ import annotations

from fractions import Fraction

import mpmath

from .interval import IntervalRat
from .poly import (
    Poly,
    isolate_real_roots,
    poly_divrem,
    poly_xgcd,
    refine_root,
    sturm_count,
)


class NumberField:
    """The residue ring Q[c]/(f) for a monic irreducible ``f``.

    Irreducibility is the caller's responsibility.  ``embedding`` picks the
    real root that the generator stands for; it may be a callable returning an
    mpmath number at the current working precision, a decimal string, or
    ``None`` (largest real root).
    """

    def __init__(self, modulus: Poly, generator: str = "c", embedding=None):
        if modulus.degree() < 1:
            raise ValueError("modulus must have degree >= 1")
        if modulus.lc != 1:
            raise ValueError(f"modulus {modulus} is not monic")
        for c in modulus.coeffs:
            if not isinstance(c, Fraction):
                raise TypeError("modulus must have rational coefficients")
        self.modulus = modulus.with_var(generator)
        self.generator = generator
        self.degree = modulus.degree()
        self._embedding = embedding
        self._root = None

    def __eq__(self, other):
        return (
            isinstance(other, NumberField)
            and self.modulus == other.modulus
            and self.generator == other.generator
        )

    def __hash__(self):
        return hash(("NumberField", self.modulus.coeffs, self.generator))

    def __repr__(self):
        return f"NumberField({self.modulus})"

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, Poly):
            return FieldElement(self, value.with_var(self.generator))
        if isinstance(value, (list, tuple)):
            return FieldElement(self, Poly(value, self.generator))
        return FieldElement(self, Poly([value], self.generator))

    @property
    def gen(self) -> "FieldElement":
        return self(Poly.gen(self.generator))

    @property
    def one(self) -> "FieldElement":
        return self(1)

    # -- the real embedding ------------------------------------------------

    def approx_generator(self, dps: int = 60):
        with mpmath.workdps(dps + 10):
            e = self._embedding
            if callable(e):
                return +e()
            if e is not None:
                return mpmath.mpf(e)
            a, b = self.root_interval(Fraction(1, 10 ** (dps + 5)))
            m = (a + b) / 2
            return mpmath.mpf(m.numerator) / m.denominator

    def root_interval(self, width: Fraction = Fraction(1, 10**30)) -> tuple[Fraction, Fraction]:
        """Rational ``[a, b)`` holding exactly the embedded root, narrower than ``width``."""
        if self._root is None:
            self._root = self._isolate()
        a, b = self._root
        if b - a >= width:
            a, b = refine_root(self.modulus, a, b, width)
            self._root = (a, b)
        return a, b

    def _isolate(self):
        f = self.modulus
        if self._embedding is None:
            roots = isolate_real_roots(f)
            if not roots:
                raise ValueError(f"{f} has no real root to embed")
            return roots[-1]
        approx = self.approx_generator(60)
        centre = Fraction(mpmath.nstr(approx, 50, min_fixed=-10**6, max_fixed=10**6))
        eps = Fraction(1, 10**40)
        while True:
            a, b = centre - eps, centre + eps
            if sturm_count(f, (a, b)) == 1:
                return a, b
            eps *= 10
            if eps > 1:
                raise ValueError("embedding does not isolate a root of the modulus")

    def to_json(self) -> dict:
        out = {
            "modulus": [str(c) for c in self.modulus.coeffs],
            "generator": self.generator,
        }
        if self.degree > 1:
            out["embedding"] = mpmath.nstr(self.approx_generator(40), 40)
        return out


class FieldElement:
    __slots__ = ("field", "residue")

    def __init__(self, field: NumberField, residue: Poly):
        if residue.var != field.generator:
            residue = residue.with_var(field.generator)
        if residue.degree() >= field.degree:
            residue = poly_divrem(residue, field.modulus)[1]
        self.field = field
        self.residue = residue

    def _lift(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("mixed incompatible fields")
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, Poly([other], self.field.generator))
        raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")

    def _wrap(self, p: Poly) -> "FieldElement":
        return FieldElement(self.field, p)

    def __add__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self._wrap(self.residue + o.residue)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(-self.residue)

    def __sub__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self._wrap(self.residue - o.residue)

    def __rsub__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self._wrap(o.residue - self.residue)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._wrap(self.residue * Fraction(other))
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self._wrap(self.residue * o.residue)

    __rmul__ = __mul__

    def inv(self) -> "FieldElement":
        if not self.residue:
            raise ZeroDivisionError("inverse of zero field element")
        g, s, _ = poly_xgcd(self.residue, self.field.modulus)
        if g.degree() != 0:
            raise ArithmeticError(f"{self.field.modulus} is reducible: common factor {g}")
        return self._wrap(s)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._wrap(self.residue * (1 / Fraction(other)))
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        out = self.field.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self):
        return bool(self.residue)

    def __eq__(self, other):
        try:
            o = self._lift(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.residue == o.residue

    def __hash__(self):
        r = self.is_rational()
        if r is not None:
            return hash(r)
        return hash((self.field.modulus.coeffs, self.residue.coeffs))

    def is_rational(self) -> Fraction | None:
        return field_is_rational(self)

    def coefficients(self) -> list[Fraction]:
        """Residue coefficients padded to the field degree."""
        return [self.residue.coeff(i) for i in range(self.field.degree)]

    # -- numerics -----------------------------------------------------------

    def approx(self, dps: int = 50):
        with mpmath.workdps(dps + 10):
            g = self.field.approx_generator(dps + 10)
            acc = mpmath.mpf(0)
            for c in reversed(self.residue.coeffs):
                acc = acc * g + mpmath.mpf(c.numerator) / c.denominator
            return +acc

    def enclosure(self, width: Fraction = Fraction(1, 10**30)) -> IntervalRat:
        """Certified rational enclosure of the embedded value.

        Evaluates the residue by interval Horner over a Sturm-isolated
        interval of the generator, refining until narrower than ``width``.
        """
        r = self.is_rational()
        if r is not None:
            return IntervalRat.point(r)
        gw = width
        while True:
            a, b = self.field.root_interval(gw)
            g = IntervalRat(a, b)
            acc = IntervalRat.point(0)
            for c in reversed(self.residue.coeffs):
                acc = acc * g + c
            if acc.width < width:
                return acc
            gw = gw / 1024

    def sign(self) -> int:
        """Exact sign under the field's real embedding.

        Fast path at 100 digits; magnitudes below 1e-50 fall back to Sturm
        refinement of the generator until the residue has no root nearby.
        """
        if not self.residue:
            return 0
        r = self.is_rational()
        if r is not None:
            return (r > 0) - (r < 0)
        v = self.approx(100)
        if abs(v) > mpmath.mpf(10) ** -50:
            return 1 if v > 0 else -1
        width = Fraction(1, 10**30)
        while True:
            a, b = self.field.root_interval(width)
            if sturm_count(self.residue, (a, b)) == 0 and self.residue(b) != 0:
                m = (a + b) / 2
                val = self.residue(m)
                return 1 if val > 0 else -1
            width /= 2**20

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __repr__(self):
        return f"FieldElement({self.residue!s} mod {self.field.modulus!s})"

    def __str__(self):
        return str(self.residue)


def field_reduce(expr: Poly, field: NumberField) -> FieldElement:
    """Reduce a rational polynomial in the generator modulo the field's modulus."""
    return FieldElement(field, expr.with_var(field.generator))


def field_is_rational(e: FieldElement) -> Fraction | None:
    if e.residue.degree() <= 0:
        return e.residue.coeff(0)
    return None

