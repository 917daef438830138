"""Orthogonal polynomials, dimension counts and moment-based Gram-Schmidt.

Dimension may be passed either as an ``int`` or as the string ``"d"``; the
latter keeps the dimension as a formal symbol, so coefficients live in Q[d].

Degree convention: a rule of degree ``4k+1`` is a rule of degree ``2K+1`` with
``K = 2k``.  :func:`moeller_bound` takes that ``K`` (pass ``2*k``); every
other function here and in the rest of the package takes ``k`` itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Union

from .exact import FieldElement, Poly, exact_div, poly_divrem, poly_sqrt

SYMBOLIC = "d"

Dim = Union[int, str]


def _is_symbolic(d) -> bool:
    return isinstance(d, str)


def dim_symbol() -> Poly:
    return Poly.gen("d")


# -- scaled quantities -----------------------------------------------------


@dataclass(frozen=True)
class ScaledQuantity:
    """``value * U**unit_exp`` for the formal unit ``U = pi * |S^{d-1}|``.

    U is never evaluated; it cancels in every certified quantity.
    """

    value: object
    unit_exp: int = 0

    def __post_init__(self):
        if isinstance(self.value, int) and not isinstance(self.value, bool):
            object.__setattr__(self, "value", Fraction(self.value))

    def __add__(self, other):
        o = _as_scaled(other)
        if not o.value:
            return self
        if not self.value:
            return o
        if o.unit_exp != self.unit_exp:
            raise ValueError(f"unit mismatch: U^{self.unit_exp} + U^{o.unit_exp}")
        return ScaledQuantity(self.value + o.value, self.unit_exp)

    __radd__ = __add__

    def __neg__(self):
        return ScaledQuantity(-self.value, self.unit_exp)

    def __sub__(self, other):
        return self + (-_as_scaled(other))

    def __mul__(self, other):
        o = _as_scaled(other)
        return ScaledQuantity(self.value * o.value, self.unit_exp + o.unit_exp)

    __rmul__ = __mul__

    def inv(self):
        return ScaledQuantity(1 / self.value, -self.unit_exp)

    def __truediv__(self, other):
        return self * _as_scaled(other).inv()

    def __rtruediv__(self, other):
        return _as_scaled(other) * self.inv()

    def __eq__(self, other):
        if not isinstance(other, ScaledQuantity):
            other = _as_scaled(other)
        if not self.value and not other.value:
            return True
        return self.unit_exp == other.unit_exp and self.value == other.value

    def __hash__(self):
        return hash((self.value, self.unit_exp))

    def sign(self) -> int:
        v = self.value
        if isinstance(v, FieldElement):
            return v.sign()
        return (v > 0) - (v < 0)

    def is_positive(self) -> bool:
        return self.sign() > 0

    def to_json(self) -> dict:
        v = self.value
        if isinstance(v, FieldElement) and v.residue.degree() > 0:
            val = [str(c) for c in v.coefficients()]
        elif isinstance(v, FieldElement):
            val = str(v.residue.coeff(0))
        else:
            val = str(v)
        return {"value": val, "unitExp": self.unit_exp}

    def __str__(self):
        return f"({self.value}) U^{self.unit_exp}" if self.unit_exp else str(self.value)


def _as_scaled(x) -> ScaledQuantity:
    return x if isinstance(x, ScaledQuantity) else ScaledQuantity(x, 0)


# -- moment sequences ------------------------------------------------------


@dataclass(frozen=True)
class MomentSequence:
    """Radial moments ``m -> integral of r^{2m}`` against a radial weight.

    ``values(m)`` returns the coefficient of ``U**unit_exp``.  ``horizon`` is
    the largest ``m`` for which the moment is defined.
    """

    values: Callable[[int], object]
    unit_exp: int = 1
    label: str = ""
    horizon: int = 10**9
    overrides: tuple = field(default=())

    def value(self, m: int):
        if m < 0 or m > self.horizon:
            raise ValueError(f"moment {m} outside horizon 0..{self.horizon} of {self.label!r}")
        for idx, v in self.overrides:
            if idx == m:
                return v
        return self.values(m)

    def __getitem__(self, m: int) -> ScaledQuantity:
        return ScaledQuantity(self.value(m), self.unit_exp)

    def shifted(self, s: int) -> "MomentSequence":
        """Moments of the weight multiplied by ``r^{2s}``."""
        return MomentSequence(
            lambda m: self.value(m + s),
            self.unit_exp,
            f"{self.label}*r^{2 * s}",
            self.horizon - s,
        )

    def perturbed(self, m: int, delta) -> "MomentSequence":
        return MomentSequence(
            self.values,
            self.unit_exp,
            f"{self.label}+perturbed[{m}]",
            self.horizon,
            self.overrides + ((m, self.value(m) + delta),),
        )


# -- polynomial families ---------------------------------------------------


def symbolic_lambda() -> Poly:
    """The Gegenbauer parameter ``(d-2)/2`` as a polynomial in ``d``."""
    return Poly([Fraction(-1), Fraction(1, 2)], "d")


def gegenbauer(l: int, lam, var: str = "t") -> Poly:
    """Gegenbauer polynomial ``C_l^{(lam)}`` from the three-term recurrence.

    ``lam`` may be a rational or a polynomial in ``d`` (symbolic mode).
    """
    if l < 0:
        raise ValueError("negative degree")
    if isinstance(lam, int):
        lam = Fraction(lam)
    t = Poly.gen(var)
    prev = Poly([1], var)
    if l == 0:
        return prev
    cur = t * (2 * lam)
    for n in range(2, l + 1):
        nxt = t * cur * (2 * (n + lam - 1)) - prev * (n + 2 * lam - 2)
        prev, cur = cur, nxt * Fraction(1, n)
    return cur


def chebyshev_t(n: int, var: str = "x") -> Poly:
    x = Poly.gen(var)
    prev, cur = Poly([1], var), x
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, 2 * x * cur - prev
    return cur


def chebyshev_u(n: int, var: str = "x") -> Poly:
    return gegenbauer(n, 1, var)


def gegenbauer_dim(l: int, d: Dim, var: str = "t") -> Poly:
    """``C_l^{((d-2)/2)}`` for a numeric or symbolic dimension."""
    lam = symbolic_lambda() if _is_symbolic(d) else Fraction(d - 2, 2)
    return gegenbauer(l, lam, var)


def zonal(l: int, d: Dim, var: str = "t") -> Poly:
    """Zonal harmonic ``(d+2l-2)/(d-2) * C_l^{((d-2)/2)}``.

    This is the addition-formula sum over an orthonormal basis of degree-``l``
    harmonics.  For ``d == 2`` it is the limit ``2 T_l`` (and 1 for ``l == 0``).
    In symbolic mode the division by ``d-2`` is exact because every
    coefficient of ``C_l`` for ``l >= 1`` carries the factor ``(d-2)/2``.
    """
    if l == 0:
        return Poly([1], var)
    if _is_symbolic(d):
        D = dim_symbol()
        c = gegenbauer_dim(l, d, var)
        mult = D + (2 * l - 2)
        return c.map_coeffs(lambda a: exact_div(a * mult, D - 2))
    if d == 2:
        return 2 * chebyshev_t(l, var)
    return gegenbauer_dim(l, d, var) * Fraction(d + 2 * l - 2, d - 2)


# -- minimal polynomials of cosines ----------------------------------------


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@lru_cache(maxsize=None)
def minimal_poly_cos(p: int, var: str = "x") -> Poly:
    """Monic minimal polynomial of ``cos(2*pi/p)`` for an odd prime ``p``.

    ``T_p(x) - 1`` vanishes simply at 1 and doubly at each ``cos(2*pi*l/p)``,
    so after removing ``x - 1`` and the leading ``2**(p-1)`` what is left is
    the square of the wanted polynomial.
    """
    if not isinstance(p, int) or p < 3 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    t = chebyshev_t(p, var) - 1
    q, r = poly_divrem(t, Poly([-1, 1], var))
    if r:
        raise RuntimeError("T_p(x) - 1 not divisible by x - 1")
    root = poly_sqrt(q.monic())
    if root.degree() != (p - 1) // 2:
        raise RuntimeError(f"minimal polynomial of wrong degree {root.degree()}")
    return root


# -- dimension counts ------------------------------------------------------


def dim_harm(d: int, l: int) -> int:
    """Dimension of the degree-``l`` harmonic polynomials in ``d`` variables."""
    if l < 0:
        return 0
    return comb(d + l - 1, l) - (comb(d + l - 3, l - 2) if l >= 2 else 0)


def dim_pstar(d: int, k: int) -> int:
    """Number of monomials in ``d`` variables of degree <= ``k`` with the parity of ``k``."""
    return sum(comb(d + j - 1, j) for j in range(k % 2, k + 1, 2))


def moeller_bound(d: int, halfdeg: int, origin: bool) -> int:
    """Lower bound on the size of a degree ``2*halfdeg+1`` rule.

    A degree ``4k+1`` rule has ``halfdeg = 2k``.
    """
    n = 2 * dim_pstar(d, halfdeg)
    if halfdeg % 2 == 0 and origin:
        n -= 1
    return n


def point_count_nonorigin(d: int, k: int) -> int:
    return 2 * sum(comb(d + 2 * k - 1 - 2 * i, 2 * k - 2 * i) for i in range(k))


# -- Gram-Schmidt ----------------------------------------------------------


@dataclass(frozen=True)
class OrthoBasis:
    """Monic orthogonal polynomials in ``r^2`` with their squared norms."""

    polys: tuple
    norms: tuple

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(zip(self.polys, self.norms))


def moment_inner(p: Poly, q: Poly, moments: MomentSequence):
    acc = Fraction(0)
    for i, a in enumerate(p.coeffs):
        if not a:
            continue
        for j, b in enumerate(q.coeffs):
            if b:
                acc = acc + a * b * moments.value(i + j)
    return acc


def gram_schmidt(moments: MomentSequence, count: int, var: str = "t", positive: bool = True) -> OrthoBasis:
    """Monic orthogonal basis ``q_0..q_count`` in the variable ``t = r^2``.

    With ``positive=False`` only nonzero norms are required, which is enough
    for the algebra but no longer describes a positive weight.
    """
    if 2 * count > moments.horizon:
        raise ValueError(f"need moments through {2 * count}, horizon is {moments.horizon}")
    polys, norms = [], []
    for j in range(count + 1):
        q = Poly.monomial(j, 1, var)
        for p, n in zip(polys, norms):
            q = q - p * (moment_inner(q, p, moments) / n)
        n = moment_inner(q, q, moments)
        s = n.sign() if isinstance(n, FieldElement) else (n > 0) - (n < 0)
        if s == 0 or (positive and s < 0):
            raise ValueError(f"nonpositive norm at degree {j}: moment functional not positive definite")
        polys.append(q)
        norms.append(n)
    return OrthoBasis(
        tuple(polys),
        tuple(ScaledQuantity(n, moments.unit_exp) for n in norms),
    )
