"""Dense univariate polynomials over exact coefficient rings.

A :class:`Poly` stores ascending coefficients together with the name of its
variable.  Coefficients may be :class:`~fractions.Fraction`, elements of a
number field, or polynomials in *another* variable, which is how the library
represents polynomials over Q[d] or Q[d][A].  A binary operation between two
polynomials in the same variable is polynomial arithmetic; anything else is
treated as a scalar coefficient.
"""

from __future__ import annotations

from fractions import Fraction
from math import ceil, floor
from typing import Callable, Iterable, Sequence


def _coerce(c):
    if isinstance(c, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(c, int):
        return Fraction(c)
    return c


def inverse(c):
    """Multiplicative inverse of a coefficient, or ``ValueError`` if it has none."""
    if isinstance(c, (int, Fraction)):
        if c == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(c)
    if isinstance(c, Poly):
        if c.degree() != 0:
            raise ValueError(f"leading coefficient {c} is not invertible in its ring")
        return Poly([inverse(c.coeffs[0])], c.var)
    if hasattr(c, "inv"):
        return c.inv()
    return 1 / c


class Poly:
    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "x"):
        cs = [_coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, var="x"):
        return cls((), var)

    @classmethod
    def constant(cls, c, var="x"):
        return cls([c], var)

    @classmethod
    def gen(cls, var="x"):
        return cls([0, 1], var)

    @classmethod
    def monomial(cls, n: int, c=1, var="x"):
        return cls([0] * n + [c], var)

    # -- basic queries ----------------------------------------------------

    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self):
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def coeff(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def _same(self, other) -> bool:
        return isinstance(other, Poly) and other.var == self.var

    def _foreign(self, other) -> bool:
        # objects living at this polynomial's own level (e.g. a rational
        # function in the same variable) must handle the operation themselves
        return getattr(other, "var", None) == self.var and not isinstance(other, Poly)

    def __eq__(self, other):
        if self._same(other):
            return self.coeffs == other.coeffs
        if self._foreign(other):
            return NotImplemented
        if len(self.coeffs) > 1:
            return False
        return self.coeff(0) == other

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.coeff(0))
        return hash((self.var, self.coeffs))

    # -- arithmetic -------------------------------------------------------

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.var)

    def __pos__(self):
        return self

    def __add__(self, other):
        if self._same(other):
            a, b = self.coeffs, other.coeffs
            if len(a) < len(b):
                a, b = b, a
            out = list(a)
            for i, c in enumerate(b):
                out[i] = out[i] + c
            return Poly(out, self.var)
        if self._foreign(other):
            return NotImplemented
        out = list(self.coeffs) or [Fraction(0)]
        out[0] = out[0] + other
        return Poly(out, self.var)

    def __radd__(self, other):
        if self._foreign(other):
            return NotImplemented
        out = list(self.coeffs) or [Fraction(0)]
        out[0] = other + out[0]
        return Poly(out, self.var)

    def __sub__(self, other):
        if self._foreign(other):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        if self._foreign(other):
            return NotImplemented
        return (-self) + other

    def __mul__(self, other):
        if self._same(other):
            a, b = self.coeffs, other.coeffs
            if not a or not b:
                return Poly((), self.var)
            out = [Fraction(0)] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if not x:
                    continue
                for j, y in enumerate(b):
                    out[i + j] = out[i + j] + x * y
            return Poly(out, self.var)
        if self._foreign(other):
            return NotImplemented
        return Poly([c * other for c in self.coeffs], self.var)

    def __rmul__(self, other):
        if self._foreign(other):
            return NotImplemented
        return Poly([other * c for c in self.coeffs], self.var)

    def __truediv__(self, other):
        if self._same(other):
            return exact_div(self, other)
        if self._foreign(other):
            return NotImplemented
        inv = inverse(other)
        return Poly([c * inv for c in self.coeffs], self.var)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly([1], self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        return poly_divrem(self, other)

    def __floordiv__(self, other):
        return poly_divrem(self, other)[0]

    def __mod__(self, other):
        return poly_divrem(self, other)[1]

    # -- evaluation and transforms ---------------------------------------

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def subs(self, var: str, value):
        """Substitute ``value`` for ``var`` wherever it occurs in the tower."""
        if self.var == var:
            cs = [c.subs(var, value) if isinstance(c, Poly) else c for c in self.coeffs]
            acc = Fraction(0)
            for c in reversed(cs):
                acc = acc * value + c
            return acc
        return Poly(
            [c.subs(var, value) if isinstance(c, Poly) else c for c in self.coeffs],
            self.var,
        )

    def map_coeffs(self, fn: Callable) -> "Poly":
        return Poly([fn(c) for c in self.coeffs], self.var)

    def with_var(self, var: str) -> "Poly":
        return Poly(self.coeffs, var)

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def compose(self, inner) -> "Poly":
        """``self(inner)`` for a polynomial ``inner``."""
        acc = Poly((), inner.var)
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        return self * inverse(self.lc)

    def reversed(self, n: int | None = None) -> "Poly":
        """``x**n * p(1/x)``; ``n`` defaults to the degree."""
        if n is None:
            n = self.degree()
        if n < self.degree():
            raise ValueError("reversal degree below polynomial degree")
        cs = list(self.coeffs) + [Fraction(0)] * (n + 1 - len(self.coeffs))
        return Poly(cs[::-1], self.var)

    # -- display ----------------------------------------------------------

    def __repr__(self):
        return f"Poly({list(map(str, self.coeffs))}, var={self.var!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            if isinstance(c, Fraction):
                neg = c < 0
                mag = -c if neg else c
                body = mono if (mono and mag == 1) else f"{mag} {mono}".strip()
            else:
                neg = False
                body = f"({c}) {mono}".strip()
            parts.append((neg, body))
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, body in parts[1:]:
            out += (" - " if neg else " + ") + body
        return out


def poly_divrem(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Euclidean division ``a = q*b + r`` with ``deg r < deg b``."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if a.var != b.var:
        raise ValueError(f"variable mismatch: {a.var} vs {b.var}")
    inv = inverse(b.lc)
    n = b.degree()
    rem = list(a.coeffs)
    quot = [Fraction(0)] * max(len(rem) - n, 0)
    bc = b.coeffs
    for i in range(len(rem) - 1, n - 1, -1):
        c = rem[i]
        if not c:
            continue
        q = c * inv
        quot[i - n] = q
        for j in range(n + 1):
            rem[i - n + j] = rem[i - n + j] - q * bc[j]
    return Poly(quot, a.var), Poly(rem[:n], a.var)


def exact_div(a: Poly, b: Poly) -> Poly:
    q, r = poly_divrem(a, b)
    if r:
        raise ArithmeticError(f"{b} does not divide {a}")
    return q


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over a field of coefficients; ``gcd(0, 0) == 0``."""
    while b:
        a, b = b, poly_divrem(a, b)[1]
    return a.monic()


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g`` and ``g`` monic."""
    r0, r1 = a, b
    s0, s1 = Poly([1], a.var), Poly((), a.var)
    t0, t1 = Poly((), a.var), Poly([1], a.var)
    while r1:
        q, r = poly_divrem(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    inv = inverse(r0.lc)
    return r0 * inv, s0 * inv, t0 * inv


def even_part(p: Poly, var: str | None = None) -> Poly:
    """The polynomial ``q`` with ``q(x**2) == p(x)``; ``p`` must be even."""
    for i, c in enumerate(p.coeffs):
        if i % 2 and c:
            raise ValueError(f"odd-degree term x^{i} present in {p}")
    return Poly(p.coeffs[::2], var or p.var)


def poly_sqrt(p: Poly) -> Poly:
    """Exact square root of a monic polynomial of even degree."""
    if not p or p.lc != 1 or p.degree() % 2:
        raise ArithmeticError("square root needs a monic polynomial of even degree")
    n = p.degree() // 2
    g = [Fraction(0)] * n + [Fraction(1)]
    for i in range(1, n + 1):
        target = p.coeff(2 * n - i)
        acc = Fraction(0)
        for a in range(n - i + 1, n + 1):
            b = 2 * n - i - a
            if n - i < b <= n:
                acc += g[a] * g[b]
        g[n - i] = (target - acc) / 2
    root = Poly(g, p.var)
    if root * root != p:
        raise ArithmeticError(f"{p} is not a perfect square")
    return root


def integer_content_form(p: Poly) -> Poly:
    """Scale a rational polynomial to a primitive integer polynomial with positive lc."""
    from math import gcd, lcm

    if not p:
        return p
    den = 1
    for c in p.coeffs:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if ints[-1] < 0:
        g = -g
    return Poly([c // g for c in ints], p.var)


# -- Sturm sequences ------------------------------------------------------


def squarefree_part(p: Poly) -> Poly:
    if not p:
        raise ValueError("squarefree part of the zero polynomial")
    g = poly_gcd(p, p.derivative())
    return exact_div(p, g) if g.degree() > 0 else p


def sturm_sequence(p: Poly) -> list[Poly]:
    seq = [p, p.derivative()]
    while seq[-1]:
        seq.append(-poly_divrem(seq[-2], seq[-1])[1])
    seq.pop()
    return seq


def sign_changes(seq: Sequence[Poly], x) -> int:
    count = 0
    prev = 0
    for q in seq:
        v = q(x)
        s = (v > 0) - (v < 0)
        if s:
            if prev and s != prev:
                count += 1
            prev = s
    return count


def sturm_count(p: Poly, window) -> int:
    """Number of distinct real roots of ``p`` in the half-open ``[lo, hi)``.

    ``window`` is anything with ``lo`` and ``hi`` attributes, or a pair.
    """
    if not p:
        raise ValueError("Sturm count of the zero polynomial")
    lo, hi = _endpoints(window)
    if hi <= lo:
        return 0
    q = squarefree_part(p)
    seq = sturm_sequence(q)
    # V(lo) - V(hi) counts roots in (lo, hi]
    n = sign_changes(seq, lo) - sign_changes(seq, hi)
    if q(lo) == 0:
        n += 1
    if q(hi) == 0:
        n -= 1
    return n


def _endpoints(window):
    if hasattr(window, "lo"):
        return Fraction(window.lo), Fraction(window.hi)
    lo, hi = window
    return Fraction(lo), Fraction(hi)


def root_bound(p: Poly) -> Fraction:
    """Cauchy bound: every real root lies in ``(-B, B)``."""
    lc = abs(p.lc)
    return 1 + max((abs(c) / lc for c in p.coeffs[:-1]), default=Fraction(0))


def isolate_real_roots(p: Poly, lo=None, hi=None) -> list[tuple[Fraction, Fraction]]:
    """Disjoint half-open intervals ``[a, b)`` each holding exactly one root."""
    q = squarefree_part(p)
    if q.degree() < 1:
        return []
    seq = sturm_sequence(q)
    if lo is None or hi is None:
        b = root_bound(q)
        lo, hi = -b, b
    lo, hi = Fraction(lo), Fraction(hi)

    def count(a, b):
        n = sign_changes(seq, a) - sign_changes(seq, b)
        return n + (q(a) == 0) - (q(b) == 0)

    out = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        n = count(a, b)
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        m = (a + b) / 2
        stack.append((m, b))
        stack.append((a, m))
    return sorted(out)


def refine_root(p: Poly, a: Fraction, b: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Shrink ``[a, b)`` holding exactly one root of squarefree ``p`` below ``width``."""
    while b - a >= width:
        m = (a + b) / 2
        if p(m) == 0:
            return m, m + min(width, b - m) / 2
        if sturm_count(p, (a, m)) == 1:
            b = m
        else:
            a = m
    return a, b


def rational_roots_in(p: Poly, lo, hi) -> list[Fraction]:
    """Exact rational roots of a rational polynomial in ``[lo, hi)``.

    Works from Sturm isolation: a rational root of the primitive integer form
    has a denominator dividing its leading coefficient, so once an isolating
    interval is narrower than ``1/lc`` it holds at most one candidate.
    """
    if not p:
        raise ValueError("rational roots of the zero polynomial")
    q = integer_content_form(squarefree_part(p))
    if q.degree() < 1:
        return []
    lc = abs(int(q.lc))
    width = Fraction(1, 2 * lc)
    roots = []
    for a, b in isolate_real_roots(q, lo, hi):
        a, b = refine_root(q, a, b, width)
        for num in range(ceil(a * lc), floor(b * lc) + 1):
            cand = Fraction(num, lc)
            if a <= cand < b and q(cand) == 0:
                roots.append(cand)
    return sorted(roots)
