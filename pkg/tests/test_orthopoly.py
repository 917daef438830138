from fractions import Fraction
from math import comb

import mpmath
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from cubcert.exact import Poly, even_part
from cubcert.orthopoly import (
    MomentSequence,
    ScaledQuantity,
    chebyshev_t,
    chebyshev_u,
    dim_harm,
    dim_pstar,
    gegenbauer,
    gegenbauer_dim,
    gram_schmidt,
    minimal_poly_cos,
    moeller_bound,
    moment_inner,
    point_count_nonorigin,
    zonal,
)

T = sp.Symbol("t")


def to_sympy(p: Poly, var=T):
    return sum(sp.Rational(c.numerator, c.denominator) * var**i for i, c in enumerate(p.coeffs))


def sympy_gegenbauer(l, lam):
    # explicit sum: C_l^lam(t) = sum_k (-1)^k Gamma(l-k+lam)/(Gamma(lam) k! (l-2k)!) (2t)^(l-2k)
    out = 0
    for k in range(l // 2 + 1):
        coef = sp.rf(lam, l - k) / (sp.factorial(k) * sp.factorial(l - 2 * k))
        out += (-1) ** k * coef * (2 * T) ** (l - 2 * k)
    return sp.expand(out)


def test_gegenbauer_base_cases():
    assert gegenbauer(0, Fraction(7, 3)) == Poly([1], "t")
    assert gegenbauer(1, Fraction(7, 3)) == Poly([0, Fraction(14, 3)], "t")
    assert gegenbauer(2, 1) == Poly([-1, 0, 4], "t")


@pytest.mark.parametrize("lam", [Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(7, 2), Fraction(5, 3)])
def test_gegenbauer_matches_explicit_formula(lam):
    for l in range(0, 13):
        mine = to_sympy(gegenbauer(l, lam))
        ref = sympy_gegenbauer(l, sp.Rational(lam.numerator, lam.denominator))
        assert sp.expand(mine - ref) == 0


def test_gegenbauer_symbolic_specializes_to_numeric():
    for l in range(0, 13):
        sym = gegenbauer_dim(l, "d")
        for d in (3, 4, 7, 12):
            specialized = sym.map_coeffs(lambda c: c(d) if isinstance(c, Poly) else c)
            assert specialized == gegenbauer_dim(l, d)


def test_gegenbauer_recurrence_symbolic():
    lam = Poly([-1, Fraction(1, 2)], "d")
    t = Poly.gen("t")
    for l in range(2, 13):
        lhs = gegenbauer(l, lam) * l
        rhs = t * gegenbauer(l - 1, lam) * (2 * (lam + (l - 1))) - gegenbauer(l - 2, lam) * (lam * 2 + (l - 2))
        assert lhs == rhs


def test_chebyshev_against_sympy():
    x = sp.Symbol("x")
    for n in range(12):
        assert sp.expand(to_sympy(chebyshev_t(n), x) - sp.chebyshevt(n, x)) == 0
        assert sp.expand(to_sympy(chebyshev_u(n), x) - sp.chebyshevu(n, x)) == 0


def test_minimal_polynomials_known_values():
    assert str(minimal_poly_cos(7)) == "x^3 + 1/2 x^2 - 1/2 x - 1/8"
    assert str(minimal_poly_cos(11)) == "x^5 + 1/2 x^4 - x^3 - 3/8 x^2 + 3/16 x + 1/32"
    assert str(minimal_poly_cos(3)) == "x + 1/2"


@pytest.mark.parametrize("p", [9, 15, 1, 2, 4])
def test_minimal_polynomial_rejects_non_odd_primes(p):
    with pytest.raises(ValueError):
        minimal_poly_cos(p)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17, 19, 23])
def test_minimal_polynomial_numeric_root_and_sympy(p):
    f = minimal_poly_cos(p)
    assert f.degree() == (p - 1) // 2
    with mpmath.workdps(220):
        for l in range(1, (p - 1) // 2 + 1):
            c = mpmath.cos(2 * mpmath.pi * l / p)
            v = mpmath.mpf(0)
            for a in reversed(f.coeffs):
                v = v * c + mpmath.mpf(a.numerator) / a.denominator
            assert abs(v) < mpmath.mpf(10) ** -150
    x = sp.Symbol("x")
    ref = sp.Poly(sp.minimal_polynomial(sp.cos(2 * sp.pi / p), x), x).monic().as_expr()
    assert sp.expand(to_sympy(f, x) - ref) == 0


def test_dim_harm_examples():
    assert dim_harm(7, 0) == 1
    assert dim_harm(3, 2) == 5
    assert dim_harm(3, 1) == 3


@pytest.mark.parametrize("d", range(3, 26))
def test_dim_harm_is_zonal_at_one(d):
    for m in range(0, 9):
        assert zonal(2 * m, d)(1) == dim_harm(d, 2 * m)
        lhs = dim_harm(d, 2 * m) * (d - 2)
        assert lhs == (d + 4 * m - 2) * gegenbauer_dim(2 * m, d)(1)


def test_zonal_symbolic_division_is_exact():
    for l in range(1, 9):
        z = zonal(l, "d")
        for d in (3, 5, 9):
            specialized = z.map_coeffs(lambda c: c(d) if isinstance(c, Poly) else c)
            assert specialized == zonal(l, d)


def test_moeller_and_point_counts():
    assert moeller_bound(2, 2, True) == 7
    assert moeller_bound(5, 0, True) == 1
    assert moeller_bound(3, 6, True) == 1 + point_count_nonorigin(3, 3)
    assert point_count_nonorigin(3, 1) == 12
    assert dim_pstar(2, 2) == 4
    # the innermost layer of a (k, d) = (3, 20) rule would hold about 47868 of these
    assert point_count_nonorigin(20, 3) == 2 * (comb(25, 6) + comb(23, 4) + comb(21, 2)) == 372330
    assert 47868 < point_count_nonorigin(20, 3) / 3


@given(st.integers(1, 20), st.integers(1, 6))
@settings(max_examples=60)
def test_moeller_matches_binomial_count(d, k):
    assert point_count_nonorigin(d, k) + 1 == moeller_bound(d, 2 * k, True)


def test_scaled_quantity_units():
    a = ScaledQuantity(Fraction(1, 2), 1)
    b = ScaledQuantity(Fraction(1, 3), -1)
    assert (a * b).unit_exp == 0
    assert a + ScaledQuantity(0, 5) == a
    with pytest.raises(ValueError):
        a + b
    assert a / a == ScaledQuantity(1, 0)
    assert a.to_json() == {"value": "1/2", "unitExp": 1}


def test_moment_sequence_horizon():
    ms = MomentSequence(lambda m: Fraction(1, m + 1), horizon=4, label="t")
    assert ms[2] == ScaledQuantity(Fraction(1, 3), 1)
    with pytest.raises(ValueError):
        ms.value(5)
    assert ms.shifted(2).value(1) == Fraction(1, 4)
    assert ms.perturbed(1, 1).value(1) == Fraction(3, 2)


def _semicircle_moments():
    """``pi^-1 int_0^1 r^{2m} sqrt(1-r^2) dr`` by 60-digit quadrature, snapped to a rational."""

    def value(m):
        with mpmath.workdps(60):
            v = mpmath.quad(lambda r: r ** (2 * m) * mpmath.sqrt(1 - r**2), [0, 1]) / mpmath.pi
            q = Fraction(mpmath.nstr(v, 50, min_fixed=-100, max_fixed=100)).limit_denominator(2**50)
            assert abs(v - mpmath.mpf(q.numerator) / q.denominator) < mpmath.mpf(10) ** -45
        return q

    cache = {}
    return MomentSequence(lambda m: cache.setdefault(m, value(m)), unit_exp=1, label="semicircle", horizon=14)


def test_gram_schmidt_semicircle_reproduces_chebyshev_u():
    ms = _semicircle_moments()
    basis = gram_schmidt(ms, 6)
    for j, (q, n) in enumerate(basis):
        assert q == even_part(chebyshev_u(2 * j), "t").monic()
        assert n.is_positive()
    for i in range(7):
        for j in range(7):
            if i != j:
                assert moment_inner(basis.polys[i], basis.polys[j], ms) == 0
    assert basis.norms[0] == ms[0]


def test_gram_schmidt_rejects_indefinite_functional():
    bad = MomentSequence(lambda m: Fraction(1) if m == 0 else Fraction(-1), horizon=6)
    with pytest.raises(ValueError):
        gram_schmidt(bad, 2)


def test_gram_schmidt_is_deterministic():
    ms = _semicircle_moments()
    assert gram_schmidt(ms, 4) == gram_schmidt(ms, 4)
