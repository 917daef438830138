"""Reproducing kernels of the even polynomial space P*_{2k}(R^d).

Both kernel types expand to the same canonical form: a polynomial in
``a = ||x||^2``, ``b = ||y||^2`` and ``p = <x, y>`` (only even powers of
``p``) times a separate :class:`ScaledQuantity` prefactor.  Zero tests ignore
the prefactor; weight formulas use it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence, Union

from .exact import Poly, RatFunc
from .orthopoly import (
    MomentSequence,
    OrthoBasis,
    ScaledQuantity,
    _is_symbolic,
    chebyshev_u,
    dim_symbol,
    gegenbauer_dim,
    gram_schmidt,
    zonal,
)

Terms = dict  # (i, j, l) -> coefficient of a^i b^j p^l


def _cross_sum(basis: OrthoBasis) -> dict:
    """``sum_j q_j(a) q_j(b) / |q_j|^2`` as ``{(i, j): coeff}`` (unit stripped)."""
    out: dict = {}
    for q, n in basis:
        inv = 1 / n.value
        for i, x in enumerate(q.coeffs):
            if not x:
                continue
            for j, y in enumerate(q.coeffs):
                if y:
                    out[(i, j)] = out.get((i, j), 0) + x * y * inv
    return {key: v for key, v in out.items() if v}


def _add(terms: dict, key, value):
    v = terms.get(key, 0) + value
    if v:
        terms[key] = v
    else:
        terms.pop(key, None)


@dataclass(frozen=True)
class KernelRep:
    """Kernel assembled from moment-driven Gram-Schmidt bases, one block per ``m``."""

    k: int
    d: int
    bases: tuple
    radial: tuple
    angular: tuple
    prefactor: ScaledQuantity
    terms: dict

    def to_json(self) -> dict:
        return {
            "kind": "moment",
            "k": self.k,
            "d": self.d,
            "prefactor": self.prefactor.to_json(),
            "radial": [
                [[i, j, str(c)] for (i, j), c in sorted(block.items())] for block in self.radial
            ],
            "terms": _terms_json(self.terms),
        }


@dataclass(frozen=True)
class XuKernelPoly:
    """Closed-form kernel for the weight ``sqrt(||x||^2-1)/||x||^{4k+d+2}``.

    ``poly`` holds ``sum (d+4m-2) U_{2j}(u) U_{2j}(v) C_{2m}(s)`` in
    ``u = 1/||x||``, ``v = 1/||y||``, ``s = <x,y>/(||x|| ||y||)``; the factor
    ``(||x|| ||y||)^{2k}`` is implicit and the constant ``4/(d-2)`` rides in
    ``prefactor`` with unit exponent -1.
    """

    k: int
    d: Union[int, str]
    poly: dict
    prefactor: ScaledQuantity
    terms: dict

    def to_json(self) -> dict:
        return {
            "kind": "xu",
            "k": self.k,
            "d": self.d,
            "prefactor": {"value": str(self.prefactor.value), "unitExp": self.prefactor.unit_exp},
            "poly": [[eu, ev, es, str(c)] for (eu, ev, es), c in sorted(self.poly.items())],
            "terms": _terms_json(self.terms),
        }


Kernel = Union[KernelRep, XuKernelPoly]


def _terms_json(terms: dict) -> list:
    return [[i, j, l, str(c)] for (i, j, l), c in sorted(terms.items())]


def _homogenized_angular(m: int, Z: Poly, radial: dict, terms: dict):
    # (ab)^m Z(p / sqrt(ab)) = sum_e z_e p^e (ab)^{m - e/2}
    for e, z in enumerate(Z.coeffs):
        if not z:
            continue
        if e % 2:
            raise AssertionError("odd angular power in an even kernel")
        shift = m - e // 2
        for (i, j), r in radial.items():
            _add(terms, (i + shift, j + shift, e), r * z)


def build_kernel(moments: MomentSequence, d: int, k: int) -> KernelRep:
    """Kernel from the radial moments of an arbitrary spherically symmetric weight.

    Block ``m`` uses the moments shifted by ``2m`` (weight times ``r^{4m}``)
    and the zonal factor ``(d+4m-2)/(d-2) C_{2m}^{((d-2)/2)}``.
    """
    if not isinstance(d, int) or d < 3:
        raise ValueError("build_kernel needs an integer d >= 3")
    if moments.horizon < 2 * k:
        raise ValueError(f"moments defined through {moments.horizon}, need {2 * k}")
    bases, radial, angular = [], [], []
    terms: dict = {}
    for m in range(k + 1):
        basis = gram_schmidt(moments.shifted(2 * m), k - m)
        cross = _cross_sum(basis)
        Z = zonal(2 * m, d)
        bases.append(basis)
        radial.append(cross)
        angular.append(Z)
        _homogenized_angular(m, Z, cross, terms)
    return KernelRep(
        k,
        d,
        tuple(bases),
        tuple(radial),
        tuple(angular),
        ScaledQuantity(1, -moments.unit_exp),
        terms,
    )


def xu_kernel(d, k: int) -> XuKernelPoly:
    if k < 0:
        raise ValueError("k must be >= 0")
    symbolic = _is_symbolic(d)
    if not symbolic and d < 3:
        raise ValueError("xu_kernel needs d >= 3")
    D = dim_symbol() if symbolic else Fraction(d)
    poly: dict = {}
    U = [chebyshev_u(2 * j) for j in range(k + 1)]
    for m in range(k + 1):
        C = gegenbauer_dim(2 * m, d)
        mult = D + (4 * m - 2)
        for j in range(k - m + 1):
            for eu, cu in enumerate(U[j].coeffs):
                if not cu:
                    continue
                for ev, cv in enumerate(U[j].coeffs):
                    if not cv:
                        continue
                    for es, cs in enumerate(C.coeffs):
                        if cs:
                            _add(poly, (eu, ev, es), cs * (cu * cv) * mult)
    terms: dict = {}
    for (eu, ev, es), c in poly.items():
        if eu % 2 or ev % 2 or es % 2:
            raise AssertionError("odd power of a norm in the closed-form kernel")
        i, j = k - (eu + es) // 2, k - (ev + es) // 2
        if i < 0 or j < 0:
            raise AssertionError("negative norm power after homogenization")
        _add(terms, (i, j, es), c)
    if symbolic:
        pref = RatFunc(Poly([4], "d"), Poly([-2, 1], "d"))
    else:
        pref = Fraction(4, d - 2)
    return XuKernelPoly(k, d, poly, ScaledQuantity(pref, -1), terms)


def _dot(x: Sequence, y: Sequence):
    if len(x) != len(y):
        raise ValueError("vectors of different length")
    acc = Fraction(0)
    for a, b in zip(x, y):
        acc = acc + a * b
    return acc


def _eval_terms(terms: dict, a, b, p):
    acc = Fraction(0)
    apow, bpow, ppow = {0: 1}, {0: 1}, {0: 1}

    def power(cache, base, n):
        if n not in cache:
            cache[n] = base**n if n else 1
        return cache[n]

    for (i, j, l), c in terms.items():
        if isinstance(c, Poly):
            raise TypeError("symbolic-dimension kernel cannot be evaluated at points")
        acc = acc + c * power(apow, a, i) * power(bpow, b, j) * power(ppow, p, l)
    return acc


def kernel_eval(K: Kernel, x: Sequence, y: Sequence) -> ScaledQuantity:
    """Exact ``K(x, y)`` for nonzero ``x`` and ``y``."""
    a, b, p = _dot(x, x), _dot(y, y), _dot(x, y)
    if not a or not b:
        raise ValueError("zero vector passed to the nonzero branch; use kernel_eval_origin")
    val = _eval_terms(K.terms, a, b, p)
    return ScaledQuantity(K.prefactor.value * val, K.prefactor.unit_exp)


def kernel_eval_origin(K: Kernel, x: Sequence | None = None) -> ScaledQuantity:
    """``K(x, 0)``; ``x = None`` (or a zero vector) gives ``K(0, 0)``.

    For :class:`KernelRep` only the ``m = 0`` radial block contributes.  The
    closed form is stated for nonzero arguments, so for :class:`XuKernelPoly`
    this is the value of its polynomial extension.
    """
    a = _dot(x, x) if x is not None else Fraction(0)
    if isinstance(K, KernelRep):
        val = Fraction(0)
        for (i, j), c in K.radial[0].items():
            if j == 0:
                val = val + c * (a**i if i else 1)
    else:
        val = Fraction(0)
        for (i, j, l), c in K.terms.items():
            if j == 0 and l == 0:
                val = val + c * (a**i if i else 1)
    return ScaledQuantity(K.prefactor.value * val, K.prefactor.unit_exp)


def normalized_terms(K: Kernel) -> tuple[int, dict]:
    """Prefactor folded into the coefficients: ``(unit_exp, terms)``."""
    v = K.prefactor.value
    return K.prefactor.unit_exp, {key: c * v for key, c in K.terms.items()}


def kernels_equal(K1: Kernel, K2: Kernel) -> bool:
    u1, t1 = normalized_terms(K1)
    u2, t2 = normalized_terms(K2)
    return u1 == u2 and t1 == t2


# -- the one-dimensional inversion identity --------------------------------


def dual_moments(mu: MomentSequence, k: int) -> MomentSequence:
    """Moments of ``gamma(y) = y^{-4k-2} mu(1/y)`` on (0, 1].

    With ``x = 1/y``: ``int_0^1 y^{2n} gamma(y) dy = int_1^inf x^{4k-2n} mu(x) dx``,
    so the dual moment at ``n`` is the original moment at ``2k - n``.
    """
    if mu.horizon < 2 * k:
        raise ValueError(f"moment horizon {mu.horizon} too small for k={k}")
    return MomentSequence(
        lambda n: mu.value(2 * k - n),
        mu.unit_exp,
        f"dual({mu.label})",
        2 * k,
    )


def chebyshev_pair(k: int) -> tuple[MomentSequence, MomentSequence]:
    """Moments (coefficients of pi) of ``sqrt(x^2-1) x^{-(4k+3)}`` on [1, inf)
    and of ``sqrt(1-y^2)`` on (0, 1], each computed from its own closed form:
    ``int_0^1 y^{2n} sqrt(1-y^2) dy = pi Cat(n) / 4^{n+1}`` and
    ``int_1^inf x^{2n} sqrt(x^2-1) x^{-4k-3} dx = B(2k-n+1/2, 3/2) / 2``.
    """

    def cat(n):
        return comb(2 * n, n) // (n + 1)

    def mu(n):
        m = 2 * k - n
        # B(m + 1/2, 3/2) / 2 = (pi / 4) * (2m)! / (4^m m! (m+1)!)
        return Fraction(cat(m), 4 ** (m + 1))

    def gamma(n):
        return Fraction(cat(n), 4 ** (n + 1))

    return (
        MomentSequence(mu, 1, f"sqrt(x^2-1)x^-{4 * k + 3} on [1,inf)", 2 * k),
        MomentSequence(gamma, 1, "sqrt(1-y^2) on (0,1]", 2 * k),
    )


def _kernel_1d(basis: OrthoBasis, reverse_to: int | None = None) -> dict:
    out: dict = {}
    for q, n in basis:
        if reverse_to is not None:
            q = q.reversed(reverse_to)
        inv = 1 / n.value
        for i, x in enumerate(q.coeffs):
            for j, y in enumerate(q.coeffs):
                if x and y:
                    _add(out, (i, j), x * y * inv)
    return out


def sv_identity_check(
    k: int, mu_moments: MomentSequence, gamma_moments: MomentSequence | None = None
) -> bool:
    """Check ``K_2(x, y) == (xy)^{2k} K_1(1/x, 1/y)`` as a polynomial identity.

    ``K_1`` is built from ``mu_moments`` on [1, inf), ``K_2`` from
    ``gamma_moments`` on (0, 1]; without the latter the dual moments are
    derived from ``mu_moments``.  Both kernels are compared in the squared
    variables ``X = x^2``, ``Y = y^2``.
    """
    if mu_moments.horizon < 2 * k:
        raise ValueError(f"moment horizon {mu_moments.horizon} too small for k={k}")
    gamma = gamma_moments if gamma_moments is not None else dual_moments(mu_moments, k)
    try:
        b1 = gram_schmidt(mu_moments, k, positive=False)
        b2 = gram_schmidt(gamma, k, positive=False)
    except ValueError:
        # a vanishing norm: no orthogonal basis, so no kernel to compare
        return False
    lhs = _kernel_1d(b2)
    rhs = _kernel_1d(b1, reverse_to=k)
    return lhs == rhs and mu_moments.unit_exp == gamma.unit_exp
