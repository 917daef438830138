"""Closed-form radial Gaussian quadrature for the weight sqrt(r^2-1) r^-(4k+3) on [1, inf).

Normalizations used throughout:

* ``radial_moment(k, l)`` is the full d-dimensional moment
  ``int ||x||^{2l} W dx`` as a rational multiple of ``U = pi*|S^{d-1}|``.
  Substituting ``r^2 = 2/(t+1)`` gives
  ``int_1^inf r^{2l} sqrt(r^2-1) r^{-4k-3} dr = (1/4) J_{2k-l}`` with
  ``J_m = int_{-1}^{1} ((t+1)/2)^m sqrt((1-t)/(1+t)) dt = pi * Cat(m) / 4^m``.
  (Equivalently ``(1/8) int ((t+1)/2)^{2k-l-1} sqrt(1-t^2) dt``; the two
  integrands differ by the factor ``(1+t)/2``.)
* Node weights of the one-dimensional rule are stored as coefficients of
  ``pi``: the rule integrates ``pi^-1 int f(t) sqrt((1-t)/(1+t)) dt``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

import mpmath

from .exact import FieldElement, NumberField
from .orthopoly import (
    MomentSequence,
    ScaledQuantity,
    chebyshev_t,
    is_prime,
    minimal_poly_cos,
)


def catalan(m: int) -> int:
    return comb(2 * m, m) // (m + 1)


def chebyshev_moment(m: int) -> Fraction:
    """``J_m / pi`` for the one-dimensional weight ``sqrt((1-t)/(1+t))``."""
    if m < 0:
        raise ValueError("negative moment index")
    return Fraction(catalan(m), 4**m)


def radial_moment(k: int, ell: int) -> ScaledQuantity:
    if not 0 <= ell <= 2 * k:
        raise ValueError(f"moment index {ell} outside 0..{2 * k}")
    m = 2 * k - ell
    return ScaledQuantity(Fraction(catalan(m), 4 ** (m + 1)), 1)


def xu_moments(k: int) -> MomentSequence:
    return MomentSequence(
        lambda ell: radial_moment(k, ell).value,
        unit_exp=1,
        label=f"xu-4k1[k={k}]",
        horizon=2 * k,
    )


@lru_cache(maxsize=None)
def cos_field(p: int) -> NumberField:
    """Q[c]/(f_p) with ``c = cos(2*pi/p)``."""
    return NumberField(
        minimal_poly_cos(p, "c"),
        "c",
        embedding=lambda: mpmath.cos(2 * mpmath.pi / p),
    )


def cos_multiple(field: NumberField, i: int) -> FieldElement:
    """``cos(2*i*pi/p) = T_i(c)`` reduced into the field."""
    return field(chebyshev_t(i, field.generator))


def sin_sq(field: NumberField, i: int) -> FieldElement:
    """``sin(i*pi/p)**2 = (1 - cos(2*i*pi/p)) / 2``."""
    return (1 - cos_multiple(field, i)) / 2


@dataclass(frozen=True)
class LayerData:
    index: int
    radius_sq: FieldElement
    weight_sum: ScaledQuantity
    node: FieldElement
    node_weight: FieldElement

    def to_json(self, dps: int = 50) -> dict:
        def enc(x: FieldElement):
            return {
                "residue": [str(c) for c in x.coefficients()],
                "approx": mpmath.nstr(x.approx(dps), dps),
            }

        return {
            "index": self.index,
            "node": enc(self.node),
            "nodeWeight": {**enc(self.node_weight), "unit": "pi"},
            "radiusSq": enc(self.radius_sq),
            "weightSum": {**enc(self.weight_sum.value), "unitExp": self.weight_sum.unit_exp},
        }


def _check_k(k: int) -> int:
    p = 2 * k + 1
    if k < 1:
        raise ValueError("k must be >= 1")
    if not is_prime(p):
        raise ValueError(f"2k+1 = {p} is composite")
    return p


def gauss_layers(k: int) -> list[LayerData]:
    p = _check_k(k)
    F = cos_field(p)
    out = []
    for i in range(1, k + 1):
        node = cos_multiple(F, i)
        node_weight = Fraction(2, p) * (1 - node)
        radius_sq = 2 / (1 + node)
        weight_sum = ScaledQuantity(node_weight / 4 * radius_sq ** (-2 * k), 1)
        out.append(LayerData(i, radius_sq, weight_sum, node, node_weight))
    return out


def quadrature_exactness(k: int, layers: list[LayerData] | None = None) -> bool:
    """Whether the layer rule reproduces ``J_m / pi`` for ``m = 0..2k-1`` exactly."""
    if layers is None:
        layers = gauss_layers(k)
    for m in range(2 * k):
        total = sum((L.node_weight * ((L.node + 1) / 2) ** m for L in layers), Fraction(0))
        if total != chebyshev_moment(m):
            return False
    return True
