"""Checks for candidate minimal formulas of degree 4k+1.

A candidate is called verified minimal when it passes the kernel conditions
(all non-antipodal pairs are kernel zeros, every weight is the reciprocal
kernel diagonal) and its size equals the Moeller lower bound.  The structural
consequences (origin, antipodality, k layers, constant weight per layer,
each layer a spherical (2k+3)-design) are reported alongside; a candidate
passes overall only when every condition holds.

Design criterion in use: points ``X`` on a sphere of radius ``r`` form a
spherical t-design iff ``sum_{x,y in X} C_j^{((d-2)/2)}(<x,y>/r^2) = 0`` for
``j = 1..t`` (``T_j`` in place of ``C_j`` when ``d = 2``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations
from math import comb, prod

from .exact import FieldElement, NumberField
from .kernels import _dot, _eval_terms, kernel_eval, kernel_eval_origin, xu_kernel
from .orthopoly import (
    ScaledQuantity,
    chebyshev_t,
    gegenbauer_dim,
    moeller_bound,
    point_count_nonorigin,
)
from .quadrature import radial_moment


class FormulaError(ValueError):
    pass


def _sign(x) -> int:
    if isinstance(x, FieldElement):
        return x.sign()
    return (x > 0) - (x < 0)


def _cmp(x, y) -> int:
    return _sign(x - y)


def exact_json(x):
    """``"p/q"`` for rationals, residue coefficients for field elements."""
    if isinstance(x, FieldElement):
        r = x.is_rational()
        if r is not None:
            return str(r)
        return [str(c) for c in x.coefficients()]
    if isinstance(x, ScaledQuantity):
        return x.to_json()
    return str(Fraction(x))


# -- candidate formulas -----------------------------------------------------


@dataclass
class CandidateFormula:
    dimension: int
    degree: int
    points: list
    weights: list
    integral: str = "xu-4k1"
    field: NumberField | None = None

    def __post_init__(self):
        self.points = [tuple(_coerce(c) for c in pt) for pt in self.points]
        self.weights = [w if isinstance(w, ScaledQuantity) else ScaledQuantity(w, 1) for w in self.weights]
        if len(self.points) != len(self.weights):
            raise FormulaError(f"{len(self.points)} points but {len(self.weights)} weights")
        if not self.points:
            raise FormulaError("empty formula")
        for i, pt in enumerate(self.points):
            if len(pt) != self.dimension:
                raise FormulaError(f"point {i} has {len(pt)} coordinates, expected {self.dimension}")
            for c in pt:
                if isinstance(c, FieldElement) and (self.field is None or c.field != self.field):
                    raise FormulaError(f"point {i}: coordinate outside the declared field")
        seen = {}
        for i, pt in enumerate(self.points):
            if pt in seen:
                raise FormulaError(f"duplicate point: {seen[pt]} and {i}")
            seen[pt] = i
        for i, w in enumerate(self.weights):
            if w.sign() <= 0:
                raise FormulaError(f"weight {i} is not positive")

    @property
    def k(self) -> int:
        if self.degree % 4 != 1:
            raise FormulaError(f"degree {self.degree} is not of the form 4k+1")
        return (self.degree - 1) // 4

    def origin_index(self) -> int | None:
        for i, pt in enumerate(self.points):
            if not any(pt):
                return i
        return None

    def __len__(self):
        return len(self.points)

    def __eq__(self, other):
        return (
            isinstance(other, CandidateFormula)
            and self.dimension == other.dimension
            and self.degree == other.degree
            and self.integral == other.integral
            and self.field == other.field
            and self.points == other.points
            and self.weights == other.weights
        )


def _coerce(c):
    if isinstance(c, (FieldElement, Fraction)):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise FormulaError(f"unsupported coordinate type {type(c).__name__}")


# -- layers ------------------------------------------------------------------


@dataclass
class LayerProfile:
    radius_sq: object
    members: list
    inner_products: list
    weights: list
    antipodal: bool

    @property
    def constant_weight(self) -> bool:
        return all(w == self.weights[0] for w in self.weights)

    def to_json(self) -> dict:
        return {
            "radiusSq": exact_json(self.radius_sq),
            "members": self.members,
            "innerProducts": [exact_json(a) for a in self.inner_products],
            "weights": [w.to_json() for w in self.weights],
            "antipodal": self.antipodal,
            "constantWeight": self.constant_weight,
        }


def _negation_closed(points) -> bool:
    s = set(points)
    return all(tuple(-c for c in pt) in s for pt in points)


def layer_analysis(F: CandidateFormula) -> list[LayerProfile]:
    """Group the non-origin points by exact squared radius, innermost first."""
    groups: dict = {}
    for i, pt in enumerate(F.points):
        r = _dot(pt, pt)
        if r:
            groups.setdefault(r, []).append(i)
    out = []
    for r in sorted(groups, key=cmp_to_key(_cmp)):
        idx = groups[r]
        pts = [F.points[i] for i in idx]
        ips = []
        for a, b in combinations(pts, 2):
            v = _dot(a, b) / r
            if v not in ips:
                ips.append(v)
        ips.sort(key=cmp_to_key(_cmp))
        out.append(LayerProfile(r, idx, ips, [F.weights[i] for i in idx], _negation_closed(pts)))
    return out


def _zonal_sum_poly(j: int, d: int):
    return 2 * chebyshev_t(j) if d == 2 else gegenbauer_dim(j, d)


def design_strength(points, t: int, d: int | None = None) -> bool:
    """Whether ``points`` (all on one sphere) form a spherical ``t``-design."""
    if not points:
        raise ValueError("no points")
    d = d or len(points[0])
    r = _dot(points[0], points[0])
    for pt in points[1:]:
        if _dot(pt, pt) != r:
            raise ValueError("design_strength needs points of one radius")
    gram = [_dot(x, y) / r for x in points for y in points]
    for j in range(1, t + 1):
        C = _zonal_sum_poly(j, d)
        acc = Fraction(0)
        for g in gram:
            acc = acc + C(g)
        if acc:
            return False
    return True


def max_design_strength(points, cap: int = 20, d: int | None = None) -> int:
    t = 0
    while t < cap and design_strength(points, t + 1, d):
        t += 1
    return t


# -- the Mysovskikh conditions -----------------------------------------------


@dataclass
class VerifyReport:
    conditions: dict
    witnesses: list
    layers: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.conditions.values())

    def to_json(self) -> dict:
        return {
            "pass": self.passed,
            "conditions": dict(self.conditions),
            "witnesses": self.witnesses,
            "layers": [L.to_json() for L in self.layers],
        }


def _witness_key(w):
    return (w["condition"], w.get("points", []))


def verify_mysovskikh(F: CandidateFormula, K=None) -> VerifyReport:
    k = F.k
    d = F.dimension
    if K is None:
        K = xu_kernel(d, k)
    elif K.k != k or K.d != d:
        raise FormulaError(f"kernel is for (k={K.k}, d={K.d}), formula needs (k={k}, d={d})")
    pts = F.points
    origin = F.origin_index()
    index = {pt: i for i, pt in enumerate(pts)}
    witnesses = []

    zero_ok = True
    for i, j in combinations(range(len(pts)), 2):
        x, y = pts[i], pts[j]
        if index.get(tuple(-c for c in x)) == j:
            continue
        if i == origin or j == origin:
            v = kernel_eval_origin(K, y if i == origin else x)
        else:
            v = kernel_eval(K, x, y)
        if v.value:
            zero_ok = False
            witnesses.append({"condition": "kernel_zero", "points": [i, j], "value": exact_json(v.value)})

    weight_ok = True
    for i, (x, w) in enumerate(zip(pts, F.weights)):
        if i == origin:
            target = kernel_eval_origin(K).inv()
        else:
            diag = _eval_terms(K.terms, *([_dot(x, x)] * 3))
            target = ScaledQuantity(K.prefactor.value * diag * 2, K.prefactor.unit_exp).inv()
        if w != target:
            weight_ok = False
            witnesses.append(
                {
                    "condition": "weights",
                    "points": [i],
                    "value": w.to_json(),
                    "expected": target.to_json(),
                }
            )

    layers = layer_analysis(F)
    count = moeller_bound(d, 2 * k, origin is not None)
    conditions = {
        "kernel_zero": zero_ok,
        "weights": weight_ok,
        "moeller_count": len(pts) == count,
        "antipodal": _negation_closed(pts),
        "origin": origin is not None,
        "layer_count": len(layers) == k,
        "constant_weight_per_layer": all(L.constant_weight for L in layers),
        "design_strength": all(
            design_strength([pts[i] for i in L.members], 2 * k + 3, d) for L in layers
        ),
    }
    if not conditions["moeller_count"]:
        witnesses.append({"condition": "moeller_count", "value": len(pts), "expected": count})
    for n, L in enumerate(layers):
        if not L.constant_weight:
            witnesses.append({"condition": "constant_weight_per_layer", "points": L.members, "layer": n})
    witnesses.sort(key=_witness_key)
    return VerifyReport(conditions, witnesses, layers)


# -- direct exactness ----------------------------------------------------------


def _double_factorial(n: int) -> int:
    return prod(range(n, 0, -2)) if n > 0 else 1


def sphere_moment(alpha, d: int | None = None) -> Fraction:
    """Average of ``xi^alpha`` over the unit sphere in ``R^d``.

    ``prod (alpha_i - 1)!! / prod_{j < |alpha|/2} (d + 2j)``; zero if any
    exponent is odd.
    """
    d = d or len(alpha)
    if any(a % 2 for a in alpha):
        return Fraction(0)
    s = sum(alpha) // 2
    num = prod(_double_factorial(a - 1) for a in alpha)
    den = prod(d + 2 * j for j in range(s))
    return Fraction(num, den)


def _exponents(d: int, n: int):
    if d == 1:
        yield (n,)
        return
    for a in range(n, -1, -1):
        for rest in _exponents(d - 1, n - a):
            yield (a,) + rest


def monomial_moment(alpha, k: int) -> ScaledQuantity:
    """``int x^alpha W dx`` for the xu-4k1 weight, in units of ``U``."""
    n = sum(alpha)
    if n % 2 or any(a % 2 for a in alpha):
        return ScaledQuantity(Fraction(0), 1)
    if n // 2 > 2 * k:
        raise ValueError(f"moment of degree {n} unavailable for k={k}")
    r = radial_moment(k, n // 2)
    return ScaledQuantity(r.value * sphere_moment(alpha), r.unit_exp)


def verify_direct(F: CandidateFormula, maxdeg: int) -> bool:
    return not direct_failures(F, maxdeg, first_only=True)


def direct_failures(F: CandidateFormula, maxdeg: int, first_only: bool = False) -> list:
    if F.integral != "xu-4k1":
        raise ValueError(f"moments unavailable for integral {F.integral!r}")
    k = F.k
    if maxdeg > 4 * k + 1:
        raise ValueError(f"moments available through degree {4 * k + 1}")
    d = F.dimension
    powers = []
    for pt in F.points:
        table = []
        for c in pt:
            row = [Fraction(1)]
            for _ in range(maxdeg):
                row.append(row[-1] * c)
            table.append(row)
        powers.append(table)
    bad = []
    for n in range(maxdeg + 1):
        for alpha in _exponents(d, n):
            acc = ScaledQuantity(Fraction(0), 1)
            for table, w in zip(powers, F.weights):
                term = prod((table[i][a] for i, a in enumerate(alpha)), start=Fraction(1))
                acc = acc + w * term
            if acc != monomial_moment(alpha, k):
                bad.append(alpha)
                if first_only:
                    return bad
    return bad


# -- combinatorial preconditions ----------------------------------------------


def lrs_ratios(distances_sq) -> list[tuple[Fraction, bool]]:
    """``prod_{j != i} a_j^2 / (a_j^2 - a_i^2)`` for each ``i`` with an integrality flag."""
    vals = [Fraction(a) for a in distances_sq]
    if len(set(vals)) != len(vals):
        raise ValueError("duplicate distances")
    if any(v <= 0 for v in vals):
        raise ValueError("distances must be positive")
    out = []
    for i, ai in enumerate(vals):
        r = prod((aj / (aj - ai) for j, aj in enumerate(vals) if j != i), start=Fraction(1))
        out.append((r, r.denominator == 1))
    return out


def rationality_preconditions(p: int, d: int, N: int | None = None) -> dict:
    """Pigeonhole bound and the dimension hypothesis behind rational layers.

    ``p`` is the number of layers (``k`` for degree ``4k+1``).  ``N`` is the
    number of non-origin points; it defaults to the Moeller count.
    """
    if p < 2:
        raise ValueError("p must be >= 2")
    if N is None:
        N = point_count_nonorigin(d, p)
    largest_layer = Fraction(N, p)
    bound = 4 * comb(d + 2 * p - 2, 2 * p - 1) + 2
    pigeonhole = largest_layer >= bound
    hyp = d >= 4 * p * p - 2 * p + 1
    return {
        "p": p,
        "d": d,
        "largestLayerAtLeast": str(largest_layer),
        "bound": bound,
        "pigeonhole": pigeonhole,
        "dimensionHypothesis": hyp,
        "route": "rational-elimination" if hyp and pigeonhole else "integer-gap",
    }
