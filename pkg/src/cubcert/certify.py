"""Nonexistence certificates for minimal degree-(4k+1) rules of the xu-4k1 integral.

Two routes:

* rational elimination (large d): on a layer ``l`` with all normalized inner
  products rational, every distinct non-antipodal pair gives a zero of the
  kernel.  On that layer ``||x||^-2 = (1 + c)/2`` with
  ``c = cos(2 l pi / (2k+1))``, so the zero condition is a polynomial in ``c``
  and ``A = <x,y>^2 / R_l^2`` with rational coefficients.  Since ``A`` is
  rational, the remainder modulo the minimal polynomial of ``c`` must vanish
  coefficientwise.  For prime ``2k+1`` that minimal polynomial does not depend
  on ``l``, so one reduction covers every layer.
* integer gap (small d): the number of points on the innermost layer equals an
  explicit sum of ``sin^2`` values times harmonic dimensions; when that sum is
  not an integer no rule exists.  The exact route shows it is irrational in
  Q(cos(2 pi/(2k+1))); the interval route brackets it between consecutive
  integers with certified sine bounds.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from math import ceil, floor, factorial

import mpmath

from . import __version__
from .exact import (
    FieldElement,
    IntervalRat,
    Poly,
    RatFunc,
    even_part,
    exact_div,
    field_is_rational,
    interval_contains_integer,
    poly_divrem,
    poly_gcd,
    rational_roots_in,
    sturm_count,
)
from .kernels import _eval_terms, xu_kernel
from .orthopoly import (
    ScaledQuantity,
    _is_symbolic,
    chebyshev_u,
    dim_harm,
    dim_symbol,
    is_prime,
    minimal_poly_cos,
    zonal,
)
from .quadrature import cos_field, gauss_layers, sin_sq
from .verifier import rationality_preconditions

# pi to 60 decimals, truncated, and the next 60-decimal number above it
PI_LO = Fraction("3.141592653589793238462643383279502884197169399375105820974944")
PI_HI = PI_LO + Fraction(1, 10**60)

DEFAULT_N_MAX = 40


def _prime_p(k: int) -> int:
    p = 2 * k + 1
    if k < 1 or not is_prime(p):
        raise ValueError(f"2k+1 = {p} is not an odd prime")
    return p


def elimination_threshold(k: int) -> int:
    return 4 * k * k - 2 * k + 1


# -- the kernel-zero equation ----------------------------------------------


@dataclass(frozen=True)
class ZeroEquation:
    """Kernel-zero condition on one layer as a polynomial in ``c`` over Q[d][A] (or Q[A])."""

    k: int
    d: object
    poly: Poly


@dataclass(frozen=True)
class CoefficientSystem:
    k: int
    d: object
    coeffs: tuple
    modulus: Poly

    def to_json(self) -> list:
        return [[str(a) for a in c.coeffs] for c in self.coeffs]


def _layer_radial_sum(n: int) -> Poly:
    """``sum_{j<=n} U_{2j}(z)^2`` with ``z^2 = (1+c)/2``, as a polynomial in c."""
    half = Poly([Fraction(1, 2), Fraction(1, 2)], "c")
    acc = Poly((), "c")
    for j in range(n + 1):
        u = chebyshev_u(2 * j, "z")
        acc = acc + even_part(u * u, "w").compose(half)
    return acc


def zero_equation(k: int, d="d") -> ZeroEquation:
    """``4^-k sum_m Z_{2m}(sqrt A) sum_{j<=k-m} U_{2j}(sqrt((1+c)/2))^2``.

    This is the closed-form kernel at two points of one layer with the
    positive factor ``4 (||x|| ||y||)^{2k} / (pi (d-2) |S^{d-1}|)`` removed and
    rescaled by ``4^-k/(d-2)``; ``Z_{2m}`` is the zonal harmonic
    ``(d+4m-2)/(d-2) C_{2m}^{((d-2)/2)}``.
    """
    _prime_p(k)
    if not _is_symbolic(d) and d < 3:
        raise ValueError("d must be >= 3")
    scale = Fraction(1, 4**k)
    total = Poly((), "c")
    for m in range(k + 1):
        G = even_part(zonal(2 * m, d), "A")
        S = _layer_radial_sum(k - m)
        total = total + Poly([G * (s * scale) for s in S.coeffs], "c")
    return ZeroEquation(k, d, total)


def reduce_and_extract(eq: ZeroEquation) -> CoefficientSystem:
    f = minimal_poly_cos(2 * eq.k + 1, "c")
    _, r = poly_divrem(eq.poly, f)
    zero = Poly((), "A")
    coeffs = tuple(r.coeff(i) if r.coeff(i) else zero for i in range(f.degree()))
    return CoefficientSystem(eq.k, eq.d, coeffs, f)


# -- symbolic elimination ---------------------------------------------------


def subs_ratfunc(p: Poly, value: RatFunc) -> RatFunc:
    """Evaluate a polynomial in A with Q[d] coefficients at a rational function of d."""
    acc = RatFunc(0)
    for c in reversed(p.coeffs):
        acc = acc * value + c
    return acc


def _linear_root(L: Poly) -> RatFunc:
    if L.degree() != 1:
        raise ArithmeticError(f"expected a linear polynomial in A, got degree {L.degree()}")
    return RatFunc(-_as_dpoly(L.coeffs[0]), _as_dpoly(L.coeffs[1]))


def _as_dpoly(c) -> Poly:
    return c if isinstance(c, Poly) else Poly([c], "d")


def _strip(p: Poly, factor: Poly) -> Poly:
    return p.map_coeffs(lambda c: exact_div(_as_dpoly(c), factor))


@dataclass
class EliminationTrace:
    k: int
    equations: dict
    combination: Poly
    forced_A: RatFunc
    contradiction: RatFunc
    integer_roots: list
    notes: list = field(default_factory=list)

    @property
    def contradicts_all_d(self) -> bool:
        """No integer ``d >= 3`` makes the contradiction expression vanish or blow up."""
        bad = [r for r in self.integer_roots if r >= 3]
        den_roots = rational_roots_in(self.contradiction.den, -10**6, 10**6) if self.contradiction.den.degree() > 0 else []
        return not bad and not [r for r in den_roots if r >= 3 and r.denominator == 1]

    def at(self, d: int) -> dict:
        return {
            "forced_A": self.forced_A(d),
            "contradiction": self.contradiction(d),
        }


def eliminate_symbolic(sys: CoefficientSystem) -> EliminationTrace:
    """Replay the hand elimination for k = 3 or k = 5 over Q(d)."""
    if not _is_symbolic(sys.d):
        raise ValueError("eliminate_symbolic needs a symbolic-d system")
    D = dim_symbol()
    c = sys.coeffs
    if sys.k == 3:
        first = _strip(c[2], D * (D + 2) * Fraction(1, 384))
        second = _strip(c[1], D * Fraction(1, 384))
        third = _strip(c[0], D * Fraction(1, 46080))
        comb = second - first * (D + 2)
        A = _linear_root(comb)
        contra = subs_ratfunc(first, A)
        eqs = {"first": first, "second": second, "third": third}
        notes = ["second - (d+2)*first is linear in A", "substitute forced A into first"]
    elif sys.k == 5:
        f34 = c[3] - c[4]
        f21 = c[2] - c[1]
        comb = f34 - f21
        A = _linear_root(comb)
        contra = subs_ratfunc(f34, A)
        eqs = {"f34": f34, "f21": f21}
        notes = ["f34 - f21 is linear in A", "substitute forced A into f34"]
    else:
        raise ValueError(f"no scripted elimination for k={sys.k}; use eliminate_numeric")
    roots = rational_roots_in(contra.num, -10**6, 10**6) if contra.num.degree() > 0 else []
    ints = [int(r) for r in roots if r.denominator == 1]
    return EliminationTrace(sys.k, eqs, comb, A, contra, ints, notes)


# -- per-dimension elimination ----------------------------------------------


@dataclass(frozen=True)
class EliminationResult:
    k: int
    d: int
    gcd: Poly
    sturm_count: int
    rational_roots: tuple
    verdict: str

    def to_json(self) -> dict:
        return {
            "gcd": [str(c) for c in self.gcd.coeffs],
            "sturmCount01": self.sturm_count,
            "rationalRoots01": [str(r) for r in self.rational_roots],
            "verdict": self.verdict,
        }


def eliminate_numeric(sys: CoefficientSystem, d: int) -> EliminationResult:
    """Common roots ``A`` in [0, 1) of the coefficient system at an integer ``d``.

    ``A = <x,y>^2/R^2`` lies in [0, 1) for distinct non-antipodal points of one
    layer by Cauchy-Schwarz (equality only for ``y = +-x``), and is rational on
    the layer guaranteed by the rationality theorem (needs ``k >= 2`` and
    ``d >= 4k^2 - 2k + 1``).
    """
    if _is_symbolic(sys.d) or sys.d != d:
        raise ValueError("system was not built for this numeric d")
    if sys.k < 2 or not rationality_preconditions(sys.k, d)["dimensionHypothesis"]:
        raise ValueError(
            f"rationality precondition fails: need k >= 2 and d >= {elimination_threshold(sys.k)}"
        )
    g = Poly((), "A")
    for c in sys.coeffs:
        g = poly_gcd(g, c)
    if not g:
        return EliminationResult(sys.k, d, g, -1, (), "inconclusive")
    if g.degree() == 0:
        return EliminationResult(sys.k, d, g, 0, (), "contradiction")
    count = sturm_count(g, (0, 1))
    roots = tuple(rational_roots_in(g, 0, 1)) if count else ()
    return EliminationResult(sys.k, d, g, count, roots, "inconclusive" if roots else "contradiction")


# -- integer-gap counts -----------------------------------------------------


def layer_multiplicities(k: int, d: int) -> list[int]:
    """``H_j = sum_{m=0}^{k-j} dim Harm_{2m}(R^d)``: the weight of ``sin^2((2j+1)pi/(2k+1))``."""
    return [sum(dim_harm(d, 2 * m) for m in range(k - j + 1)) for j in range(k + 1)]


def appendix_count_exact(k: int, d: int) -> FieldElement:
    """The innermost-layer point count as an element of Q(cos(2 pi/(2k+1)))."""
    p = _prime_p(k)
    if d < 3:
        raise ValueError("d must be >= 3")
    F = cos_field(p)
    total = F(0)
    for j, h in enumerate(layer_multiplicities(k, d)):
        total = total + sin_sq(F, 2 * j + 1) * h
    return total * Fraction(8, p)


def layer_count_from_kernel(k: int, d: int) -> ScaledQuantity:
    """``Lambda_1 / w_1 = 2 Lambda_1 K(x, x)`` on the innermost layer."""
    L1 = gauss_layers(k)[0]
    K = xu_kernel(d, k)
    r = L1.radius_sq
    diag = ScaledQuantity(K.prefactor.value * _eval_terms(K.terms, r, r, r), K.prefactor.unit_exp)
    return L1.weight_sum * diag * 2


def validate_pi_bracket(pi_lo, pi_hi) -> tuple[Fraction, Fraction]:
    lo, hi = Fraction(pi_lo), Fraction(pi_hi)
    if not lo < hi:
        raise ValueError("invalid pi bracket: need piLo < piHi")
    if not (lo <= PI_LO and hi >= PI_HI):
        raise ValueError(f"invalid pi bracket [{pi_lo}, {pi_hi}] does not certainly contain pi")
    return lo, hi


def sine_bounds(theta_lo: Fraction, theta_hi: Fraction, n: int, pi_hi: Fraction) -> IntervalRat:
    """``S1 <= sin(theta) <= S2`` for ``theta_lo <= theta <= theta_hi <= pi_hi < 4``.

    Positive Taylor terms use the end of the theta range that makes them
    smallest (resp. largest), negative terms the other end; the tail after
    ``2n`` terms is alternating and decreasing, so it lies in
    ``[0, pi_hi^{4n}/(4n)!]``.
    """
    s1 = Fraction(0)
    s2 = Fraction(0)
    for l in range(n):
        a, b = 4 * l + 1, 4 * l + 3
        s1 += theta_lo**a / factorial(a) - theta_hi**b / factorial(b)
        s2 += theta_hi**a / factorial(a) - theta_lo**b / factorial(b)
    s2 += pi_hi ** (4 * n) / factorial(4 * n)
    return IntervalRat(s1, s2)


def appendix_count_interval(
    k: int, d: int, n: int, pi_lo=PI_LO, pi_hi=PI_HI
) -> IntervalRat:
    p = _prime_p(k)
    if n < 1:
        raise ValueError("n must be >= 1")
    lo, hi = validate_pi_bracket(pi_lo, pi_hi)
    total = IntervalRat.point(0)
    for j, h in enumerate(layer_multiplicities(k, d)):
        s = sine_bounds(Fraction(2 * j + 1, p) * lo, Fraction(2 * j + 1, p) * hi, n, hi)
        total = total + s.square() * h
    return total * Fraction(8, p)


# -- certificates ------------------------------------------------------------


@dataclass
class Certificate:
    k: int
    d: int
    route: str
    verdict: str
    evidence: dict
    params: dict
    version: str = __version__
    timestamp: str | None = None

    def to_json(self) -> dict:
        out = {
            "k": self.k,
            "d": self.d,
            "route": self.route,
            "verdict": self.verdict,
            "evidence": self.evidence,
            "params": self.params,
            "version": self.version,
        }
        if self.timestamp is not None:
            out["timestamp"] = self.timestamp
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, obj: dict) -> "Certificate":
        return cls(
            obj["k"],
            obj["d"],
            obj["route"],
            obj["verdict"],
            obj["evidence"],
            obj["params"],
            obj.get("version", __version__),
            obj.get("timestamp"),
        )


def _outward(iv: IntervalRat, digits: int = 12) -> tuple[Fraction, Fraction]:
    scale = 10**digits
    return Fraction(floor(iv.lo * scale), scale), Fraction(ceil(iv.hi * scale), scale)


def _unsupported(k, d, note) -> Certificate:
    return Certificate(k, d, "unsupported", "inconclusive", {"note": note}, _no_params())


def _no_params() -> dict:
    return {"n": None, "piLo": None, "piHi": None}


def _elimination_certificate(k: int, d: int) -> Certificate:
    sys = reduce_and_extract(zero_equation(k, d))
    res = eliminate_numeric(sys, d)
    evidence = {
        "modulus": [str(c) for c in sys.modulus.coeffs],
        "system": sys.to_json(),
        **res.to_json(),
        "window": ["0", "1"],
        "note": (
            f"minimal polynomial of cos(2 l pi/{2 * k + 1}) is the same for every l "
            "because 2k+1 is prime; A = <x,y>^2/R^2 is rational and lies in [0,1)"
        ),
    }
    verdict = "nonexistence" if res.verdict == "contradiction" else "inconclusive"
    return Certificate(k, d, "rational-elimination", verdict, evidence, _no_params())


def _integer_gap_certificate(k, d, n, pi_lo, pi_hi, n_max) -> Certificate:
    value = appendix_count_exact(k, d)
    rat = field_is_rational(value)
    exact_decides = rat is None or rat.denominator != 1
    iv = None
    n_used = n
    for n_used in range(n, max(n, n_max) + 1):
        iv = appendix_count_interval(k, d, n_used, pi_lo, pi_hi)
        if iv.width < Fraction(1, 2):
            break
    lo_out, hi_out = _outward(iv)
    interval_decides = iv.width < Fraction(1, 2) and not interval_contains_integer(iv)
    evidence = {
        "modulus": [str(c) for c in value.field.modulus.coeffs],
        "multiplicities": layer_multiplicities(k, d),
        "exact": {
            "residue": [str(c) for c in value.coefficients()],
            "rational": rat is not None,
            "notInteger": exact_decides,
        },
        "interval": {
            "lo": str(lo_out),
            "hi": str(hi_out),
            "floor": floor(iv.lo),
            "ceil": ceil(iv.hi),
            "separates": interval_decides,
        },
        "approx": mpmath.nstr(value.approx(30), 25),
    }
    params = {"n": n_used, "piLo": str(pi_lo), "piHi": str(pi_hi)}
    if exact_decides:
        route, verdict = "integer-gap-exact", "nonexistence"
    elif interval_decides:
        route, verdict = "integer-gap-interval", "nonexistence"
    else:
        route, verdict = "integer-gap-exact", "inconclusive"
    return Certificate(k, d, route, verdict, evidence, params)


def certify(
    k: int,
    d: int,
    n: int | None = None,
    pi_lo=None,
    pi_hi=None,
    n_max: int = DEFAULT_N_MAX,
    stamp: bool = False,
) -> Certificate:
    """Route one (k, d) to elimination or the integer-gap test.

    Never raises for admissible arguments: unsupported cases come back as an
    ``inconclusive`` certificate with route ``unsupported``.
    """
    p = 2 * k + 1
    if k < 1 or not is_prime(p):
        cert = _unsupported(k, d, f"2k+1 = {p} is not prime; no single minimal polynomial")
    elif d == 2:
        cert = _unsupported(
            k, d,
            "d = 2 is settled by an external two-dimensional theorem; the kernel "
            "construction here needs d >= 3",
        )
    elif d < 2:
        cert = _unsupported(k, d, "dimension must be >= 3")
    elif k >= 2 and d >= elimination_threshold(k):
        cert = _elimination_certificate(k, d)
    else:
        pl = PI_LO if pi_lo is None else Fraction(pi_lo)
        ph = PI_HI if pi_hi is None else Fraction(pi_hi)
        validate_pi_bracket(pl, ph)
        cert = _integer_gap_certificate(k, d, n or 1, pl, ph, n_max)
    if stamp:
        cert.timestamp = datetime.now(timezone.utc).isoformat()
    return cert


def _certify_args(args):
    k, d, kw = args
    return certify(k, d, **kw)


def certify_range(k: int, dmin: int, dmax: int, workers: int | None = None, **kw) -> list[Certificate]:
    if dmin > dmax:
        raise ValueError("dmin > dmax")
    if workers is None:
        workers = int(os.environ.get("CUBCERT_WORKERS", "1"))
    jobs = [(k, d, kw) for d in range(dmin, dmax + 1)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            certs = list(pool.map(_certify_args, jobs))
    else:
        certs = [_certify_args(j) for j in jobs]
    return sorted(certs, key=lambda c: c.d)


def replay(obj: dict) -> bool:
    """Recompute a certificate from its stored parameters and compare evidence."""
    cert = Certificate.from_json(obj)
    params = cert.params or {}
    n = params.get("n")
    again = certify(
        cert.k,
        cert.d,
        n=n,
        pi_lo=params.get("piLo"),
        pi_hi=params.get("piHi"),
        n_max=n or DEFAULT_N_MAX,
    )
    mine = again.to_json()
    theirs = dict(cert.to_json())
    theirs.pop("timestamp", None)
    theirs["version"] = mine["version"]
    return json.dumps(mine, sort_keys=True) == json.dumps(theirs, sort_keys=True)
