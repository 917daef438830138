from fractions import Fraction
from itertools import permutations

import pytest
import sympy as sp
from conftest import ICO_FIELD, icosahedron_formula, icosahedron_points, origin_only, perturbed_icosahedron
from hypothesis import given, settings
from hypothesis import strategies as st

from cubcert.exact import NumberField, Poly
from cubcert.kernels import xu_kernel
from cubcert.orthopoly import ScaledQuantity, chebyshev_t
from cubcert.quadrature import cos_field, gauss_layers, quadrature_exactness, radial_moment
from cubcert.verifier import (
    CandidateFormula,
    FormulaError,
    design_strength,
    direct_failures,
    layer_analysis,
    lrs_ratios,
    max_design_strength,
    monomial_moment,
    rationality_preconditions,
    sphere_moment,
    verify_direct,
    verify_mysovskikh,
)

SQ = ScaledQuantity


def cross_polytope(d, scale=1):
    return [tuple(Fraction(scale * s) if i == j else Fraction(0) for i in range(d)) for j in range(d) for s in (1, -1)]


# -- candidate validation --------------------------------------------------------


def test_candidate_validation():
    with pytest.raises(FormulaError):
        CandidateFormula(2, 1, [(0, 0)], [])
    with pytest.raises(FormulaError):
        CandidateFormula(2, 1, [(0, 0), (0, 0)], [1, 1])
    with pytest.raises(FormulaError):
        CandidateFormula(2, 1, [(0, 0)], [SQ(-1, 1)])
    with pytest.raises(FormulaError):
        CandidateFormula(2, 1, [(0, 0, 0)], [1])
    with pytest.raises(FormulaError):
        CandidateFormula(3, 5, [(ICO_FIELD.gen, 0, 0)], [1])
    with pytest.raises(FormulaError):
        CandidateFormula(2, 3, [(0, 0)], [1]).k


def test_degree_mismatch_with_kernel():
    with pytest.raises(FormulaError):
        verify_mysovskikh(icosahedron_formula(), xu_kernel(3, 2))


# -- the fixture corpus --------------------------------------------------------------


def test_origin_only_passes():
    F = origin_only()
    r = verify_mysovskikh(F)
    assert r.passed and not r.witnesses
    assert verify_direct(F, 1)


def test_icosahedron_passes():
    F = icosahedron_formula()
    r = verify_mysovskikh(F)
    assert r.passed, r.conditions
    assert verify_direct(F, 5)
    assert len(r.layers) == 1
    assert r.layers[0].radius_sq == 4


def test_perturbed_weight_reports_witness():
    F = perturbed_icosahedron(index=5)
    r = verify_mysovskikh(F)
    assert not r.passed
    assert not r.conditions["weights"]
    assert r.conditions["kernel_zero"]
    bad = [w for w in r.witnesses if w["condition"] == "weights"]
    assert [w["points"] for w in bad] == [[5]]
    assert not verify_direct(F, 5)


def test_moved_point_breaks_kernel_zero():
    F = icosahedron_formula()
    pts = list(F.points)
    x = pts[1]
    pts[1] = tuple(c * Fraction(11, 10) for c in x)
    G = CandidateFormula(3, 5, pts, F.weights, field=F.field)
    r = verify_mysovskikh(G)
    assert not r.conditions["kernel_zero"]
    assert all(1 in w["points"] for w in r.witnesses if w["condition"] == "kernel_zero")
    assert not verify_direct(G, 5)


def test_cross_polytope_fails():
    pts = [(0, 0, 0)] + cross_polytope(3, 2)
    F = CandidateFormula(3, 5, pts, [SQ(Fraction(1, 64), 1)] + [SQ(Fraction(1, 384), 1)] * 6)
    r = verify_mysovskikh(F)
    assert not r.passed
    assert not r.conditions["moeller_count"]
    assert not verify_direct(F, 5)


def _corpus():
    yield origin_only()
    yield origin_only(5)
    yield icosahedron_formula()
    for i in (0, 3, 12):
        yield perturbed_icosahedron(index=i)
    F = icosahedron_formula()
    yield CandidateFormula(3, 5, F.points[1:], F.weights[1:], field=F.field)


def test_mysovskikh_implies_direct_on_corpus():
    for F in _corpus():
        if verify_mysovskikh(F).passed:
            assert verify_direct(F, F.degree)


@given(st.integers(0, 12), st.fractions(min_value=Fraction(-1, 800), max_value=Fraction(1, 800), max_denominator=10**6))
@settings(max_examples=15, deadline=None)
def test_mysovskikh_implies_direct_perturbations(index, delta):
    if delta == 0:
        return
    F = perturbed_icosahedron(index, delta)
    r = verify_mysovskikh(F)
    assert not r.passed
    assert {tuple(w["points"]) for w in r.witnesses if w["condition"] == "weights"} == {(index,)}
    assert not verify_direct(F, 5)


# -- direct exactness --------------------------------------------------------------


def _sphere_average_sympy(alpha):
    th, ph = sp.symbols("theta phi")
    x = sp.sin(th) * sp.cos(ph)
    y = sp.sin(th) * sp.sin(ph)
    z = sp.cos(th)
    f = x ** alpha[0] * y ** alpha[1] * z ** alpha[2] * sp.sin(th)
    return sp.integrate(sp.integrate(f, (ph, 0, 2 * sp.pi)), (th, 0, sp.pi)) / (4 * sp.pi)


@pytest.mark.parametrize(
    "alpha", [(0, 0, 0), (2, 0, 0), (2, 2, 0), (4, 0, 0), (2, 2, 2), (4, 2, 0), (6, 0, 0), (1, 1, 0), (3, 1, 0), (1, 0, 0)]
)
def test_sphere_moment_against_integration(alpha):
    ref = _sphere_average_sympy(alpha)
    assert sphere_moment(alpha) == Fraction(int(sp.numer(ref)), int(sp.denom(ref)))


def test_sphere_moment_circle():
    t = sp.Symbol("t")
    for a, b in [(2, 0), (2, 2), (4, 2), (6, 0)]:
        ref = sp.integrate(sp.cos(t) ** a * sp.sin(t) ** b, (t, 0, 2 * sp.pi)) / (2 * sp.pi)
        assert sphere_moment((a, b)) == Fraction(int(sp.numer(ref)), int(sp.denom(ref)))


def test_monomial_moment_odd_is_zero():
    assert monomial_moment((1, 2, 0), 1).value == 0
    assert monomial_moment((0, 0, 0), 1) == radial_moment(1, 0)
    with pytest.raises(ValueError):
        monomial_moment((6, 0, 0), 1)


def test_direct_needs_available_moments():
    with pytest.raises(ValueError):
        verify_direct(icosahedron_formula(), 6)


def test_radial_part_matches_quadrature():
    F = icosahedron_formula()
    for ell in range(3):
        total = SQ(0, 1)
        for pt, w in zip(F.points, F.weights):
            total = total + w * sum((c * c for c in pt), Fraction(0)) ** ell
        assert total == radial_moment(1, ell)
    assert quadrature_exactness(1)


def test_odd_monomials_vanish_on_antipodal_sets():
    F = icosahedron_formula()
    assert not [a for a in direct_failures(F, 5) if sum(a) % 2]


# -- layers -------------------------------------------------------------------------


def test_cross_polytope_layer():
    pts = cross_polytope(3, 2)
    F = CandidateFormula(3, 5, pts, [1] * 6)
    (L,) = layer_analysis(F)
    assert L.radius_sq == 4
    assert L.inner_products == [-1, 0]
    assert L.antipodal
    assert F.origin_index() is None


def test_two_layer_candidate_from_quadrature_radii():
    F5 = cos_field(5)
    c = F5.gen
    sec1 = 1 / (-chebyshev_t(2, "c")(c))  # 1/cos(pi/5) = -1/cos(4 pi/5)
    sec2 = 1 / c  # 1/cos(2 pi/5)
    zero = F5(0)
    pts = [(sec1, zero, zero), (-sec1, zero, zero), (zero, sec2, zero), (zero, -sec2, zero)]
    F = CandidateFormula(3, 9, pts, [1] * 4, field=F5)
    layers = layer_analysis(F)
    assert [L.radius_sq for L in layers] == [L.radius_sq for L in gauss_layers(2)]
    assert all(L.antipodal for L in layers)


point_sets = st.lists(
    st.tuples(*[st.integers(-2, 2)] * 3).map(lambda t: tuple(Fraction(c) for c in t)), min_size=1, max_size=12, unique=True
)


@given(point_sets)
@settings(max_examples=40)
def test_layer_partition(points):
    F = CandidateFormula(3, 5, points, [1] * len(points))
    layers = layer_analysis(F)
    members = sorted(i for L in layers for i in L.members)
    nonorigin = [i for i, p in enumerate(points) if any(p)]
    assert members == nonorigin
    for L in layers:
        if L.antipodal:
            assert -1 in L.inner_products
            rest = [a for a in L.inner_products if a != -1]
            assert sorted(-a for a in rest) == sorted(rest)


# -- designs -------------------------------------------------------------------------


@pytest.mark.parametrize("d", [2, 3, 4, 6])
def test_cross_polytope_is_3_design(d):
    pts = cross_polytope(d)
    assert design_strength(pts, 3)
    assert not design_strength(pts, 4)


def test_hexagon_is_5_design():
    K = NumberField(Poly([-3, 0, 1], "s"), "s")
    h = K.gen / 2
    one, half, zero = K(1), K(Fraction(1, 2)), K(0)
    pts = [(one, zero), (-one, zero), (half, h), (-half, h), (half, -h), (-half, -h)]
    assert design_strength(pts, 5)
    assert not design_strength(pts, 6)


def test_icosahedron_is_5_design():
    pts = icosahedron_points()
    assert design_strength(pts, 5)
    assert max_design_strength(pts) == 5


def test_design_strength_mixed_radii():
    with pytest.raises(ValueError):
        design_strength([(Fraction(1), Fraction(0)), (Fraction(2), Fraction(0))], 1)


@given(st.permutations(range(3)), st.tuples(*[st.sampled_from([1, -1])] * 3))
@settings(max_examples=20, deadline=None)
def test_design_strength_invariant_under_signed_permutations(perm, signs):
    pts = icosahedron_points()
    moved = [tuple(p[perm[i]] * signs[i] for i in range(3)) for p in pts]
    assert max_design_strength(moved) == 5
    cp = [tuple(p[perm[i]] * signs[i] for i in range(3)) for p in cross_polytope(3)]
    assert max_design_strength(cp) == 3


# -- combinatorial preconditions -------------------------------------------------------


def test_lrs_examples():
    assert lrs_ratios([1, 2]) == [(Fraction(2), True), (Fraction(-1), True)]
    assert lrs_ratios([5]) == [(Fraction(1), True)]
    assert lrs_ratios([1, 3]) == [(Fraction(3, 2), False), (Fraction(-1, 2), False)]
    with pytest.raises(ValueError):
        lrs_ratios([1, 1])


@given(st.lists(st.fractions(min_value=Fraction(1, 7), max_value=20, max_denominator=7), min_size=1, max_size=5, unique=True))
@settings(max_examples=40)
def test_lrs_symmetric_under_permutation(vals):
    base = dict(zip(vals, lrs_ratios(vals)))
    for perm in list(permutations(vals))[:6]:
        assert dict(zip(perm, lrs_ratios(list(perm)))) == base


def test_rationality_preconditions():
    r = rationality_preconditions(3, 31)
    assert r["pigeonhole"] and r["dimensionHypothesis"]
    r = rationality_preconditions(5, 91)
    assert r["pigeonhole"] and r["dimensionHypothesis"]
    r = rationality_preconditions(3, 30)
    assert not r["dimensionHypothesis"]
    assert r["route"] == "integer-gap"
    with pytest.raises(ValueError):
        rationality_preconditions(1, 10)
