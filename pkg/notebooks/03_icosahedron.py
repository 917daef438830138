"""The degree-5 rule in R^3: origin plus a scaled icosahedron.

Run: python3 notebooks/03_icosahedron.py
"""

import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
from conftest import icosahedron_formula, perturbed_icosahedron  # noqa: E402

from cubcert.verifier import layer_analysis, max_design_strength, verify_direct, verify_mysovskikh  # noqa: E402

F = icosahedron_formula()
print("field:", F.field.modulus, "points:", len(F.points))
for L in layer_analysis(F):
    pts = [F.points[i] for i in L.members]
    print("layer R^2 =", L.radius_sq, "size", len(pts), "design strength", max_design_strength(pts))
    print("  normalized inner products:", [str(a) for a in L.inner_products])

report = verify_mysovskikh(F)
print("kernel conditions:", report.conditions)
print("direct check on all monomials of degree <= 5:", verify_direct(F, 5))

G = perturbed_icosahedron(5, Fraction(1, 10000))
r = verify_mysovskikh(G)
print("\nperturbed weight at point 5 ->", r.passed)
for w in r.witnesses[:3]:
    print("  witness:", w)
