from fractions import Fraction

import pytest

from cubcert.exact import NumberField, Poly
from cubcert.orthopoly import ScaledQuantity
from cubcert.verifier import CandidateFormula

# beta = sqrt((5 + sqrt5)/2): the icosahedron has coordinates 2/beta and 2 phi/beta
ICO_FIELD = NumberField(Poly([5, 0, -5, 0, 1], "b"), "b", "1.90211303259030714423287866675876428")


def icosahedron_points(field=ICO_FIELD):
    b = field.gen
    phi = b * b - 2
    u, v = 2 / b, 2 * phi / b
    zero = field(0)
    pts = []
    for s1 in (1, -1):
        for s2 in (1, -1):
            base = [zero, u * s1, v * s2]
            for r in range(3):
                pts.append(tuple(base[(i - r) % 3] for i in range(3)))
    return pts


def icosahedron_formula():
    field = ICO_FIELD
    origin = (field(0),) * 3
    weights = [ScaledQuantity(Fraction(1, 64), 1)] + [ScaledQuantity(Fraction(1, 768), 1)] * 12
    return CandidateFormula(3, 5, [origin] + icosahedron_points(), weights, field=field)


def perturbed_icosahedron(index=5, delta=Fraction(1, 10000)):
    F = icosahedron_formula()
    w = list(F.weights)
    w[index] = ScaledQuantity(w[index].value + delta, 1)
    return CandidateFormula(F.dimension, F.degree, F.points, w, F.integral, F.field)


def origin_only(d=3):
    return CandidateFormula(d, 1, [(0,) * d], [ScaledQuantity(Fraction(1, 4), 1)])


@pytest.fixture
def ico():
    return icosahedron_formula()
