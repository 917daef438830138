"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line (with runtime) straight to
the terminal, then fails normally if the criterion does not hold.
"""

import io
import json
import time
from contextlib import redirect_stdout
from fractions import Fraction

import pytest
import sympy as sp
from conftest import icosahedron_formula, origin_only, perturbed_icosahedron
from test_certify import same, to_sympy

from cubcert.certify import (
    appendix_count_exact,
    appendix_count_interval,
    eliminate_numeric,
    eliminate_symbolic,
    reduce_and_extract,
    zero_equation,
)
from cubcert.cli import main
from cubcert.kernels import build_kernel, chebyshev_pair, kernels_equal, sv_identity_check, xu_kernel
from cubcert.orthopoly import dim_harm, gegenbauer_dim
from cubcert.quadrature import chebyshev_moment, gauss_layers, quadrature_exactness
from cubcert.verifier import CandidateFormula, verify_direct, verify_mysovskikh

d, A = sp.symbols("d A")


def criterion(capsys, number, title, budget, check):
    start = time.perf_counter()
    err = None
    try:
        check()
    except AssertionError as e:
        err = e
    elapsed = time.perf_counter() - start
    if err is None and elapsed > budget:
        err = AssertionError(f"took {elapsed:.2f}s, budget {budget}s")
    with capsys.disabled():
        status = "PASS" if err is None else "FAIL"
        print(f"\n[{status}] criterion {number}: {title} ({elapsed:.2f}s)")
    if err is not None:
        raise err


def _cli(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main([str(a) for a in argv])
    return code, buf.getvalue()


def test_criterion_1_minimal_polynomials(capsys):
    def check():
        assert _cli("minpoly", 7) == (0, "x^3 + 1/2 x^2 - 1/2 x - 1/8\n")
        assert _cli("minpoly", 11) == (0, "x^5 + 1/2 x^4 - x^3 - 3/8 x^2 + 3/16 x + 1/32\n")

    criterion(capsys, 1, "minimal polynomials of cos(2pi/7), cos(2pi/11)", 1, check)


def test_criterion_2_k3_elimination(capsys):
    def check():
        c0, c1, c2 = (to_sympy(c) for c in reduce_and_extract(zero_equation(3)).coeffs)
        first = (d + 4) * (d + 6) * A**2 - 6 * (d + 4) * A + 3
        second = (d + 2) * (d + 4) * (d + 6) * A**2 - 6 * (d + 2) * (d + 3) * A + 3 * d
        third = (
            (d + 2) * (d + 4) * (d + 6) * (d + 8) * (d + 10) * A**3
            - 15 * (d + 2) * (d + 4) * (d + 6) ** 2 * A**2
            + 45 * (d + 2) * (d**2 + 6 * d + 24) * A
            - 15 * (d**2 + 44)
        )
        assert same(c2 * 384, d * (d + 2) * first)
        assert same(c1 * 384, d * second)
        assert same(c0 * 46080, d * third)
        tr = eliminate_symbolic(reduce_and_extract(zero_equation(3)))
        assert same(to_sympy(tr.forced_A), 1 / (d + 2))
        assert sorted(tr.integer_roots) == [-6, -1]

    criterion(capsys, 2, "k=3 symbolic elimination", 10, check)


def test_criterion_3_k5_elimination(capsys):
    def check():
        tr = eliminate_symbolic(reduce_and_extract(zero_equation(5)))
        assert same(to_sympy(tr.combination), d * ((d + 2) * A - 1) / 1024)
        assert same(to_sympy(tr.contradiction), -d * (d + 1) * (d + 6) / (1536 * (d + 2)))

    criterion(capsys, 3, "k=5 symbolic elimination", 60, check)


def test_criterion_4_count_intervals(capsys):
    def check():
        iv = appendix_count_interval(3, 20, 5, Fraction("3.14159"), Fraction("3.14160"))
        assert Fraction("47868.2") < iv.lo < iv.hi < Fraction("47868.8")
        iv = appendix_count_interval(5, 80, 11, Fraction("3.1415926535897"), Fraction("3.1415926535898"))
        assert iv.lo > Fraction("318122993450.96")
        assert iv.width < Fraction(1, 2)

    criterion(capsys, 4, "layer count interval regressions", 10, check)


def test_criterion_5_full_sweeps(capsys):
    def check():
        for k, lo, hi, route in [(3, 3, 30, "integer-gap"), (5, 3, 90, "integer-gap"), (3, 31, 60, "rational-elimination")]:
            code, out = _cli("certify", "--k", k, "--dmin", lo, "--dmax", hi)
            certs = [json.loads(line) for line in out.splitlines()]
            assert code == 0
            assert [c["d"] for c in certs] == list(range(lo, hi + 1))
            assert all(c["verdict"] == "nonexistence" for c in certs)
            assert all(c["route"].startswith(route) for c in certs)

    criterion(capsys, 5, "full certificate sweeps", 600, check)


def test_criterion_6_quadrature_exactness(capsys):
    def check():
        for k in (1, 2, 3, 5, 6):
            layers = gauss_layers(k)
            assert len(layers) == k
            for m in range(2 * k):
                total = sum((L.node_weight * ((L.node + 1) / 2) ** m for L in layers), Fraction(0))
                assert total == chebyshev_moment(m)
            assert quadrature_exactness(k, layers)

    criterion(capsys, 6, "radial quadrature exactness", 60, check)


def test_criterion_7_kernel_identities(capsys):
    def check():
        from cubcert.quadrature import xu_moments

        for k in range(5):
            for dd in (3, 5, 10):
                assert kernels_equal(build_kernel(xu_moments(k), dd, k), xu_kernel(dd, k))
        for k in range(6):
            mu, gamma = chebyshev_pair(k)
            assert sv_identity_check(k, mu, gamma)
            for m in range(2 * k + 1 if k else 0):
                assert not sv_identity_check(k, mu.perturbed(m, 1), gamma)
        for dd in range(3, 26):
            for m in range(9):
                assert dim_harm(dd, m) * (dd - 2) == (dd + 2 * m - 2) * gegenbauer_dim(m, dd)(1)

    criterion(capsys, 7, "kernel identities", 120, check)


def test_criterion_8_cross_route(capsys):
    def check():
        for k, hi in ((3, 30), (5, 90)):
            for dd in range(3, hi + 1):
                e = appendix_count_exact(k, dd).enclosure(Fraction(1, 10**80))
                for n in range(1, 2 * k + 2):
                    iv = appendix_count_interval(k, dd, n)
                    assert iv.lo <= e.lo and e.hi <= iv.hi
        for k, lo, hi in ((3, 31, 60), (5, 91, 120)):
            tr = eliminate_symbolic(reduce_and_extract(zero_equation(k)))
            for dd in range(lo, hi + 1):
                symbolic_contradiction = tr.at(dd)["contradiction"] != 0
                numeric = eliminate_numeric(reduce_and_extract(zero_equation(k, dd)), dd)
                assert symbolic_contradiction == (numeric.verdict == "contradiction")

    criterion(capsys, 8, "cross-route consistency", 300, check)


def test_criterion_9_verifier_equivalence(capsys):
    def check():
        ico = icosahedron_formula()
        corpus = [origin_only(), ico]
        corpus += [perturbed_icosahedron(i) for i in (0, 5, 9)]
        corpus.append(CandidateFormula(3, 5, ico.points[1:], ico.weights[1:], field=ico.field))
        results = [(F, verify_mysovskikh(F)) for F in corpus]
        for F, r in results:
            if r.passed:
                assert verify_direct(F, F.degree)
        assert results[0][1].passed and results[1][1].passed
        for (F, r), i in zip(results[2:5], (0, 5, 9)):
            assert not r.passed
            assert {tuple(w["points"]) for w in r.witnesses if w["condition"] == "weights"} == {(i,)}
            assert not verify_direct(F, F.degree)
        last = results[5][1]
        assert not last.conditions["moeller_count"] and not last.conditions["origin"]

    criterion(capsys, 9, "verifier oracle equivalence", 120, check)
