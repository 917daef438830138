"""Why large dimensions are ruled out for k = 3 and k = 5.

Run: python3 notebooks/01_elimination.py
"""

from cubcert.certify import eliminate_numeric, eliminate_symbolic, reduce_and_extract, zero_equation

# The kernel-zero condition on one layer, as a polynomial in c = cos(2 l pi/(2k+1))
# with coefficients in Q[d][A].
print("k=1 zero equation:", zero_equation(1).poly)

for k in (3, 5):
    sys = reduce_and_extract(zero_equation(k))
    print(f"\nk={k}: remainder modulo {sys.modulus}")
    for i, c in enumerate(sys.coeffs):
        print(f"  coefficient of c^{i}: {c}")
    tr = eliminate_symbolic(sys)
    for step in tr.notes:
        print("  step:", step)
    print("  forced A =", tr.forced_A)
    print("  leftover =", tr.contradiction)
    print("  integer zeros of leftover:", tr.integer_roots, "-> none with d >= 3:", tr.contradicts_all_d)

# The same question answered per dimension without any hand-picked combination.
for k, d in ((3, 31), (5, 91)):
    res = eliminate_numeric(reduce_and_extract(zero_equation(k, d)), d)
    print(f"\nk={k} d={d}: gcd of the system = {res.gcd}, verdict {res.verdict}")
