"""Small dimensions: the innermost layer would need a non-integer number of points.

Run: python3 notebooks/02_integer_gap.py
"""

from fractions import Fraction

from cubcert.certify import appendix_count_exact, appendix_count_interval, certify, layer_count_from_kernel

# The count comes from the kernel diagonal times the layer weight; the closed
# form agrees exactly in Q(cos(2 pi/7)).
k, d = 3, 20
exact = appendix_count_exact(k, d)
print("exact count  :", exact, "~", exact.approx(20))
print("from kernel  :", layer_count_from_kernel(k, d).value == exact)

# A crude pi bracket is already enough to trap it between two integers.
iv = appendix_count_interval(k, d, 5, Fraction("3.14159"), Fraction("3.14160"))
print("interval     :", float(iv.lo), float(iv.hi))

# Refining n shrinks the bracket monotonically.
for n in range(1, 7):
    print(f"  n={n} width={float(appendix_count_interval(k, d, n).width):.3e}")

# A whole certificate, and the one case (k=1, d=3) where the count is an integer.
print(certify(3, 20).dumps()[:200], "...")
c = certify(1, 3)
print("k=1 d=3:", c.verdict, "count =", appendix_count_exact(1, 3))
