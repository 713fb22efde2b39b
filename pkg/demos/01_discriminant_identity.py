"""
The discriminant on the level-2 locus
=====================================

Substitute the 2-torsion condition into g2^3 - 27 g3^2 and watch it split.
"""

from gamma0pic.symcheck import G2, X0, Y0, discriminant, two_torsion_g3, weight_of

delta = discriminant()
print("Delta            =", delta, "   weight", weight_of(delta))

# a point (x0, 0) on y^2 = 4x^3 - g2 x - g3 pins down g3
print("g3 at (x0, 0)    =", two_torsion_g3())

restricted = delta.subs(g3=two_torsion_g3())
print("Delta restricted =", restricted)

D = G2 - 3 * X0**2
q, r = restricted.divmod(D)
print("divided by D     =", q, " remainder", r)
assert not r and q == (G2 - 12 * X0**2) ** 2

# omega has weight -1, so these two sections are coordinate free
for coeff, k in ((D, 4), (Y0**2, 6)):
    print(f"({coeff}) * omega^{k}: total weight {weight_of(coeff) - k}")
