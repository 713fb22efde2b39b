"""
How far to extend
=================

Level-3 structures on y^2 = x^3 - x over F_13 only show up over F_{13^4}.
"""

from gamma0pic.ellcurve import Curve, base_change, gamma0_structures, geometric_closure_degree, stabilizer, three_torsion
from gamma0pic.exactfield import GF, poly_roots

E = Curve(GF(13), -1, 0)
print("psi_3 roots over F_13:", poly_roots(E.division_polynomial_3()))

for k in (2, 4):
    Ek = base_change(E, GF(13, k))
    xs = sorted(set(poly_roots(Ek.division_polynomial_3())))
    print(f"k={k}: {len(xs)} x-coordinates, {len(three_torsion(Ek))} points of order dividing 3")

k = geometric_closure_degree(E, 3)
Ek = base_change(E, GF(13, k))
orders = [len(stabilizer(Ek, G)) for G in gamma0_structures(Ek, 3)]
print(f"closure degree {k}; stabilizer orders of the four structures: {orders}")
