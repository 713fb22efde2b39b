"""
Automorphisms at j = 1728 and j = 0
===================================

y^2 = x^3 - x over F_13 already contains mu_4 and all of E[2].
"""

from gamma0pic.ellcurve import Curve, apply_aut, automorphism_group, gamma0_structures, stabilizer
from gamma0pic.exactfield import GF

F = GF(13)
E = Curve(F, -1, 0)
print(E)
print("Aut(E) =", [str(a.u) for a in automorphism_group(E)])

i = next(a for a in automorphism_group(E) if a.order == 4)
for G in gamma0_structures(E, 2):
    moved = sorted(apply_aut(i, P) for P in G.points)
    print(f"{G}  -> {{{', '.join(map(str, moved))}}}   stabilizer order {len(stabilizer(E, G))}")

# j = 0: every unit of F_7 is an automorphism of y^2 = x^3 + 1
E0 = Curve(GF(7), 0, 1)
for G in gamma0_structures(E0, 3):
    print(f"level 3 {G}: stabilizer order {len(stabilizer(E0, G))}")
