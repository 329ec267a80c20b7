"""A 3-space of PG(7, 4), disjoint from a regulus, whose 4-space extensions
meet the regulus in curves of two different orders.

Run: python3 demos/gf4_profile.py
"""

from reguli.fields import tower_for_q
from reguli.projective import Subspace, format_subspace
from reguli.theorems import GF4_EXAMPLE_ROWS, parse_rows, extendability_profile, standard_setup

setup = standard_setup(tower_for_q(4, 4))
K = setup.K
U = Subspace(K, parse_rows(K, GF4_EXAMPLE_ROWS), 7)
print(format_subspace(U))

prof = extendability_profile(setup, U)
print("orders over the 85 extensions:", prof.histogram())

# one extension of each order, with its curve
for want in (4, 2):
    rec = next(r for r in prof.records if r.order == want)
    print(f"\norder {want}:")
    for p in rec.points:
        print("  ", " ".join(K.format(c) for c in p))

# by contrast, F(Theta) for a point Theta off the subline has a constant profile
for h in (2, 4):
    xi = setup.tower.subfield_generator(h)
    const = extendability_profile(setup, setup.ctx.reduce_point((1, xi))).histogram()
    print(f"\nF(1, xi) with [xi:GF(4)] = {h}:", const)
