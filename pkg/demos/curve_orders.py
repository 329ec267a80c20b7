"""Orders of the curves cut on the regulus of the standard subline by the
n-spaces through F(Theta), grouped by the degree of Theta.

Run: python3 demos/curve_orders.py [q n]
"""

import sys
from collections import Counter

from reguli.fields import tower_for_q
from reguli.theorems import extension_orders, standard_setup, theta_candidates

q, n = (int(a) for a in sys.argv[1:3]) if len(sys.argv) > 2 else (3, 4)
tw = tower_for_q(q, n)
setup = standard_setup(tw)
print(f"q = {q}, n = {n}, moduli {tw.moduli()}")
for xi in theta_candidates(tw, up_to_conjugacy=True):
    h = tw.degree_over_base(xi)
    prof = extension_orders(setup, xi)
    print(f"Theta = (1, {tw.top.format(xi)})  degree {h}  orders {dict(Counter(prof.orders))}"
          f"  min(q, h) = {min(q, h)}")
