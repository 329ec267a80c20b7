"""Span invariant s of the clubs L_h of PG(1, q^n) for 1 < h < q.

Distinct values of s put the clubs in distinct PGL(2, q^n)-orbits.

Run: python3 demos/club_invariants.py [q n]
"""

import sys

import numpy as np

from reguli.clubs import detect_pg1q2_club, make_club, orbit_distinguisher
from reguli.fields import tower_for_q

q, n = (int(a) for a in sys.argv[1:3]) if len(sys.argv) > 2 else (4, 6)
tw = tower_for_q(q, n)
res = orbit_distinguisher(tw, 10, np.random.default_rng(0))
for r in res["reports"]:
    print(f"h = {r.h}: s = {r.s} at {len(r.values)} points of F(head), club of {r.size} points,"
          f" planes per point {r.plane_counts}")
print("verdict:", res["verdict"])
if n % 2 == 0:
    for h in res["I"]:
        print(f"h = {h}: splits like PG(1, q^2):", detect_pg1q2_club(make_club(tw, h)))
