"""Images of a q-subline and of a tangent q-subplane in the Andre-Bruck-Bose
representation.

Run: python3 demos/abb_surface.py [q n h]
"""

import sys

from reguli.abb import (AbbContext, abb_subline_image, abb_tangent_subplane, format_lines, standard_subline,
                        standard_tangent_subplane)
from reguli.fields import tower_for_q

q, n, h = (int(a) for a in sys.argv[1:4]) if len(sys.argv) > 3 else (4, 4, 2)
tw = tower_for_q(q, n)
abb = AbbContext(tw)

img = abb_subline_image(abb, *standard_subline(tw, h))
print("subline image:", img.summary())

surf = abb_tangent_subplane(abb, *standard_tangent_subplane(tw, h))
print("ruled surface:", surf.summary())
print("generators (first affine point ; point at infinity):")
print(format_lines(abb, surf), end="")
