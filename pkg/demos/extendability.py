"""
A linear test for extending a point set
=======================================

If a set G sits inside a larger arc, a certain matrix built from determinants
of G has a kernel vector with every coordinate nonzero.  An empty kernel
rules the larger arc out.
"""

import time

from arclab import extendability_verdict, nrc
from arclab.gf import field_of_order

# nine points of the normal rational curve in PG(4,11) never reach 13 points
G = nrc(field_of_order(11), 5).subset(range(9))
t0 = time.time()
v = extendability_verdict(G, 13)
print(v.to_json(), f"{time.time() - t0:.2f}s")

# six points of a conic in PG(2,7): 8 points is possible, 9 is not
F7 = field_of_order(7)
G = nrc(F7, 3).subset(range(6))
for target in (8, 9):
    v = extendability_verdict(G, target)
    print(f"target {target}: {v.outcome} (rank {v.rank}, nullity {v.nullity})")
