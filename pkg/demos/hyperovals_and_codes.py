"""
Hyperovals and the codes they generate
======================================

Every o-polynomial family gives q+2 points of PG(2,q) with no three on a
line.  Reading the points as columns of a generator matrix gives an MDS code.
"""

import numpy as np

from arclab import code_from_arc, hyperoval, is_arc, min_distance
from arclab.arc import FAMILIES
from arclab.gf import field_of_order

# try each family over GF(8) and GF(32); some families need particular h
for q in (8, 32):
    F = field_of_order(q)
    for fam in FAMILIES:
        try:
            A = hyperoval(F, fam)
        except ValueError as exc:
            print(f"q={q:<3} {fam:<12} skipped: {exc}")
            continue
        print(f"q={q:<3} {fam:<12} {len(A)} points, arc: {bool(is_arc(F, A.M))}")

# the code of a hyperoval over GF(4) is a [6,3,4] MDS code
A = hyperoval(field_of_order(4), "regular")
C = code_from_arc(A)
d = min_distance(C)
print("generator matrix:\n", np.asarray(C.gen))
print(f"[n, k, d] = [{C.n}, {C.k}, {d}]  (Singleton bound n-k+1 = {C.n - C.k + 1})")
