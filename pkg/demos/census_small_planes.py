"""
Arcs of small planes up to equivalence
======================================

Depth-first search through the standard frame, then canonical forms to
split the results into projective classes.
"""

from arclab import census, is_conic_arc
from arclab.gf import field_of_order

runs = [(5, 6, False), (7, 8, False), (7, 6, True), (8, 10, False), (9, 8, True)]
for q, size, complete in runs:
    rep = census(field_of_order(q), 3, size, complete_only=complete)
    kind = "complete " if complete else ""
    on_conic = [is_conic_arc(A) for A in rep.representatives]
    print(f"q={q} {kind}{size}-arcs: {rep.count} class(es), on a conic: {on_conic}, {rep.stats}")
