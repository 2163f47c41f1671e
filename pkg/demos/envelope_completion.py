"""
Completing an arc from its envelope
===================================

The tangent lines of a large planar arc all lie on one curve of the dual
plane.  Its linear factors name the points missing from the arc.
"""

from arclab import complete_via_envelope, hyperoval, linear_factors, nrc, sbbt_envelope
from arclab.envelope import envelope_space
from arclab.gf import field_of_order

# q odd: a conic with one point removed
F9 = field_of_order(9)
A = nrc(F9, 3).subset(range(9))
env = sbbt_envelope(A)
print("q=9 envelope:", env.phi)
print("linear factors (form, multiplicity):", linear_factors(env.phi))
print("completed:", len(complete_via_envelope(A, env)), "points")

# plain vanishing leaves extra room here; asking for double zeros does not
print("dim of forms vanishing on tangents:", len(envelope_space(A)))
print("... with double zeros along each pencil:", len(envelope_space(A, multiplicity=2)))

# q even: a hyperoval with two points removed
F8 = field_of_order(8)
H = hyperoval(F8, "payne")
B = H.subset(range(8))
env = sbbt_envelope(B)
print("q=8 envelope:", env.phi, "factors:", linear_factors(env.phi))
print("recovers the hyperoval:", complete_via_envelope(B, env).same_points(H))
