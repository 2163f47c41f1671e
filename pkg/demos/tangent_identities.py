"""
Tangent hyperplanes of the 10-arc in PG(4,9)
============================================

Through every 3 points of this arc pass exactly t=3 hyperplanes that miss the
other 7 points.  After scaling, their products satisfy a pairwise sign law
and a family of linear sum equations.
"""

from arclab import build_scaled_system, glynn_arc
from arclab.tangent import count_cases, sweep_lemma, sweep_scaled, sweep_sums, unscaled_system

A = glynn_arc()
print(A, "t =", A.t)

# how big is each exhaustive sweep?
print(count_cases(len(A), A.k, A.t))

# the triple identity does not care about scaling
print(sweep_lemma(unscaled_system(A)).to_json())

# the pairwise law and the sums need the scaled system
sysm = build_scaled_system(A)
print(sweep_scaled(sysm).to_json())
print(sweep_sums(sysm).to_json())

# without scaling the sums fail, which is what makes the scaling meaningful
print("unscaled sums:", sweep_sums(unscaled_system(A)).to_json()["passed"], "passed")
