"""
Longer census runs
==================

These take minutes to hours on one core, so they live here rather than in the
test suite.  Progress is checkpointed after every top-level branch, so an
interrupted run picks up where it stopped.

    python demos/long_census.py 11 10
    python demos/long_census.py 11 9 --complete
    python demos/long_census.py 13 12
"""

import argparse

from arclab import census, is_conic_arc
from arclab.gf import field_of_order

ap = argparse.ArgumentParser()
ap.add_argument("q", type=int)
ap.add_argument("size", type=int)
ap.add_argument("--complete", action="store_true")
ap.add_argument("--checkpoint", default=None)
args = ap.parse_args()

path = args.checkpoint or f"census_q{args.q}_n{args.size}{'_c' if args.complete else ''}.json"
rep = census(field_of_order(args.q), 3, args.size, complete_only=args.complete,
             max_nodes=10**10, checkpoint=path)
print(f"{rep.count} classes, {rep.stats}")
for A in rep.representatives:
    print(A.canonical().tolist(), "conic" if len(A) >= 5 and is_conic_arc(A) else "")
