"""Edge/point ratios in the lower-bound accounting.

Every point owns weight 1 split across the groups it belongs to, and
every edge hands half of itself to each endpoint.  Worked values for
paths of k first-round degree-2 points and for heavy points with m
shared path points are printed next to the ratio of the algorithm's
full query graph.
"""

from fractions import Fraction

from ppg import HiddenInstance, HonestOracle, build_round1_plan, density, run_two_round
from ppg.lowerbound import group_b_density, type_a_density

for k in range(2, 8):
    print(f"type-A path, k={k}: {type_a_density(k)}")
for m in range(1, 7):
    print(f"heavy point with m={m}: {group_b_density(m)}  (>= 9/8: "
          f"{group_b_density(m) >= Fraction(9, 8)})")

plan = build_round1_plan(1)
report = run_two_round(HonestOracle(HiddenInstance.random(plan.n, seed=1)), plan=plan)
d = density(report.graph)
print(f"\nthree-path query graph at b=1: {d.edges}/{d.nodes} = {d.density} "
      f"~ {float(d.density):.4f} (9/7 ~ {9 / 7:.4f})")
