"""Playing the two-round adversary.

The adversary first commits to a layout that makes chains of degree-2
points look alike, then uses its second-round answers to keep two
placements alive whenever a chain of four or more degree-2 points
survives.  Graphs that avoid such chains (the algorithm's own query
graph, the triangle and quadrilateral baselines) are not fooled.
"""

import itertools

from ppg import AdversaryOracle, attack_table, check_lemma4, solve_all_placements
from ppg.algorithm import reduced_plan, run_quadrilateral_baseline, run_two_round

print("six-cycle recipes:")
for r in attack_table():
    count = len(solve_all_placements(r.cycle()))
    print(f"  {r.index}: {' '.join(r.pattern)}  {r.relations}  -> {count} placements")

core = list(itertools.combinations(range(4), 2))
walk = [0, 4, 5, 6, 7, 1]
path = list(zip(walk, walk[1:]))
oracle = AdversaryOracle(8, seed=1)
oracle.answer(core + [path[1], path[3], path[4]], 1)
oracle.answer([path[0], path[2]], 2)
verdict = oracle.verdict()
passes = check_lemma4(oracle.transcript.graph(8)).ok
print("\nK4 plus a 4-point chain, passes the path check:", passes, "->", verdict.reason)
for w in verdict.witnesses:
    print("   ", w.to_json())

plan = reduced_plan(5, 1)
oracle = AdversaryOracle(plan.n, seed=1)
run_two_round(oracle, plan=plan)
print("\nreduced three-path plan:", oracle.verdict().reason)
oracle = AdversaryOracle(20, seed=1)
run_quadrilateral_baseline(oracle)
print("quadrilateral baseline, n=20:", oracle.verdict().reason)
