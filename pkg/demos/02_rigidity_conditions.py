"""The condition tables behind the three-path component.

Prints the six lists a component must satisfy, checks a generic length
assignment, breaks it on purpose, and finally shows a small-integer
assignment that passes every listed condition yet still has two
placements (the coincidence involves a second-round length that the
lists never mention).
"""

from fractions import Fraction

from ppg import Ppg, ThreePathLengths, check_three_path, lemma2_condition_sets, \
    solve_all_placements

for cs in lemma2_condition_sets():
    print(cs.lines()[0])
    print(f"    {cs.expanded_count()} forbidden values once every ± is expanded")

generic = {"r1s": 2, "r2s": 9, "r3s": 31, "p1q1": 101, "p2q2": 367, "p3q3": 1301,
           "p1p2": 4099, "p2p3": 16411, "p3p1": 20510}
print("\ngeneric:", check_three_path(ThreePathLengths.from_mapping(generic)).to_json())
broken = {**generic, "p1q1": 2}
print("p1q1 = r1s:", check_three_path(ThreePathLengths.from_mapping(broken)).to_json())

names = ("p1", "p2", "p3", "q1", "q2", "q3", "r1", "r2", "r3", "s")
xs = [7, 15, 12, 9, 16, 20, 28, 6, 5, 24]
edges = [(i, i + 3) for i in range(3)] + [(i + 3, i + 6) for i in range(3)] + \
        [(i + 6, 9) for i in range(3)]
g = Ppg.from_placement({i: Fraction(x) for i, x in enumerate(xs)}, edges)
lengths = ThreePathLengths.from_positions(dict(zip(names, xs)))
sols = solve_all_placements(g, {0: xs[0], 1: xs[1], 2: xs[2]})
print(f"\nsmall integers {xs}: checks ok = {check_three_path(lengths).ok}, "
      f"placements with p1..p3 pinned = {len(sols)}")
