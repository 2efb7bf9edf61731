"""Line rigidity on tiny graphs.

A triangle whose sides satisfy 2 + 3 = 5 pins its three points down; a
4-cycle with opposite sides equal (1, 2, 1, 2) can be sheared into two
different line placements.  The second graph has a layer drawing, which
is exactly the certificate of ambiguity.
"""

from ppg import Ppg, check_theorem1_equivalence, enumerate_layer_drawings, export_dot, \
    solve_all_placements

triangle = Ppg.from_lengths(3, {(0, 1): 5, (0, 2): 2, (1, 2): 3})
rectangle = Ppg.from_lengths(4, {(0, 1): 1, (1, 2): 2, (2, 3): 1, (0, 3): 2})

for name, g in (("triangle", triangle), ("4-cycle", rectangle)):
    sols = solve_all_placements(g)
    print(f"{name}: {len(sols)} placement(s)")
    for s in sols:
        print("   ", {p: str(x) for p, x in s.as_dict().items()})
    print("   ", check_theorem1_equivalence(g).to_json())

drawing = enumerate_layer_drawings(rectangle, limit=1)[0]
print("\nlayer drawing of the 4-cycle:")
print(export_dot(rectangle, directions=drawing.directions(), coords2d=drawing.points(),
                 name="layer"))
f, g = drawing.folds()
print("its two folds:", f.canonical().to_json(), g.canonical().to_json())
