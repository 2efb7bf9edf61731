from fractions import Fraction

from ppg.algorithm import ThreePathComponent
from ppg.dot import export_dot
from ppg.model import Placement, Ppg, QueryEdge
from ppg.rigidity import enumerate_layer_drawings


def test_triangle():
    g = Ppg.from_lengths(3, {(0, 1): 5, (0, 2): 2, (1, 2): 3})
    text = export_dot(g, Placement({0: 0, 1: 5, 2: 2}))
    assert text.startswith("graph ppg {") and text.endswith("}\n")
    assert text.count("style=solid") == 3 and "dashed" not in text
    assert '0 -- 1 [label="5", style=solid]' in text
    assert 'pos="5,0!"' in text and 'x="5/1"' in text


def test_three_path_component():
    ids = tuple(range(10))
    lengths = {p: Fraction(7 + i) for i, p in enumerate(ThreePathComponent(ids).pairs())}
    g = ThreePathComponent(ids).ppg(lengths, pinned={0: 0, 1: 40, 2: 100})
    text = export_dot(g)
    assert sum(line.strip().rstrip(";").split(" [")[0].isdigit()
               for line in text.splitlines()) == 10
    assert text.count("style=solid") == 9 and text.count("style=dashed") == 3
    assert 'role="s"' in text


def test_empty_graph():
    assert export_dot(Ppg(0)) == "graph ppg {\n  node [shape=circle];\n}\n"


def test_rational_labels_and_determinism():
    g = Ppg(2, (QueryEdge(0, 1, 2, Fraction(7, 3)),))
    assert 'label="7/3"' in export_dot(g)
    assert export_dot(g) == export_dot(Ppg.from_json(g.to_json()))


def test_layer_drawing_export():
    g = Ppg.from_lengths(4, {(0, 1): 1, (1, 2): 2, (2, 3): 1, (0, 3): 2})
    d = enumerate_layer_drawings(g, limit=1)[0]
    text = export_dot(g, directions=d.directions(), coords2d=d.points(), name="layer")
    assert text.startswith("graph layer {")
    assert text.count('dir_axis="H"') == 2 and text.count('dir_axis="V"') == 2
