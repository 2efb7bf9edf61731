import random

import pytest

from ppg.atlas import connected_graphs, run_atlas, sample_lengths
from ppg.rigidity import check_theorem1_equivalence


def test_atlas_graph_counts():
    # connected graphs on 2, 3, 4, 5, 6 vertices: 1, 2, 6, 21, 112
    sizes = [len(connected_graphs(k)) for k in range(2, 7)]
    assert sizes == [1, 3, 9, 30, 142]
    with pytest.raises(ValueError):
        connected_graphs(8)


def test_single_edge_case():
    report = run_atlas(2, samples=5)
    assert report.to_json()["graphs"] == 1
    assert report.rigid == report.samples == 5 and not report.inconsistent


def test_samples_are_realizable():
    rng = random.Random(0)
    for edges in connected_graphs(5):
        n = 1 + max(max(e) for e in edges)
        g = sample_lengths(edges, n, rng)
        assert g.is_connected()


def test_equivalence_up_to_six_vertices():
    report = run_atlas(6, samples=50, seed=11)
    assert report.graphs == 142 and report.samples == 7100
    assert report.inconsistent == []
    assert 0 < report.rigid < report.samples


@pytest.mark.parametrize("seed", range(3))
def test_reports_are_deterministic(seed):
    assert run_atlas(4, 10, seed).to_json() == run_atlas(4, 10, seed).to_json()


def test_ambiguous_sample_has_drawing():
    for edges in connected_graphs(4):
        if len(edges) == 4 and all(sum(v in e for e in edges) == 2 for v in range(4)):
            break
    from ppg.model import Ppg
    g = Ppg.from_lengths(4, dict(zip(edges, (1, 2, 2, 1))))
    r = check_theorem1_equivalence(g)
    assert r.consistent
