import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ppg.algorithm import reduced_plan, run_quadrilateral_baseline, run_triangle_baseline, \
    run_two_round
from ppg.model import Placement
from ppg.oracles import (AdversaryOracle, HiddenInstance, HonestOracle, RoundOrderError,
                         Transcript, UnknownPoint, adversary_verdict, honest_answer)
from ppg.rigidity import InstanceTooLarge, solve_all_placements

INST = HiddenInstance(tuple(map(Fraction, (0, 3, 10))))


def test_honest_answers():
    assert honest_answer(INST, [(0, 2)]) == [10]
    assert honest_answer(INST, [(2, 0)]) == [10]
    assert honest_answer(INST, [(0, 1), (1, 2)]) == [3, 7]
    with pytest.raises(UnknownPoint):
        honest_answer(INST, [(0, 3)])


def test_hidden_instance_is_reproducible_and_distinct():
    a, b = HiddenInstance.random(50, 4), HiddenInstance.random(50, 4)
    assert a == b and len(set(a.positions)) == 50
    with pytest.raises(ValueError):
        HiddenInstance((Fraction(1), Fraction(1)))


@given(st.integers(0, 10**6))
def test_collinear_triples(seed):
    inst = HiddenInstance.random(3, seed)
    d01, d12, d02 = honest_answer(inst, [(0, 1), (1, 2), (0, 2)])
    a, b, c = sorted((d01, d12, d02))
    assert a + b == c


def test_transcript_rules_and_json():
    o = HonestOracle(INST)
    o.answer([(0, 1)], 1)
    with pytest.raises(RoundOrderError):
        o.answer([(1, 2)], 3)
    with pytest.raises(ValueError):
        o.answer([(1, 0)], 2)
    t = Transcript.from_json(o.transcript.to_json())
    assert t.rounds == o.transcript.rounds
    t.claim = Placement({0: 0, 1: 3, 2: 10})
    assert Transcript.from_json(t.to_json()).claim == t.claim


def adversary(n, r1, r2=None, seed=0):
    o = AdversaryOracle(n, seed=seed)
    a1 = dict(zip(r1, o.answer(r1, 1)))
    if r2 is not None:
        a1.update(zip(r2, o.answer(r2, 2)))
    return o, a1


def test_heavy_to_heavy_chain_equalities():
    path = [(i, i + 1) for i in range(7)]
    o, ans = adversary(12, path + [(0, 8), (0, 9), (7, 10), (7, 11)], seed=1)
    assert ans[(0, 1)] == ans[(2, 3)]
    assert ans[(3, 4)] == ans[(5, 6)]


def test_pendant_chain_alternates_and_isolated_edge_gets_c():
    o, ans = adversary(9, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 5), (0, 6), (7, 8)], seed=1)
    c = o.state.c
    assert ans[(0, 1)] == ans[(2, 3)] and ans[(1, 2)] == ans[(3, 4)] == c
    assert ans[(7, 8)] == c


def test_round_one_commitment_is_realizable():
    r1 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (4, 5), (5, 6), (6, 1),
          (3, 7), (7, 8)]
    o, _ = adversary(9, r1, seed=3)
    committed = Placement(o.state.committed)
    assert len(set(o.state.committed.values())) == 9
    assert committed.satisfies(o.transcript.graph(9))


def test_adversary_contract():
    with pytest.raises(InstanceTooLarge):
        AdversaryOracle(25)
    o = AdversaryOracle(4)
    with pytest.raises(RoundOrderError):
        o.answer([(0, 1)], 2)
    o.answer([(0, 1), (1, 2), (2, 3)], 1)
    with pytest.raises(RoundOrderError):
        o.answer([(0, 2)], 1)
    assert o.hidden_placement() is None


def _heavy_core_with_path(rounds):
    """K4 on 0..3 and a path 0 - 4 - ... - 1 through len(rounds)-1 nodes."""
    k = len(rounds) - 1
    core = list(itertools.combinations(range(4), 2))
    walk = [0] + list(range(4, 4 + k)) + [1]
    path = list(zip(walk, walk[1:]))
    r1 = core + [e for e, r in zip(path, rounds) if r == 1]
    r2 = [e for e, r in zip(path, rounds) if r == 2]
    return 4 + k, r1, r2


@pytest.mark.parametrize("rounds", [(2, 1, 2, 1, 1), (1, 1, 2, 1, 1), (2, 1, 1, 2, 1),
                                    (1, 2, 1, 2, 1), (1, 1, 2, 2, 1)])
def test_four_node_paths_are_defeated(rounds):
    n, r1, r2 = _heavy_core_with_path(rounds)
    o, _ = adversary(n, r1, r2)
    v = o.verdict()
    assert v.defeated and len(v.witnesses) == 2
    g = o.transcript.graph(n)
    assert all(w.satisfies(g) for w in v.witnesses)
    assert v.witnesses[0] != v.witnesses[1]


def test_every_round_pattern_on_long_paths_is_defeated():
    for k in (4, 5):
        for rounds in itertools.product((1, 2), repeat=k + 1):
            n, r1, r2 = _heavy_core_with_path(rounds)
            o, _ = adversary(n, r1, r2)
            assert o.verdict().defeated, rounds


def test_adversary_stays_realizable_after_round_two():
    n, r1, r2 = _heavy_core_with_path((1, 2, 1, 2))
    o, _ = adversary(n, r1, r2)
    assert len(solve_all_placements(o.transcript.graph(n), limit=1)) == 1


@pytest.mark.parametrize("seed", range(3))
def test_guarded_graphs_are_not_defeated(seed):
    o = AdversaryOracle(20, seed=seed)
    run_triangle_baseline(o)
    assert not o.verdict().defeated
    o = AdversaryOracle(20, seed=seed)
    run_quadrilateral_baseline(o)
    assert not o.verdict().defeated
    plan = reduced_plan(5, 1)
    o = AdversaryOracle(plan.n, seed=seed)
    report = run_two_round(o, plan=plan)
    assert report.verified and not o.verdict().defeated


def test_disconnected_final_graph_counts_as_defeat():
    o, _ = adversary(4, [(0, 1), (2, 3)], [])
    assert o.verdict().defeated
    assert adversary_verdict(o.transcript.graph(4)).reason == "final graph is disconnected"
