from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ppg.model import (DuplicateCoordinate, Placement, Ppg, QueryEdge, canonicalize,
                       dump_instance, format_rational, load_instance, parse_rational,
                       ppg_round_view)

fractions = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 10**6)


def test_translation_to_zero():
    assert canonicalize({0: 5, 1: 8}) == Placement({0: 0, 1: 3})


def test_reflection_picks_smaller_first_point():
    assert canonicalize({0: 3, 1: 0}) == Placement({0: 0, 1: 3})


def test_reflected_triples_share_canonical_form():
    assert canonicalize({0: 0, 1: 7, 2: 3}) == canonicalize({0: 7, 1: 0, 2: 4})


def test_duplicate_coordinate_rejected():
    with pytest.raises(DuplicateCoordinate):
        canonicalize({0: 1, 1: 2, 2: 1})


@given(st.lists(fractions, min_size=1, max_size=8, unique=True), fractions,
       st.sampled_from([1, -1]))
def test_canonical_form_invariant_under_affine_maps(xs, t, sign):
    raw = dict(enumerate(xs))
    moved = {p: sign * x + t for p, x in raw.items()}
    c = canonicalize(raw)
    assert canonicalize(moved) == c
    assert canonicalize(c.as_dict()) == c
    assert min(c.as_dict().values()) == 0


@given(fractions)
def test_rational_text_round_trip(x):
    assert parse_rational(format_rational(x)) == x


def test_rationals_are_reduced():
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert parse_rational("-10/4") == Fraction(-5, 2)


@pytest.mark.parametrize("bad", [0, -3])
def test_non_positive_length_rejected(bad):
    with pytest.raises(ValueError):
        QueryEdge(0, 1, 1, Fraction(bad))


def test_edge_validation():
    with pytest.raises(ValueError):
        QueryEdge(2, 2, 1, Fraction(1))
    with pytest.raises(ValueError):
        QueryEdge(0, 1, 3, Fraction(1))
    assert QueryEdge(4, 1, 1, Fraction(2)).pair == (1, 4)
    with pytest.raises(ValueError):
        Ppg(3, (QueryEdge(0, 1, 1, Fraction(1)), QueryEdge(1, 0, 2, Fraction(1))))
    with pytest.raises(ValueError):
        Ppg(2, (QueryEdge(0, 2, 1, Fraction(1)),))


def _mixed():
    r1 = [QueryEdge(0, 1, 1, Fraction(1)), QueryEdge(1, 2, 1, Fraction(2)),
          QueryEdge(2, 3, 1, Fraction(3))]
    r2 = [QueryEdge(0, 3, 2, Fraction(6)), QueryEdge(0, 2, 2, Fraction(3))]
    return Ppg(4, tuple(r1 + r2))


def test_round_views():
    g = _mixed()
    assert len(ppg_round_view(g, 1)) == 3
    assert len(ppg_round_view(g, 2)) == 5
    assert len(ppg_round_view(Ppg(0), 1)) == 0
    with pytest.raises(ValueError):
        ppg_round_view(g, 3)


def test_instance_json_round_trip(tmp_path):
    g = _mixed().with_edges([QueryEdge(1, 3, 2, Fraction(5, 1))])
    path = tmp_path / "g.json"
    dump_instance(g, path)
    assert load_instance(path) == g
    assert Ppg.from_json(g.to_json()).to_json() == g.to_json()
    assert g.to_json()["edges"][0]["len"] == "1/1"


def test_placement_satisfies_and_connectivity():
    g = Ppg.from_placement({0: 0, 1: 4, 2: 9}, [(0, 1), (1, 2)])
    assert Placement({0: 0, 1: 4, 2: 9}).satisfies(g)
    assert g.lengths == {(0, 1): 4, (1, 2): 5}
    assert g.is_connected()
    assert not Ppg(3, (QueryEdge(0, 1, 1, Fraction(1)),)).is_connected()
    sub, ids = g.subgraph([1, 2])
    assert ids == [1, 2] and sub.lengths == {(0, 1): 5}
