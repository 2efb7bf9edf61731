"""Sweep over all small connected graphs comparing the two rigidity tests."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx

from .model import Ppg
from .rigidity import check_theorem1_equivalence


def connected_graphs(max_n: int) -> list[list[tuple[int, int]]]:
    """Edge lists of every connected graph on 2..max_n vertices, up to isomorphism."""
    if max_n > 7:
        raise ValueError("the graph atlas stops at 7 vertices")
    out = []
    for g in nx.graph_atlas_g():
        if 2 <= g.number_of_nodes() <= max_n and nx.is_connected(g):
            out.append(sorted(tuple(sorted(e)) for e in g.edges()))
    return out


def sample_lengths(edges: list[tuple[int, int]], n: int, rng: random.Random) -> Ppg:
    """Lengths read off a random placement on a small integer range, so
    coincidences (and hence non-rigid samples) are common."""
    xs = rng.sample(range(2 * n + 2), n)
    return Ppg.from_placement({i: Fraction(x) for i, x in enumerate(xs)}, edges)


@dataclass
class AtlasReport:
    graphs: int = 0
    samples: int = 0
    rigid: int = 0
    inconsistent: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"graphs": self.graphs, "samples": self.samples, "rigid": self.rigid,
                "ambiguous": self.samples - self.rigid,
                "inconsistencies": len(self.inconsistent), "cases": self.inconsistent}


def run_atlas(max_n: int, samples: int = 50, seed: int = 0) -> AtlasReport:
    rng = random.Random(seed)
    report = AtlasReport()
    for edges in connected_graphs(max_n):
        n = 1 + max(max(e) for e in edges)
        report.graphs += 1
        for _ in range(samples):
            g = sample_lengths(edges, n, rng)
            r = check_theorem1_equivalence(g)
            report.samples += 1
            report.rigid += r.rigid
            if not r.consistent:
                report.inconsistent.append({"instance": g.to_json(), **r.to_json()})
    return report
