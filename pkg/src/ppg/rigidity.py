"""Exhaustive line-placement solver and layer-graph drawing enumerator.

Both procedures are brute force over sign choices along a spanning tree,
with early rejection as soon as a non-tree edge or a coincidence becomes
decidable.  They are exact (rational arithmetic throughout) and capped at a
configurable number of points (``PPG_BRUTE_CAP``, default 24).
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from .model import Placement, Ppg, QueryEdge, canonicalize, edge_key

DEFAULT_CAP = 24

H, V = "H", "V"


class UnderdeterminedGraph(ValueError):
    """Some point is not tied to the rest, so it has infinitely many positions."""


class InstanceTooLarge(ValueError):
    """Graph exceeds the brute-force cap."""


def brute_force_cap(cap: int | None = None) -> int:
    if cap is not None:
        return cap
    return int(os.environ.get("PPG_BRUTE_CAP", DEFAULT_CAP))


@dataclass(frozen=True)
class PlacementSet:
    placements: tuple[Placement, ...]

    def __len__(self) -> int:
        return len(self.placements)

    def __iter__(self) -> Iterator[Placement]:
        return iter(self.placements)

    def __contains__(self, item: object) -> bool:
        return item in self.placements

    def __getitem__(self, i: int) -> Placement:
        return self.placements[i]


def _placement_order(g: Ppg, seeds: Sequence[int], order: Sequence[int] | None):
    """Vertex order for the search plus, for each non-seed vertex, its tree edge
    and the edges back to earlier vertices.

    Without an explicit order the next vertex is the one with the most
    already-placed neighbours, which prunes far earlier than plain BFS.
    """
    adj = g.adjacency()
    placed = set(seeds)
    if order is not None:
        order = [v for v in order if v not in placed]
        if sorted(order) != sorted(set(range(g.n)) - placed):
            raise ValueError("order must list every non-seed point exactly once")
    else:
        order = []
        counts = {v: 0 for v in range(g.n) if v not in placed}
        for s in seeds:
            for w, _ in adj[s]:
                if w in counts:
                    counts[w] += 1
        while counts:
            v = max(counts, key=lambda u: (counts[u], -u))
            if counts[v] == 0:
                raise UnderdeterminedGraph(
                    f"point {v} is not connected to the anchored part of the graph")
            order.append(v)
            del counts[v]
            for w, _ in adj[v]:
                if w in counts:
                    counts[w] += 1
    steps = []
    rank = {s: -1 for s in seeds}
    for i, v in enumerate(order):
        rank[v] = i
    for v in order:
        back = sorted(((w, e) for w, e in adj[v] if w in rank and rank[w] < rank[v]),
                      key=lambda we: (rank[we[0]], we[0]))
        if not back:
            raise UnderdeterminedGraph(
                f"point {v} has no neighbour placed before it")
        steps.append((v, back[0], back[1:]))
    return steps


def solve_all_placements(g: Ppg, pinned: Mapping[int, Fraction] | None = None, *,
                         cap: int | None = None, order: Sequence[int] | None = None,
                         limit: int | None = None) -> PlacementSet:
    """All distinct-coordinate placements of ``g``.

    Without pins (or with a single pin) the result is a set of canonical
    placements.  With two or more pinned points, translation and reflection
    are already fixed and placements are returned literally.  ``order``
    changes the spanning tree used for the search; ``limit`` stops after that
    many distinct placements.
    """
    cap = brute_force_cap(cap)
    if g.n > cap:
        raise InstanceTooLarge(f"{g.n} points exceeds brute-force cap {cap}")
    pinned = {int(p): Fraction(x) for p, x in (pinned or {}).items()}
    for p in pinned:
        if not 0 <= p < g.n:
            raise ValueError(f"pinned point {p} outside 0..{g.n - 1}")
    if g.n == 0:
        return PlacementSet(())
    if len(set(pinned.values())) != len(pinned):
        return PlacementSet(())
    for e in g.edges:
        if e.a in pinned and e.b in pinned and abs(pinned[e.a] - pinned[e.b]) != e.length:
            return PlacementSet(())

    literal = len(pinned) >= 2
    if pinned:
        seeds = sorted(pinned)
        pos = dict(pinned)
    else:
        root = order[0] if order else 0
        seeds = [root]
        pos = {root: Fraction(0)}
    steps = _placement_order(g, seeds, order)
    used = set(pos.values())
    found: dict[Placement, None] = {}
    # reflection symmetry: fix the sign of the first tree edge unless pins fix it
    fix_first = not literal

    def place(i: int) -> bool:
        if i == len(steps):
            result = Placement(pos) if literal else canonicalize(pos)
            found[result] = None
            return limit is not None and len(found) >= limit
        v, (u, tree_edge), back = steps[i]
        signs = (1,) if (fix_first and i == 0) else (1, -1)
        for sign in signs:
            x = pos[u] + sign * tree_edge.length
            if x in used:
                continue
            if any(abs(x - pos[w]) != e.length for w, e in back):
                continue
            pos[v] = x
            used.add(x)
            stop = place(i + 1)
            used.discard(x)
            del pos[v]
            if stop:
                return True
        return False

    place(0)
    return PlacementSet(tuple(sorted(found, key=lambda p: p.coords)))


def enumerate_sign_vectors(g: Ppg, *, cap: int | None = None) -> PlacementSet:
    """Reference solver: all ``2^(n-1)`` sign vectors on a BFS tree, then filter.

    Deliberately naive; used to cross-check :func:`solve_all_placements`.
    """
    cap = brute_force_cap(cap)
    if g.n > cap:
        raise InstanceTooLarge(f"{g.n} points exceeds brute-force cap {cap}")
    if not g.is_connected():
        raise UnderdeterminedGraph("graph is disconnected")
    adj = g.adjacency()
    parent: dict[int, tuple[int, QueryEdge]] = {}
    bfs, seen = [0], {0}
    for v in bfs:
        for w, e in adj[v]:
            if w not in seen:
                seen.add(w)
                parent[w] = (v, e)
                bfs.append(w)
    tree = bfs[1:]
    found = set()
    for signs in itertools.product((1, -1), repeat=len(tree)):
        pos = {0: Fraction(0)}
        for v, s in zip(tree, signs):
            u, e = parent[v]
            pos[v] = pos[u] + s * e.length
        if len(set(pos.values())) != len(pos):
            continue
        if all(abs(pos[e.a] - pos[e.b]) == e.length for e in g.edges):
            found.add(canonicalize(pos))
    return PlacementSet(tuple(sorted(found, key=lambda p: p.coords)))


def is_line_rigid(g: Ppg, pinned: Mapping[int, Fraction] | None = None, *,
                  cap: int | None = None) -> bool:
    return len(solve_all_placements(g, pinned, cap=cap, limit=2)) == 1


@dataclass(frozen=True)
class LayerDrawing:
    """Axis-parallel drawing of a ppg; ``direction`` maps each edge pair to H or V."""

    direction: tuple[tuple[tuple[int, int], str], ...]
    coords: tuple[tuple[int, tuple[Fraction, Fraction]], ...]

    def directions(self) -> dict[tuple[int, int], str]:
        return dict(self.direction)

    def points(self) -> dict[int, tuple[Fraction, Fraction]]:
        return dict(self.coords)

    def folds(self) -> tuple[Placement, Placement]:
        """The two line placements obtained by folding the drawing (x+y and x-y)."""
        pts = self.points()
        return (Placement({p: x + y for p, (x, y) in pts.items()}),
                Placement({p: x - y for p, (x, y) in pts.items()}))


def enumerate_layer_drawings(g: Ppg, limit: int | None = None, *,
                             directions: Mapping[tuple[int, int], str] | None = None,
                             cap: int | None = None) -> list[LayerDrawing]:
    """Layer-graph drawings of ``g`` (up to ``limit`` of them).

    A drawing places every point in the plane so that each edge is
    horizontal or vertical with its queried length, both directions occur,
    and both folds onto a line keep all points distinct.  ``directions``
    optionally forces the direction of some edges.
    """
    cap = brute_force_cap(cap)
    if g.n > cap:
        raise InstanceTooLarge(f"{g.n} points exceeds brute-force cap {cap}")
    if g.n <= 1 or not g.edges:
        return []
    if not g.is_connected():
        raise UnderdeterminedGraph("graph is disconnected")
    forced = {edge_key(*k): v for k, v in (directions or {}).items()}
    root = 0
    steps = _placement_order(g, [root], None)
    pos = {root: (Fraction(0), Fraction(0))}
    plus, minus = {Fraction(0)}, {Fraction(0)}
    dirs: dict[tuple[int, int], str] = {}
    out: list[LayerDrawing] = []

    def edge_dir(p, q, length):
        (x1, y1), (x2, y2) = p, q
        if y1 == y2 and abs(x1 - x2) == length:
            return H
        if x1 == x2 and abs(y1 - y2) == length:
            return V
        return None

    def place(i: int) -> bool:
        if i == len(steps):
            if len(set(dirs.values())) == 2:
                out.append(LayerDrawing(tuple(sorted(dirs.items())),
                                        tuple(sorted(pos.items()))))
                return limit is not None and len(out) >= limit
            return False
        v, (u, tree_edge), back = steps[i]
        ux, uy = pos[u]
        L = tree_edge.length
        options = []
        for d, (dx, dy) in ((H, (L, 0)), (H, (-L, 0)), (V, (0, L)), (V, (0, -L))):
            if forced.get(tree_edge.pair, d) != d:
                continue
            # axis swap and mirror images give the same pair of folds
            if i == 0 and not forced and (d != H or dx < 0):
                continue
            options.append((d, (ux + dx, uy + dy)))
        for d, (x, y) in options:
            if x + y in plus or x - y in minus:
                continue
            back_dirs = []
            for w, e in back:
                bd = edge_dir((x, y), pos[w], e.length)
                if bd is None or forced.get(e.pair, bd) != bd:
                    break
                back_dirs.append((e.pair, bd))
            else:
                pos[v] = (x, y)
                plus.add(x + y)
                minus.add(x - y)
                dirs[tree_edge.pair] = d
                dirs.update(back_dirs)
                stop = place(i + 1)
                del dirs[tree_edge.pair]
                for pair, _ in back_dirs:
                    del dirs[pair]
                plus.discard(x + y)
                minus.discard(x - y)
                del pos[v]
                if stop:
                    return True
        return False

    place(0)
    return out


@dataclass(frozen=True)
class EquivalenceReport:
    rigid: bool
    has_drawing: bool

    @property
    def consistent(self) -> bool:
        return self.rigid != self.has_drawing

    def to_json(self) -> dict:
        return {"rigid": self.rigid, "has_drawing": self.has_drawing,
                "consistent": self.consistent}


def check_theorem1_equivalence(g: Ppg, *, cap: int | None = None) -> EquivalenceReport:
    """Run both decision procedures; they must disagree on exactly one of
    rigid / drawable."""
    rigid = is_line_rigid(g, cap=cap)
    drawn = bool(enumerate_layer_drawings(g, limit=1, cap=cap))
    return EquivalenceReport(rigid, drawn)
