"""Tools for the two-round lower bound: maximal degree-2 paths, the path
length check, the five six-cycle attacks and half-edge density accounting."""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .model import Ppg, QueryEdge

E1, E2 = "E1", "E2"


@dataclass(frozen=True)
class Degree2Path:
    """Anchors ``p0``, ``pk+1`` (not degree 2) joined through ``k`` degree-2 nodes."""

    nodes: tuple[int, ...]
    anchors: tuple[int, int]
    anchor_degrees: tuple[int, int]
    rounds: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.nodes)

    @property
    def walk(self) -> tuple[int, ...]:
        return (self.anchors[0], *self.nodes, self.anchors[1])

    @property
    def edge_types(self) -> tuple[str, ...]:
        return tuple(E1 if r == 1 else E2 for r in self.rounds)

    def max_e1_run(self) -> int:
        best = run = 0
        for r in self.rounds:
            run = run + 1 if r == 1 else 0
            best = max(best, run)
        return best

    def to_json(self) -> dict:
        return {"nodes": list(self.nodes), "anchors": list(self.anchors),
                "anchor_degrees": list(self.anchor_degrees),
                "edges": list(self.edge_types)}


def _walks(g: Ppg, interior: Callable[[int], bool]):
    """Split the edges of ``g`` into walks whose inner nodes satisfy
    ``interior`` and whose ends do not; leftover closed walks are cycles."""
    adj = g.adjacency()
    for v in adj:
        adj[v].sort(key=lambda we: we[0])

    def passes(v: int) -> bool:
        return interior(v) and len(adj[v]) == 2

    seen: set[tuple[int, int]] = set()
    walks, cycles = [], []
    for start in range(g.n):
        if passes(start):
            continue
        for w, e in adj[start]:
            if e.pair in seen:
                continue
            seen.add(e.pair)
            walk, edges = [start], [e]
            cur = w
            while passes(cur):
                nxt = next(((u, f) for u, f in adj[cur] if f.pair not in seen), None)
                if nxt is None:
                    break
                walk.append(cur)
                seen.add(nxt[1].pair)
                edges.append(nxt[1])
                cur = nxt[0]
            walk.append(cur)
            if walk[0] > walk[-1]:
                walk.reverse()
                edges.reverse()
            walks.append((tuple(walk), tuple(edges)))
    for e in g.edges:
        if e.pair in seen:
            continue
        cycle, cur = [e.a], e.b
        seen.add(e.pair)
        while cur != e.a:
            cycle.append(cur)
            nxt = next((u, f) for u, f in adj[cur] if f.pair not in seen)
            seen.add(nxt[1].pair)
            cur = nxt[0]
        i = cycle.index(min(cycle))
        cycles.append(tuple(cycle[i:] + cycle[:i]))
    return walks, cycles


def extract_degree2_paths(g: Ppg, round_view: int = 2) -> list[Degree2Path]:
    """Every maximal path of degree-2 nodes (``k = 0`` for a bare edge)."""
    view = g.round_view(round_view)
    deg = view.degrees()
    walks, _ = _walks(view, lambda v: deg[v] == 2)
    return [Degree2Path(w[1:-1], (w[0], w[-1]), (deg[w[0]], deg[w[-1]]),
                        tuple(e.round for e in es)) for w, es in walks]


def extract_degree2_cycles(g: Ppg, round_view: int = 2) -> list[tuple[int, ...]]:
    """Components made only of degree-2 nodes, reported separately."""
    view = g.round_view(round_view)
    deg = view.degrees()
    return _walks(view, lambda v: deg[v] == 2)[1]


@dataclass(frozen=True)
class PathCheckReport:
    ok: bool
    offending: tuple[Degree2Path, ...]
    max_k: int

    def to_json(self) -> dict:
        return {"ok": self.ok, "max_k": self.max_k,
                "offending": [p.to_json() for p in self.offending]}


def check_lemma4(g2: Ppg) -> PathCheckReport:
    """Every maximal degree-2 path has at most 3 nodes, and a path holding a
    second-round edge has at most 2 consecutive first-round edges."""
    paths = extract_degree2_paths(g2, 2)
    bad = tuple(p for p in paths
                if p.k > 3 or (2 in p.rounds and p.max_e1_run() > 2))
    return PathCheckReport(not bad, bad, max((p.k for p in paths), default=0))


# signed-sum equations on a path whose two ends are fixed ---------------------------

def solve_window(s: Sequence[int], t: Sequence[int], known: Mapping[int, Fraction],
                 unknown: Sequence[int], D: Fraction,
                 filler: Callable[[], Fraction]) -> dict[int, Fraction] | None:
    """Lengths for ``unknown`` edges so that both sign vectors reach ``D``.

    Edge ``i`` contributes ``s[i] * len[i]``; ``known`` holds fixed lengths.
    Free directions of the solution space are filled with ``filler()``.
    Returns ``None`` if inconsistent or some length is not positive.
    """
    b1 = D - sum(s[i] * v for i, v in known.items())
    b2 = D - sum(t[i] * v for i, v in known.items())
    r1 = [s[i] for i in unknown]
    r2 = [t[i] for i in unknown]
    if not unknown:
        return {} if b1 == 0 and b2 == 0 else None
    sol: dict[int, Fraction] = {}
    pair = None
    for j, k in itertools.combinations(range(len(unknown)), 2):
        if r1[j] * r2[k] - r1[k] * r2[j] != 0:
            pair = (j, k)
            break
    if pair is None:
        # rows are parallel (entries are +-1): one equation remains
        ratio = r2[0] * r1[0]
        if b2 != ratio * b1:
            return None
        for j in range(1, len(unknown)):
            sol[unknown[j]] = filler()
        rest = sum(r1[j] * sol[unknown[j]] for j in range(1, len(unknown)))
        sol[unknown[0]] = (b1 - rest) / r1[0]
    else:
        j, k = pair
        for i in range(len(unknown)):
            if i not in pair:
                sol[unknown[i]] = filler()
        c1 = b1 - sum(r1[i] * sol[unknown[i]] for i in range(len(unknown)) if i not in pair)
        c2 = b2 - sum(r2[i] * sol[unknown[i]] for i in range(len(unknown)) if i not in pair)
        det = r1[j] * r2[k] - r1[k] * r2[j]
        sol[unknown[j]] = Fraction(c1 * r2[k] - c2 * r1[k], det)
        sol[unknown[k]] = Fraction(r1[j] * c2 - r2[j] * c1, det)
    if any(v <= 0 for v in sol.values()):
        return None
    return sol


@dataclass(frozen=True)
class AttackRecipe:
    """Two sign vectors on the six-cycle ``p0..p5`` that reach the same ``|p0p5|``.

    ``pattern`` gives the round of edges ``p0p1 .. p4p5``; ``flips`` are the
    edges whose sign differs between the two placements; ``relations`` is
    the recipe in words; ``example`` is a ready-made assignment (known
    lengths by edge index, plus ``D = |p0p5|``).
    """

    index: int
    pattern: tuple[str, ...]
    signs: tuple[int, ...]
    flips: frozenset[int]
    relations: str
    example: Mapping[int, Fraction]
    D: Fraction

    @property
    def other_signs(self) -> tuple[int, ...]:
        return tuple(-x if i in self.flips else x for i, x in enumerate(self.signs))

    @property
    def unknown(self) -> tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.pattern) if p == E2)

    def realize(self, known: Mapping[int, Fraction] | None = None,
                D: Fraction | None = None) -> dict[int, Fraction] | None:
        """All five path lengths, or ``None`` if the recipe fails for these values."""
        known = dict(self.example if known is None else known)
        D = self.D if D is None else Fraction(D)
        sol = solve_window(self.signs, self.other_signs, known, self.unknown, D,
                           filler=lambda: Fraction(1))
        if sol is None:
            return None
        return {**known, **sol}

    def cycle(self, lengths: Mapping[int, Fraction] | None = None,
              D: Fraction | None = None) -> Ppg:
        """The six-cycle with the recipe's lengths; ``p0p5`` is a first-round edge."""
        D = self.D if D is None else Fraction(D)
        lengths = self.realize() if lengths is None else lengths
        edges = [QueryEdge(i, i + 1, 1 if p == E1 else 2, lengths[i])
                 for i, p in enumerate(self.pattern)]
        return Ppg(6, tuple(edges) + (QueryEdge(0, 5, 1, D),))

    def placements(self, lengths: Mapping[int, Fraction] | None = None,
                   D: Fraction | None = None) -> tuple[dict[int, Fraction], dict[int, Fraction]]:
        """The two intended placements (``p0`` at 0)."""
        lengths = self.realize(None, D) if lengths is None else lengths
        out = []
        for signs in (self.signs, self.other_signs):
            pos = {0: Fraction(0)}
            for i, sg in enumerate(signs):
                pos[i + 1] = pos[i] + sg * lengths[i]
            out.append(pos)
        return out[0], out[1]

    def to_json(self) -> dict:
        return {"index": self.index, "pattern": list(self.pattern),
                "flips": sorted(self.flips), "relations": self.relations}


def _f(*xs):
    return {i: Fraction(x) for i, x in xs}


def attack_table() -> list[AttackRecipe]:
    """The five edge-type patterns of a 4-node degree-2 path ``p1..p4``
    between fixed ``p0`` and ``p5``, with a two-placement recipe each."""
    return [
        AttackRecipe(1, (E2, E1, E2, E1, E1), (1, 1, 1, 1, -1), frozenset({0, 3, 4}),
                     "|p0p5| = |p1p2| + |p2p3|, |p0p1| = |p4p5| - |p3p4|",
                     _f((1, 2), (3, 3), (4, 10)), Fraction(13)),
        AttackRecipe(2, (E2, E1, E1, E2, E1), (1, 1, -1, 1, 1), frozenset({0, 2}),
                     "|p0p1| = |p2p3|, |p3p4| = |p0p5| - |p1p2| - |p4p5|",
                     _f((1, 3), (2, 5), (4, 7)), Fraction(19)),
        AttackRecipe(3, (E1, E2, E1, E2, E1), (1, 1, 1, -1, 1), frozenset({0, 3}),
                     "|p3p4| = |p0p1|, |p1p2| = |p0p5| - |p2p3| - |p4p5|",
                     _f((0, 3), (2, 5), (4, 7)), Fraction(19)),
        AttackRecipe(4, (E1, E1, E2, E2, E1), (1, 1, 1, -1, 1), frozenset({1, 3}),
                     "|p3p4| = |p1p2| = c, |p2p3| = |p0p5| - |p0p1| - |p4p5|",
                     _f((0, 3), (1, 1), (4, 7)), Fraction(19)),
        AttackRecipe(5, (E1, E1, E2, E1, E1), (-1, 1, 1, -1, -1), frozenset({1, 3}),
                     "|p1p2| = |p3p4| = c, |p2p3| = |p4p5| + |p5p0| + |p0p1|",
                     _f((0, 3), (1, 1), (3, 1), (4, 7)), Fraction(5)),
    ]


# density accounting ---------------------------------------------------------------

def type_a_density(k: int) -> Fraction:
    """Group average for a first-round path of ``k >= 2`` degree-2 nodes
    between heavy nodes, after the second-round edges it needs."""
    if k < 2:
        raise ValueError("type-A paths have at least 2 nodes")
    return Fraction(1, k) * (1 + (k - 1) + Fraction((k + 1) // 3, 2))


def group_b_density(m: int) -> Fraction:
    """Heavy node with three degree-2 paths holding ``m`` nodes in total,
    each path shared half and half with another heavy node."""
    return Fraction(m + 3, 2) / (Fraction(m, 2) + 1)


@dataclass(frozen=True)
class GroupDensity:
    kind: str
    key: int
    nodes: Fraction
    edges: Fraction

    @property
    def density(self) -> Fraction:
        return self.edges / self.nodes

    def to_json(self) -> dict:
        return {"kind": self.kind, "key": self.key, "nodes": str(self.nodes),
                "edges": str(self.edges), "density": str(self.density)}


@dataclass(frozen=True)
class DensityReport:
    edges: int
    nodes: int
    groups: tuple[GroupDensity, ...] = field(default=())

    @property
    def density(self) -> Fraction:
        return Fraction(self.edges, self.nodes) if self.nodes else Fraction(0)

    def group(self, kind: str, key: int) -> GroupDensity:
        return next(g for g in self.groups if g.kind == kind and g.key == key)

    def to_json(self) -> dict:
        return {"edges": self.edges, "nodes": self.nodes, "density": str(self.density),
                "groups": [g.to_json() for g in self.groups]}


def _type_a_nodes(g: Ppg) -> dict[int, int]:
    """Nodes of first-round degree-2 paths with ``k >= 2`` whose two anchors
    are heavy in the first round; maps node -> path key (first node)."""
    out = {}
    for p in extract_degree2_paths(g, 1):
        if p.k >= 2 and min(p.anchor_degrees) >= 3:
            for v in p.nodes:
                out[v] = min(p.nodes)
    return out


def density(g: Ppg) -> DensityReport:
    """Exact ``|E|/|V|`` plus a per-group split in which every node carries
    weight 1 spread over its groups and every edge gives half to each end,
    spread the same way.  Group masses therefore add up to ``|E|`` and
    ``|V|`` exactly.

    Groups: one per type-A path; one per type-B heavy node of the final
    graph, labelled ``B(b)`` if a degree-2 path links it to a type-A node
    and ``B(a)`` otherwise; ``other`` for nodes out of reach of any heavy
    node (keyed by their smallest id).
    """
    type_a = _type_a_nodes(g)
    deg = g.degrees()
    heavy_b = {v for v in range(g.n) if v not in type_a and deg[v] >= 3}
    owner: dict[int, dict[tuple[str, int], Fraction]] = {}
    for v, key in type_a.items():
        owner[v] = {("A", key): Fraction(1)}
    for h in heavy_b:
        owner[h] = {("B", h): Fraction(1)}
    touches_a: set[int] = set()

    def interior(v: int) -> bool:
        return v not in type_a and v not in heavy_b

    walks, cycles = _walks(g, interior)
    for walk, _ in walks:
        ends = (walk[0], walk[-1])
        inner = [v for v in walk if interior(v)]
        heavy_ends = sorted({v for v in ends if v in heavy_b})
        for h in heavy_ends:
            if any(v in type_a for v in ends):
                touches_a.add(h)
        if heavy_ends:
            share = Fraction(1, len(heavy_ends))
            groups = {("B", h): share for h in heavy_ends}
        else:
            groups = {("other", min(walk)): Fraction(1)}
        for v in inner:
            owner[v] = dict(groups)
    for cyc in cycles:
        for v in cyc:
            owner[v] = {("other", min(cyc)): Fraction(1)}
    for v in range(g.n):
        owner.setdefault(v, {("other", v): Fraction(1)})

    nodes: dict[tuple[str, int], Fraction] = defaultdict(Fraction)
    edges: dict[tuple[str, int], Fraction] = defaultdict(Fraction)
    for v, dist in owner.items():
        for key, w in dist.items():
            nodes[key] += w
    for e in g.edges:
        for v in (e.a, e.b):
            for key, w in owner[v].items():
                edges[key] += w / 2

    def label(key):
        kind, k = key
        if kind == "B":
            return "B(b)" if k in touches_a else "B(a)"
        return kind

    groups = tuple(GroupDensity(label(key), key[1], nodes[key], edges[key])
                   for key in sorted(nodes, key=lambda kk: (kk[0], kk[1])))
    return DensityReport(len(g.edges), g.n, groups)
