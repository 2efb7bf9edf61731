"""Two-round point placement with three-path components, plus two baselines.

Round 1 queries a rigid 35-point core, ``3b+124`` leaves on every core point
and ``35b+11`` link groups (three edges ``r_i s`` meeting at ``s``).  Round 2
closes each link group into a three-path component on a scheduled core
triplet, pairs the unused leaves into 4-cycles and finishes an odd leaf with
a triangle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Protocol, Sequence

from .conditions import ThreePathLengths, check_three_path, lemma2_condition_sets
from .model import Placement, Ppg, QueryEdge, ValenceState, canonicalize, edge_key
from .rigidity import solve_all_placements

Pair = tuple[int, int]

# local ids: 0, 1 = strut ends A, B; 2 = hub; 3, 4 = midpoints of the A-paths;
# 5, 6 = midpoints of the B-paths
JEWEL: tuple[Pair, ...] = ((0, 1), (0, 3), (3, 2), (0, 4), (4, 2),
                           (1, 5), (5, 2), (1, 6), (6, 2))

ROLE_NAMES = ("p1", "p2", "p3", "q1", "q2", "q3", "r1", "r2", "r3", "s")
# (p_i, q_i), (q_i, r_i), (r_i, s) in local role indices
COMPONENT_EDGES: tuple[Pair, ...] = ((0, 3), (1, 4), (2, 5), (3, 6), (4, 7), (5, 8),
                                     (6, 9), (7, 9), (8, 9))


class CoreNotRigid(RuntimeError):
    pass


class NoFeasibleTriplet(RuntimeError):
    pass


class NoFeasibleLeaf(RuntimeError):
    pass


class VerificationFailed(RuntimeError):
    pass


class Oracle(Protocol):
    n: int

    def answer(self, pairs: Sequence[Pair], round: int) -> list[Fraction]: ...


def expected_counts(b: int) -> dict[str, int]:
    n = 245 * b + 4419
    return {"n": n, "round1": 210 * b + 4428, "round2": 105 * b + 2187,
            "total": 315 * b + 6615, "leaves_per_core": 3 * b + 124,
            "link_groups": 35 * b + 11, "unused_leaves": 4307,
            "four_cycles": 2153, "triangles": 1}


@dataclass(frozen=True)
class RoundOnePlan:
    """Point numbering and round-1 query list.

    Core points come first (strut ends 0 and 1), then leaves hub by hub,
    then link groups ``(r1, r2, r3, s)``, then padding points.
    """

    core: tuple[int, ...]
    core_edges: tuple[Pair, ...]
    gadgets: tuple[tuple[int, ...], ...]
    triangle_points: tuple[int, ...]
    leaves: Mapping[int, tuple[int, ...]]
    links: tuple[tuple[int, int, int, int], ...]
    padding: tuple[int, ...] = ()
    b: int | None = None

    @property
    def n(self) -> int:
        return (len(self.core) + sum(map(len, self.leaves.values()))
                + 4 * len(self.links) + len(self.padding))

    def round1_pairs(self) -> list[Pair]:
        pairs = list(self.core_edges)
        pairs += [(p, q) for p in self.core for q in self.leaves[p]]
        pairs += [(r, s) for *rs, s in self.links for r in rs]
        pairs += [(x, e) for x in self.padding for e in (0, 1)]
        return pairs

    def roles(self) -> dict[int, str]:
        out = {p: "core" for p in self.core}
        out.update({q: "leaf" for qs in self.leaves.values() for q in qs})
        for group in self.links:
            out.update({p: "link" for p in group})
        out.update({p: "pad" for p in self.padding})
        return out


def core_topology(gadgets: int = 6, triangle_points: int = 3,
                  gadget: Sequence[Pair] = JEWEL):
    """Edges of a core made of ``gadgets`` copies of ``gadget`` on the strut
    ``(0, 1)`` plus ``triangle_points`` points joined to both strut ends."""
    size = 1 + max(max(e) for e in gadget)
    inner = size - 2
    edges: list[Pair] = [(0, 1)]
    ids = []
    for k in range(gadgets):
        local = (0, 1) + tuple(range(2 + inner * k, 2 + inner * (k + 1)))
        ids.append(local)
        edges += [(local[a], local[b]) for a, b in gadget if {a, b} != {0, 1}]
    start = 2 + inner * gadgets
    tri = tuple(range(start, start + triangle_points))
    edges += [(t, e) for t in tri for e in (0, 1)]
    return start + triangle_points, tuple(edges), tuple(ids), tri


def _plan(core_n, core_edges, gadgets, tri, leaves_per_core, groups, padding, b):
    core = tuple(range(core_n))
    nxt = core_n
    leaves = {}
    for p in core:
        leaves[p] = tuple(range(nxt, nxt + leaves_per_core))
        nxt += leaves_per_core
    links = []
    for _ in range(groups):
        links.append((nxt, nxt + 1, nxt + 2, nxt + 3))
        nxt += 4
    pad = tuple(range(nxt, nxt + padding))
    return RoundOnePlan(core, core_edges, gadgets, tri, leaves, tuple(links), pad, b)


def build_round1_plan(b: int, padding: int = 0) -> RoundOnePlan:
    if b < 1:
        raise ValueError(f"b must be a positive integer, got {b}")
    core_n, edges, gadgets, tri = core_topology()
    return _plan(core_n, edges, gadgets, tri, 3 * b + 124, 35 * b + 11, padding, b)


def reduced_plan(leaves_per_core: int = 5, groups: int = 1) -> RoundOnePlan:
    """Desk-sized variant: triangle core, a few leaves, few link groups."""
    core_n, edges, gadgets, tri = core_topology(gadgets=0, triangle_points=1)
    return _plan(core_n, edges, gadgets, tri, leaves_per_core, groups, 0, None)


def plan_for_n(n: int) -> RoundOnePlan:
    """Largest lattice size ``245b+4419`` not above ``n``; the rest is padding."""
    b = (n - 4419) // 245
    if b < 1:
        raise ValueError(f"n={n} is below the smallest supported size 4664")
    return build_round1_plan(b, padding=n - (245 * b + 4419))


def _unique(g: Ppg, pins: Mapping[int, Fraction]) -> Placement | None:
    sols = solve_all_placements(g, pins, limit=2)
    return sols[0] if len(sols) == 1 else None


@dataclass(frozen=True)
class RigidCore:
    graph: Ppg
    coords: Mapping[int, Fraction]


def build_rigid_core(lengths: Mapping[Pair, Fraction], *, gadgets: int = 6,
                     triangle_points: int = 3,
                     gadget: Sequence[Pair] = JEWEL) -> RigidCore:
    """Place the core from its answered lengths, one gadget at a time.

    The strut is pinned at ``0`` and ``|strut|``; every gadget and every
    triangle point must then have exactly one placement.
    """
    n, edges, gadget_ids, tri = core_topology(gadgets, triangle_points, gadget)
    lengths = {edge_key(*k): Fraction(v) for k, v in lengths.items()}
    graph = Ppg(n, tuple(QueryEdge(a, b, 1, lengths[edge_key(a, b)]) for a, b in edges))
    x = {0: Fraction(0), 1: lengths[(0, 1)]}
    pieces = [(ids, gadget) for ids in gadget_ids]
    pieces += [((0, 1, t), ((0, 2), (1, 2))) for t in tri]
    for ids, local in pieces:
        sub = Ppg(len(ids), tuple(QueryEdge(a, b, 1, lengths[edge_key(ids[a], ids[b])])
                                  for a, b in local if {a, b} != {0, 1}))
        sol = _unique(sub, {0: x[0], 1: x[1]})
        if sol is None:
            raise CoreNotRigid(f"core piece on points {ids} is not rigid with the strut pinned")
        for i, v in enumerate(ids):
            x[v] = sol[i]
    return RigidCore(graph, x)


@dataclass(frozen=True)
class ThreePathComponent:
    """Global ids of one component, in role order p1..p3, q1..q3, r1..r3, s."""

    ids: tuple[int, ...]

    def role(self, name: str) -> int:
        return self.ids[ROLE_NAMES.index(name)]

    def pairs(self, round: int | None = None) -> list[Pair]:
        rounds = {0: 1, 1: 1, 2: 1, 3: 2, 4: 2, 5: 2, 6: 1, 7: 1, 8: 1}
        return [(self.ids[a], self.ids[b]) for i, (a, b) in enumerate(COMPONENT_EDGES)
                if round is None or rounds[i] == round]

    def ppg(self, lengths: Mapping[Pair, Fraction],
            pinned: Mapping[int, Fraction] | None = None) -> Ppg:
        """The 10-point component on local ids ``0..9`` (role order).

        With ``pinned`` coordinates for ``p1, p2, p3`` the three gaps between
        them are added as first-round edges.
        """
        edges = []
        for a, b in COMPONENT_EDGES:
            rnd = 2 if 3 <= a <= 5 and 6 <= b <= 8 else 1
            edges.append(QueryEdge(a, b, rnd, lengths[edge_key(self.ids[a], self.ids[b])]))
        if pinned is not None:
            xs = [Fraction(pinned[v]) for v in self.ids[:3]]
            edges += [QueryEdge(a, b, 1, abs(xs[a] - xs[b])) for a, b in ((0, 1), (1, 2), (0, 2))]
        return Ppg(10, tuple(edges), dict(enumerate(ROLE_NAMES)))

    def lengths(self, x: Mapping[int, Fraction], lengths: Mapping[Pair, Fraction]
                ) -> ThreePathLengths:
        p1, p2, p3 = (x[i] for i in self.ids[:3])
        ln = {edge_key(*k): v for k, v in lengths.items()}

        def get(a, b):
            return ln.get(edge_key(self.role(a), self.role(b)))
        return ThreePathLengths(abs(p1 - p2), abs(p2 - p3), abs(p3 - p1),
                                get("p1", "q1"), get("p2", "q2"), get("p3", "q3"),
                                get("r1", "s"), get("r2", "s"), get("r3", "s"),
                                get("q1", "r1"), get("q2", "r2"), get("q3", "r3"))


def _forbidden(serial: int, context: Mapping[str, Fraction]) -> set[Fraction]:
    return set(lemma2_condition_sets()[serial - 1].forbidden_values(context))


def select_triplet(valence: ValenceState, coords: Mapping[int, Fraction],
                   link_lengths: Mapping[str, Fraction]) -> tuple[int, int, int]:
    """Lowest-valence core points (ties by id) meeting serials 1-3.

    ``link_lengths`` holds ``r1s``, ``r2s``, ``r3s`` for the link group.
    """
    order = sorted(valence.valence, key=lambda p: (valence.valence[p], p))
    p1 = order[0]
    bad12 = _forbidden(1, link_lengths)
    bad23, bad31 = _forbidden(2, link_lengths), _forbidden(3, link_lengths)
    for p2 in order[1:]:
        if abs(coords[p1] - coords[p2]) in bad12:
            continue
        for p3 in order[1:]:
            if p3 == p2:
                continue
            if (abs(coords[p2] - coords[p3]) not in bad23
                    and abs(coords[p3] - coords[p1]) not in bad31):
                return p1, p2, p3
        break
    raise NoFeasibleTriplet(f"no feasible triplet starting at point {p1}")


def select_leaf_edge(candidates: Sequence[tuple[int, Fraction]], serial: int,
                     context: Mapping[str, Fraction]) -> int:
    """First candidate leaf ``(id, length)`` whose length avoids the serial's values."""
    bad = _forbidden(serial, context)
    for leaf, length in candidates:
        if length not in bad:
            return leaf
    raise NoFeasibleLeaf(f"every candidate leaf is blocked by serial {serial}")


def match_pairs(first: Sequence[int], second: Sequence[int],
                ok: Callable[[int, int], bool]) -> list[Pair]:
    """Pair ``first[i]`` with ``second[i]``; on a conflict swap partners with
    the most recent pair, or failing that with the nearest later pair."""
    partner = list(second)
    for i, a in enumerate(first):
        if ok(a, partner[i]):
            continue
        candidates = ([i - 1] if i else []) + list(range(i + 1, len(partner)))
        for j in candidates:
            if ok(a, partner[j]) and ok(first[j], partner[i]):
                partner[i], partner[j] = partner[j], partner[i]
                break
        else:
            raise VerificationFailed(f"no admissible partner for leaf {a}")
    return list(zip(first, partner))


@dataclass
class AlgorithmReport:
    algorithm: str
    n: int
    round1: int
    round2: int
    placement: Placement
    verified: bool
    graph: Ppg
    b: int | None = None
    components: int = 0
    padding: int = 0
    four_cycles: int = 0
    triangles: int = 0
    valence_history: list[int] = field(default_factory=list)
    final_valences: dict[int, int] = field(default_factory=dict)
    triplets: list[tuple[int, int, int]] = field(default_factory=list)
    expected: dict[str, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return self.round1 + self.round2

    def to_json(self, placement: bool = False) -> dict:
        out = {"algorithm": self.algorithm, "n": self.n, "b": self.b,
               "round1": self.round1, "round2": self.round2, "total": self.total,
               "components": self.components, "four_cycles": self.four_cycles,
               "triangles": self.triangles, "padding": self.padding,
               "verified": self.verified}
        if self.expected:
            out["expected"] = self.expected
        if self.valence_history:
            out["max_valence_spread"] = max(self.valence_history)
            vals = sorted(set(self.final_valences.values()))
            out["final_valences"] = vals
        if placement:
            out["placement"] = self.placement.to_json()
        return out


def _ask(oracle: Oracle, pairs: Sequence[Pair], round: int) -> dict[Pair, Fraction]:
    answers = oracle.answer(list(pairs), round)
    if len(answers) != len(pairs):
        raise VerificationFailed("oracle returned the wrong number of answers")
    return {edge_key(*p): Fraction(v) for p, v in zip(pairs, answers)}


def _check_hidden(oracle: Oracle, x: Mapping[int, Fraction]) -> Placement:
    recovered = canonicalize(x)
    hidden = getattr(oracle, "hidden_placement", None)
    if hidden is not None and hidden() is not None and hidden().canonical() != recovered:
        raise VerificationFailed("recovered placement differs from the hidden instance")
    return recovered


def _place_by(x: dict[int, Fraction], ids: Sequence[int], edges: Sequence[Pair],
              lengths: Mapping[Pair, Fraction], pinned: Sequence[int], what: str) -> None:
    local = {v: i for i, v in enumerate(ids)}
    g = Ppg(len(ids), tuple(QueryEdge(local[a], local[b], 1, lengths[edge_key(a, b)])
                            for a, b in edges))
    sol = _unique(g, {local[p]: x[p] for p in pinned})
    if sol is None:
        raise VerificationFailed(f"{what} on points {list(ids)} is not rigid")
    for v in ids:
        x[v] = sol[local[v]]


def run_two_round(oracle: Oracle, b: int | None = None, *,
                  plan: RoundOnePlan | None = None,
                  gadget: Sequence[Pair] = JEWEL) -> AlgorithmReport:
    """Run the three-path algorithm against ``oracle`` and place every point."""
    if plan is None:
        if b is None:
            raise ValueError("either b or plan is required")
        plan = build_round1_plan(b)
    if oracle.n != plan.n:
        raise ValueError(f"oracle has {oracle.n} points, plan needs {plan.n}")
    pairs1 = plan.round1_pairs()
    ans = _ask(oracle, pairs1, 1)

    core = build_rigid_core({e: ans[edge_key(*e)] for e in plan.core_edges},
                            gadgets=len(plan.gadgets),
                            triangle_points=len(plan.triangle_points), gadget=gadget)
    x: dict[int, Fraction] = dict(core.coords)
    valence = ValenceState.fresh(plan.core)
    unused = {p: list(plan.leaves[p]) for p in plan.core}
    hub = {q: p for p in plan.core for q in plan.leaves[p]}
    components = []
    triplets = []
    for r1, r2, r3, s in plan.links:
        ctx = {"r1s": ans[(r1, s)], "r2s": ans[(r2, s)], "r3s": ans[(r3, s)]}
        p1, p2, p3 = select_triplet(valence, x, ctx)
        ctx.update(p1p2=abs(x[p1] - x[p2]), p2p3=abs(x[p2] - x[p3]), p1p3=abs(x[p1] - x[p3]))
        qs = []
        for serial, (p, key) in zip((4, 5, 6), ((p1, "p1q1"), (p2, "p2q2"), (p3, "p3q3"))):
            q = select_leaf_edge([(c, ans[edge_key(p, c)]) for c in unused[p]], serial, ctx)
            ctx[key] = ans[edge_key(p, q)]
            unused[p].remove(q)
            qs.append(q)
        valence.attach((p1, p2, p3))
        triplets.append((p1, p2, p3))
        components.append(ThreePathComponent((p1, p2, p3, *qs, r1, r2, r3, s)))

    leftover = [q for p in plan.core for q in unused[p]]
    half = len(leftover) // 2

    def compatible(a: int, c: int) -> bool:
        return hub[a] != hub[c] and ans[edge_key(hub[a], a)] != ans[edge_key(hub[c], c)]

    cycles = match_pairs(leftover[:half], leftover[half:2 * half], compatible)
    odd = leftover[2 * half:]
    tri_partner = {q: plan.core[0] if hub[q] != plan.core[0] else plan.core[1] for q in odd}

    pairs2 = [pair for c in components for pair in c.pairs(round=2)]
    pairs2 += cycles
    pairs2 += [(q, tri_partner[q]) for q in odd]
    ans.update(_ask(oracle, pairs2, 2))

    for c in components:
        report = check_three_path(c.lengths(x, ans))
        if not report.ok:
            raise VerificationFailed(f"component {c.ids} violates {report.violations[0]}")
        ids = c.ids
        _place_by(x, ids, [(ids[a], ids[b]) for a, b in COMPONENT_EDGES], ans, ids[:3],
                  "three-path component")
    for a, c in cycles:
        _place_by(x, (hub[a], a, c, hub[c]), [(hub[a], a), (a, c), (c, hub[c])], ans,
                  (hub[a], hub[c]), "four-cycle")
    for q in odd:
        _place_by(x, (hub[q], q, tri_partner[q]), [(hub[q], q), (q, tri_partner[q])], ans,
                  (hub[q], tri_partner[q]), "triangle")
    for p in plan.padding:
        _place_by(x, (0, 1, p), [(0, p), (1, p)], ans, (0, 1), "padding triangle")

    placement = _check_hidden(oracle, x)
    edges = [QueryEdge(a, b, 1, ans[edge_key(a, b)]) for a, b in pairs1]
    edges += [QueryEdge(a, b, 2, ans[edge_key(a, b)]) for a, b in pairs2]
    graph = Ppg(plan.n, tuple(edges), plan.roles())
    return AlgorithmReport(
        "three-path", plan.n, len(pairs1), len(pairs2), placement, True, graph,
        b=plan.b, components=len(components), padding=len(plan.padding),
        four_cycles=len(cycles), triangles=len(odd),
        valence_history=list(valence.history), final_valences=dict(valence.valence),
        triplets=triplets, expected=expected_counts(plan.b) if plan.b else {})


def run_triangle_baseline(oracle: Oracle, n: int | None = None) -> AlgorithmReport:
    """One round, ``2n-3`` queries: ``|p0p1|`` and both ``|p0pi|``, ``|p1pi|``."""
    n = oracle.n if n is None else n
    if n < 2 or n != oracle.n:
        raise ValueError(f"triangle baseline needs n >= 2 matching the oracle, got {n}")
    pairs = [(0, 1)] + [(e, i) for i in range(2, n) for e in (0, 1)]
    ans = _ask(oracle, pairs, 1)
    x = {0: Fraction(0), 1: ans[(0, 1)]}
    for i in range(2, n):
        _place_by(x, (0, 1, i), [(0, i), (1, i)], ans, (0, 1), "triangle")
    graph = Ppg(n, tuple(QueryEdge(a, b, 1, ans[edge_key(a, b)]) for a, b in pairs))
    return AlgorithmReport("triangle", n, len(pairs), 0, _check_hidden(oracle, x), True, graph,
                           triangles=n - 2, expected={"total": 2 * n - 3})


def run_quadrilateral_baseline(oracle: Oracle, n: int | None = None) -> AlgorithmReport:
    """Two rounds, ``3n/2 - 1`` queries for even ``n`` (``(3n-1)/2`` for odd).

    Round 1 joins hubs 0 and 1 and hangs ``m`` leaves on hub 0 and the rest
    on hub 1, which leaves hub 1 at least two spares.  Round 2 closes ``m``
    4-cycles ``0-a-b-1`` whose sides ``|0a|`` and ``|1b|`` differ, and ties
    each spare hub-1 leaf to hub 0.
    """
    n = oracle.n if n is None else n
    if n < 8 or n != oracle.n:
        raise ValueError(f"quadrilateral baseline needs n >= 8 matching the oracle, got {n}")
    m = (n - 4) // 2
    left = list(range(2, 2 + m))
    right = list(range(2 + m, n))
    pairs1 = [(0, 1)] + [(0, a) for a in left] + [(1, c) for c in right]
    ans = _ask(oracle, pairs1, 1)

    free = list(right)
    cycles = []
    for a in left:
        for c in free:
            if ans[(0, a)] != ans[(1, c)]:
                cycles.append((a, c))
                free.remove(c)
                break
        else:
            raise VerificationFailed(f"no admissible partner for leaf {a}")
    pairs2 = list(cycles) + [(0, c) for c in free]
    ans.update(_ask(oracle, pairs2, 2))

    x = {0: Fraction(0), 1: ans[(0, 1)]}
    for a, c in cycles:
        _place_by(x, (0, a, c, 1), [(0, a), (a, c), (c, 1)], ans, (0, 1), "four-cycle")
    for c in free:
        _place_by(x, (0, c, 1), [(0, c), (1, c)], ans, (0, 1), "triangle")
    edges = [QueryEdge(a, b, 1, ans[edge_key(a, b)]) for a, b in pairs1]
    edges += [QueryEdge(a, b, 2, ans[edge_key(a, b)]) for a, b in pairs2]
    graph = Ppg(n, tuple(edges))
    return AlgorithmReport("quad", n, len(pairs1), len(pairs2), _check_hidden(oracle, x), True,
                           graph, four_cycles=len(cycles), triangles=len(free),
                           expected={"total": 2 * n - 3 - m})
