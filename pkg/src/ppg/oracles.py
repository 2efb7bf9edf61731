"""Distance oracles: an honest one over hidden positions and a two-round
adversary that tries to leave the final query graph ambiguous.

The adversary never lies.  In round 1 it commits to a full placement built
to its strategy (heavy nodes far apart, equal-length tricks on degree-2
paths) and answers from it.  In round 2 it looks for a stretch of a
degree-2 path whose interior can be laid out in two ways that agree on
every answered length, moves the committed placement to one of them and
answers from that.  Every answer is therefore realizable by construction.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .lowerbound import _walks, attack_table, solve_window
from .model import Placement, Ppg, QueryEdge, edge_key, format_rational, parse_rational
from .rigidity import InstanceTooLarge, brute_force_cap, solve_all_placements

Pair = tuple[int, int]


class UnknownPoint(KeyError):
    pass


class InconsistentStrategy(RuntimeError):
    pass


class RoundOrderError(RuntimeError):
    pass


@dataclass(frozen=True)
class HiddenInstance:
    positions: tuple[Fraction, ...]
    seed: int | None = None

    def __post_init__(self) -> None:
        pos = tuple(Fraction(x) for x in self.positions)
        if len(set(pos)) != len(pos):
            raise ValueError("hidden positions must be pairwise distinct")
        object.__setattr__(self, "positions", pos)

    @classmethod
    def random(cls, n: int, seed: int, *, scale: int = 10**12,
               denominator: int = 1000) -> "HiddenInstance":
        rng = random.Random(seed)
        ints = rng.sample(range(scale), n)
        return cls(tuple(Fraction(k, denominator) for k in ints), seed)

    @property
    def n(self) -> int:
        return len(self.positions)

    def placement(self) -> Placement:
        return Placement(dict(enumerate(self.positions)))


def honest_answer(inst: HiddenInstance, batch: Sequence[Pair]) -> list[Fraction]:
    out = []
    for a, b in batch:
        for p in (a, b):
            if not 0 <= p < inst.n:
                raise UnknownPoint(p)
        out.append(abs(inst.positions[a] - inst.positions[b]))
    return out


@dataclass
class Transcript:
    rounds: list[list[tuple[Pair, Fraction]]] = field(default_factory=list)
    claim: Placement | None = None

    def record(self, round: int, pairs: Sequence[Pair], answers: Sequence[Fraction]) -> None:
        if round != len(self.rounds) + 1:
            raise RoundOrderError(f"round {round} submitted after {len(self.rounds)} rounds")
        seen = {edge_key(*p) for rnd in self.rounds for p, _ in rnd}
        batch = []
        for p, v in zip(pairs, answers):
            key = edge_key(*p)
            if key in seen:
                raise ValueError(f"pair {key} queried twice")
            seen.add(key)
            batch.append((key, Fraction(v)))
        self.rounds.append(batch)

    def graph(self, n: int) -> Ppg:
        return Ppg(n, tuple(QueryEdge(a, b, r, v) for r, rnd in enumerate(self.rounds, 1)
                            for (a, b), v in rnd))

    def to_json(self) -> dict:
        out = {"rounds": [[{"a": a, "b": b, "len": format_rational(v)} for (a, b), v in rnd]
                          for rnd in self.rounds]}
        if self.claim is not None:
            out["claim"] = self.claim.to_json()
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "Transcript":
        t = cls()
        for i, rnd in enumerate(data["rounds"], 1):
            t.record(i, [(d["a"], d["b"]) for d in rnd], [parse_rational(d["len"]) for d in rnd])
        if "claim" in data:
            t.claim = Placement({int(k): parse_rational(v) for k, v in data["claim"].items()})
        return t


class HonestOracle:
    def __init__(self, instance: HiddenInstance):
        self.instance = instance
        self.n = instance.n
        self.transcript = Transcript()

    def answer(self, pairs: Sequence[Pair], round: int) -> list[Fraction]:
        out = honest_answer(self.instance, pairs)
        self.transcript.record(round, pairs, out)
        return out

    def hidden_placement(self) -> Placement:
        return self.instance.placement()


@dataclass
class AdversaryState:
    committed: dict[int, Fraction]
    c: Fraction
    transcript: Transcript
    pending_ambiguities: list[tuple[int, ...]] = field(default_factory=list)
    attack: dict | None = None


@dataclass(frozen=True)
class Verdict:
    defeated: bool
    witnesses: tuple[Placement, ...]
    reason: str

    def to_json(self) -> dict:
        return {"defeated": self.defeated, "reason": self.reason,
                "witnesses": [w.to_json() for w in self.witnesses]}


def adversary_verdict(g2: Ppg | None = None, transcript: Transcript | None = None, *,
                      n: int | None = None, cap: int | None = None) -> Verdict:
    """Defeated iff the final graph has two or more placements (brute force)."""
    if g2 is None:
        if transcript is None or n is None:
            raise ValueError("need the final graph or a transcript with n")
        g2 = transcript.graph(n)
    if not g2.is_connected():
        return Verdict(True, (), "final graph is disconnected")
    sols = solve_all_placements(g2, cap=cap, limit=2)
    if len(sols) >= 2:
        return Verdict(True, tuple(sols), "two placements")
    return Verdict(False, (), "unique placement")


def _generic(rng: random.Random, lo: Fraction, hi: Fraction) -> Fraction:
    return lo + (hi - lo) * Fraction(rng.randrange(1, 10**6), 10**6)


class AdversaryOracle:
    """Two-round adversary for instances of at most ``cap`` points."""

    attempts = 50

    def __init__(self, n: int, seed: int = 0, c: Fraction | int = 1, cap: int | None = None):
        self.cap = brute_force_cap(cap)
        if n > self.cap:
            raise InstanceTooLarge(f"adversary supports at most {self.cap} points, got {n}")
        self.n = n
        self.rng = random.Random(seed)
        self.state = AdversaryState({}, Fraction(c), Transcript())
        self._round1: list[Pair] = []

    @property
    def transcript(self) -> Transcript:
        return self.state.transcript

    def answer(self, pairs: Sequence[Pair], round: int) -> list[Fraction]:
        if round == 1:
            return self.round1(pairs)
        if round == 2:
            return self.round2(pairs)
        raise RoundOrderError("the adversary plays two rounds")

    def hidden_placement(self) -> None:
        return None

    # round 1 --------------------------------------------------------------------

    def round1(self, pairs: Sequence[Pair]) -> list[Fraction]:
        if self.transcript.rounds:
            raise RoundOrderError("round 1 already answered")
        self._round1 = [edge_key(*p) for p in pairs]
        x, pending = self._layout(self._round1)
        self.state.committed = x
        self.state.pending_ambiguities = pending
        out = [abs(x[a] - x[b]) for a, b in self._round1]
        self.transcript.record(1, self._round1, out)
        return out

    def _layout(self, pairs: list[Pair]):
        n, c, rng = self.n, self.state.c, self.rng
        g1 = Ppg(n, tuple(QueryEdge(a, b) for a, b in pairs))
        deg = g1.degrees()
        heavy = {v for v in range(n) if deg[v] >= 3}
        walks, cycles = _walks(g1, lambda v: deg[v] == 2)
        walks = [w for w, _ in walks]
        span = 3 * c * (len(pairs) + 1)
        gap = 8 * span

        # S4: heavy node of degree 3 with two pendant paths and one single-node
        # path to another heavy node gets that path's first edge set to c
        s4: set[tuple[int, int]] = set()
        for h in sorted(v for v in heavy if deg[v] == 3):
            mine = [(i, w) for i, w in enumerate(walks) if h in (w[0], w[-1]) and w[0] != w[-1]]
            pend = [i for i, w in mine if deg[w[-1] if w[0] == h else w[0]] == 1]
            link = [i for i, w in mine if len(w) == 3 and w[0] in heavy and w[-1] in heavy]
            if len(mine) == 3 and len(pend) == 2 and len(link) == 1:
                s4.add((link[0], h))

        for _ in range(self.attempts):
            x: dict[int, Fraction] = {}
            pending: list[tuple[int, ...]] = []
            slots = itertools.count(1)

            def slot() -> Fraction:
                return gap * next(slots) + _generic(rng, Fraction(0), gap / 4)

            def sign() -> int:
                return rng.choice((1, -1))

            for h in sorted(heavy):
                x[h] = slot()
            ok = True
            for i, w in enumerate(walks):
                h0, h1 = w[0] in heavy, w[-1] in heavy
                if h1 and not h0 or (i, w[-1]) in s4:
                    w = w[::-1]
                    h0, h1 = h1, h0
                if h0 and h1:
                    if w[0] == w[-1]:
                        for v in w[1:-1]:
                            x[v] = x[w[0]] + _generic(rng, -span, span)
                    else:
                        ok &= self._chain(x, w, (i, w[0]) in s4, pending, sign)
                else:
                    if not h0:
                        x[w[0]] = slot()
                    a = _generic(rng, 2 * c, 3 * c)
                    # pendant paths start with a at the heavy end; free paths start with c
                    first, second = (a, c) if h0 else (c, a)
                    d = sign()
                    for j, v in enumerate(w[1:]):
                        x[v] = x[w[j]] + d * (first if j % 2 == 0 else second)
            for cyc in cycles:
                base = slot()
                for v in cyc:
                    x[v] = base + _generic(rng, Fraction(0), span)
            for v in range(n):
                if v not in x:
                    x[v] = slot()
            if ok and len(set(x.values())) == n:
                return x, pending
        raise InconsistentStrategy("could not find a realizable first-round layout")

    def _chain(self, x, w, s4_first, pending, sign) -> bool:
        """Path between two heavy nodes: rectangles on each group of three edges."""
        c, rng = self.state.c, self.rng
        m = len(w) - 1
        if m == 1:
            return True
        if m == 2:
            step = c if s4_first else _generic(rng, 2 * c, 3 * c)
            x[w[1]] = x[w[0]] + sign() * step
            return True
        steps: list[Fraction | None] = [None] * m
        groups = [i for i in range(1, m - 1, 3)]
        for i in groups:
            a = _generic(rng, 2 * c, 3 * c)
            d = sign()
            steps[i - 1], steps[i + 1] = d * a, -d * a
            steps[i] = sign() * _generic(rng, 2 * c, 3 * c)
            pending.append((w[i], w[i + 1]))
        for j in range(m):
            if steps[j] is None:
                steps[j] = sign() * _generic(rng, 2 * c, 3 * c)
        last = groups[-1]
        steps[last] = 0
        steps[last] = (x[w[-1]] - x[w[0]]) - sum(steps)
        if steps[last] == 0:
            return False
        for j in range(1, m):
            x[w[j]] = x[w[j - 1]] + steps[j - 1]
        return True

    # round 2 --------------------------------------------------------------------

    def round2(self, pairs: Sequence[Pair]) -> list[Fraction]:
        if len(self.transcript.rounds) != 1:
            raise RoundOrderError("round 2 needs exactly one answered round")
        new = [edge_key(*p) for p in pairs]
        x = dict(self.state.committed)
        g2 = Ppg(self.n, tuple(QueryEdge(a, b, 1, abs(x[a] - x[b])) for a, b in self._round1)
                 + tuple(QueryEdge(a, b, 2, Fraction(1)) for a, b in new))
        attack = self._find_attack(g2, x)
        self.state.attack = attack
        if attack and attack.get("positions"):
            x.update(attack["positions"])
        self.state.committed = x
        out = [abs(x[a] - x[b]) for a, b in new]
        self.transcript.record(2, new, out)
        return out

    def _find_attack(self, g2: Ppg, x: dict[int, Fraction]) -> dict | None:
        if not g2.is_connected():
            return {"kind": "disconnected"}
        deg = g2.degrees()
        values = set(x.values())
        for v in range(self.n):
            if deg[v] == 1:
                (u, _), = g2.adjacency()[v]
                if 2 * x[u] - x[v] not in values:
                    return {"kind": "leaf", "points": [v]}
        walks, cycles = _walks(g2, lambda v: deg[v] == 2)
        windows = []
        for w, edges in walks:
            windows += self._windows(w, edges)
        for cyc in cycles:
            w = cyc + (cyc[0],)
            adj = {edge_key(w[i], w[i + 1]) for i in range(len(cyc))}
            lookup = {e.pair: e for e in g2.edges if e.pair in adj}
            edges = tuple(lookup[edge_key(w[i], w[i + 1])] for i in range(len(cyc)))
            windows += self._windows(w, edges)
        windows.sort(key=lambda item: item[0])
        for _, w, rounds, hint in windows:
            found = self._attack_window(w, rounds, x, hint)
            if found:
                return found
        return None

    def _windows(self, w, edges):
        """Candidate stretches of 2..6 edges; a four-node path between heavy
        nodes that matches a tabulated pattern is tried first with its recipe."""
        out = []
        rounds = tuple(e.round for e in edges)
        table = {r.pattern: r for r in attack_table()}
        if len(w) == 6 and w[0] != w[-1]:
            for ww, rr in ((w, rounds), (w[::-1], rounds[::-1])):
                pattern = tuple("E1" if r == 1 else "E2" for r in rr)
                if pattern in table:
                    out.append((0, ww, rr, table[pattern]))
        m = len(w) - 1
        for i in range(m):
            for j in range(i + 2, min(i + 6, m) + 1):
                out.append((j - i, w[i:j + 1], rounds[i:j], None))
        return out

    def _attack_window(self, w, rounds, x, recipe) -> dict | None:
        c, rng = self.state.c, self.rng
        m = len(w) - 1
        inner = set(w[1:-1])
        others = {v for p, v in x.items() if p not in inner}
        D = x[w[-1]] - x[w[0]]
        known = {i: abs(x[w[i + 1]] - x[w[i]]) for i in range(m) if rounds[i] == 1}
        unknown = [i for i in range(m) if rounds[i] == 2]

        def positions(signs, lengths):
            pos = [x[w[0]]]
            for i in range(m):
                pos.append(pos[-1] + signs[i] * lengths[i])
            return pos

        def valid(pos):
            mid = pos[1:-1]
            return (pos[-1] == x[w[-1]] and len(set(mid)) == len(mid)
                    and not others.intersection(mid))

        def filler():
            return _generic(rng, 2 * c, 3 * c)

        if recipe is not None:
            s, t = recipe.signs, recipe.other_signs
            pairs = [(s, t), (tuple(-v for v in s), tuple(-v for v in t))]
        else:
            vectors = list(itertools.product((1, -1), repeat=m))
            pairs = itertools.combinations(vectors, 2)
        for s, t in pairs:
            sol = solve_window(s, t, known, unknown, D, filler)
            if sol is None:
                continue
            lengths = {**known, **sol}
            f, g = positions(s, lengths), positions(t, lengths)
            if valid(f) and valid(g):
                return {"kind": "recipe" if recipe else "window", "path": list(w),
                        "positions": {w[i]: f[i] for i in range(1, m)},
                        "alternative": {w[i]: g[i] for i in range(1, m)}}
        return None

    def verdict(self) -> Verdict:
        return adversary_verdict(self.transcript.graph(self.n), cap=self.cap)
