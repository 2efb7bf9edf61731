"""Exact value types shared by every part of the package.

Lengths and coordinates are :class:`fractions.Fraction` values; nothing in
the core ever touches a float.  A :class:`Ppg` is an immutable point
placement graph whose edges carry the round they were queried in and the
answered length.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

Rational = Fraction


class DuplicateCoordinate(ValueError):
    """Two points of a placement share a coordinate."""


def parse_rational(text: str | int | Fraction) -> Fraction:
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    return Fraction(text.strip())


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True, order=True)
class QueryEdge:
    a: int
    b: int
    round: int = 1
    length: Fraction = field(default=Fraction(1), compare=False)

    def __post_init__(self) -> None:
        if self.a == self.b:
            raise ValueError(f"self-loop on point {self.a}")
        if self.a < 0 or self.b < 0:
            raise ValueError("point ids are non-negative")
        if self.round not in (1, 2):
            raise ValueError(f"round must be 1 or 2, got {self.round}")
        length = Fraction(self.length)
        if length <= 0:
            raise ValueError(f"edge ({self.a},{self.b}) has non-positive length {length}")
        if self.a > self.b:
            a, b = self.b, self.a
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)
        object.__setattr__(self, "length", length)

    @property
    def pair(self) -> tuple[int, int]:
        return (self.a, self.b)

    def other(self, v: int) -> int:
        return self.b if v == self.a else self.a


def edge_key(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class Ppg:
    """Point placement graph on points ``0 .. n-1``.

    ``roles`` is an optional free-form annotation (``{point: "core"}`` etc.)
    used by the algorithm and the DOT exporter; it does not take part in
    equality.
    """

    n: int
    edges: tuple[QueryEdge, ...] = ()
    roles: Mapping[int, str] = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self) -> None:
        edges = tuple(sorted(self.edges, key=lambda e: e.pair))
        seen: set[tuple[int, int]] = set()
        for e in edges:
            if e.b >= self.n:
                raise ValueError(f"edge {e.pair} outside point range 0..{self.n - 1}")
            if e.pair in seen:
                raise ValueError(f"duplicate edge {e.pair}")
            seen.add(e.pair)
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_lengths(cls, n: int, lengths: Mapping[tuple[int, int], Fraction | int | str],
                     round: int = 1) -> "Ppg":
        return cls(n, tuple(QueryEdge(a, b, round, parse_rational(v))
                            for (a, b), v in lengths.items()))

    @classmethod
    def from_placement(cls, coords: Mapping[int, Fraction] | "Placement",
                       pairs: Iterable[tuple[int, int]], round: int = 1) -> "Ppg":
        """Read edge lengths off a placement (realizable by construction)."""
        if isinstance(coords, Placement):
            coords = coords.as_dict()
        n = max(coords) + 1 if coords else 0
        return cls(n, tuple(QueryEdge(a, b, round, abs(Fraction(coords[a]) - Fraction(coords[b])))
                            for a, b in pairs))

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def lengths(self) -> dict[tuple[int, int], Fraction]:
        return {e.pair: e.length for e in self.edges}

    def length(self, a: int, b: int) -> Fraction:
        key = edge_key(a, b)
        for e in self.edges:
            if e.pair == key:
                return e.length
        raise KeyError(key)

    def adjacency(self) -> dict[int, list[tuple[int, QueryEdge]]]:
        adj: dict[int, list[tuple[int, QueryEdge]]] = {v: [] for v in range(self.n)}
        for e in self.edges:
            adj[e.a].append((e.b, e))
            adj[e.b].append((e.a, e))
        return adj

    def degrees(self) -> dict[int, int]:
        deg = {v: 0 for v in range(self.n)}
        for e in self.edges:
            deg[e.a] += 1
            deg[e.b] += 1
        return deg

    def components(self) -> list[list[int]]:
        adj = self.adjacency()
        seen: set[int] = set()
        comps = []
        for v in range(self.n):
            if v in seen:
                continue
            stack, comp = [v], []
            seen.add(v)
            while stack:
                u = stack.pop()
                comp.append(u)
                for w, _ in adj[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def round_view(self, round: int) -> "Ppg":
        return ppg_round_view(self, round)

    def subgraph(self, points: Iterable[int]) -> tuple["Ppg", list[int]]:
        """Induced subgraph relabelled to ``0..k-1``; returns it with the id list."""
        ids = sorted(set(points))
        local = {p: i for i, p in enumerate(ids)}
        edges = tuple(QueryEdge(local[e.a], local[e.b], e.round, e.length)
                      for e in self.edges if e.a in local and e.b in local)
        roles = {local[p]: r for p, r in self.roles.items() if p in local}
        return Ppg(len(ids), edges, roles), ids

    def with_edges(self, extra: Iterable[QueryEdge]) -> "Ppg":
        return Ppg(self.n, self.edges + tuple(extra), dict(self.roles))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "edges": [{"a": e.a, "b": e.b, "round": e.round, "len": format_rational(e.length)}
                      for e in self.edges],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Ppg":
        edges = tuple(QueryEdge(int(d["a"]), int(d["b"]), int(d.get("round", 1)),
                                parse_rational(d["len"]))
                      for d in data["edges"])
        return cls(int(data["n"]), edges)


def ppg_round_view(g: Ppg, round: int) -> Ppg:
    """``round=1`` keeps the first-round edges only; ``round=2`` is the whole graph."""
    if round == 1:
        return Ppg(g.n, tuple(e for e in g.edges if e.round == 1), dict(g.roles))
    if round == 2:
        return g
    raise ValueError(f"round must be 1 or 2, got {round}")


def load_instance(path) -> Ppg:
    with open(path) as fh:
        return Ppg.from_json(json.load(fh))


def dump_instance(g: Ppg, path) -> None:
    with open(path, "w") as fh:
        json.dump(g.to_json(), fh, indent=1)
        fh.write("\n")


@dataclass(frozen=True)
class Placement:
    """Rational coordinates for points, stored sorted by point id.

    A placement is not necessarily canonical; :func:`canonicalize` (or
    :meth:`canonical`) returns the representative of its
    translation/reflection class.
    """

    coords: tuple[tuple[int, Fraction], ...]

    def __init__(self, coords: Mapping[int, Fraction] | Iterable[tuple[int, Fraction]]):
        items = coords.items() if isinstance(coords, Mapping) else coords
        object.__setattr__(self, "coords",
                           tuple(sorted((int(p), Fraction(x)) for p, x in items)))

    def __getitem__(self, p: int) -> Fraction:
        for q, x in self.coords:
            if q == p:
                return x
        raise KeyError(p)

    def __iter__(self) -> Iterator[int]:
        return (p for p, _ in self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.coords)

    def canonical(self) -> "Placement":
        return canonicalize(self.as_dict())

    def satisfies(self, g: Ppg) -> bool:
        pos = self.as_dict()
        return all(abs(pos[e.a] - pos[e.b]) == e.length for e in g.edges)

    def to_json(self) -> dict[str, str]:
        return {str(p): format_rational(x) for p, x in self.coords}


def canonicalize(raw: Mapping[int, Fraction]) -> Placement:
    """Canonical representative of ``raw`` modulo translation and reflection.

    The minimum coordinate becomes 0; between the placement and its mirror
    image, the one giving the lowest differing point id the smaller value
    wins.
    """
    pos = {p: Fraction(x) for p, x in raw.items()}
    values = list(pos.values())
    if len(set(values)) != len(values):
        seen: dict[Fraction, int] = {}
        for p in sorted(pos):
            if pos[p] in seen:
                raise DuplicateCoordinate(f"points {seen[pos[p]]} and {p} both at {pos[p]}")
            seen[pos[p]] = p
    if not pos:
        return Placement({})
    lo, hi = min(values), max(values)
    forward = {p: x - lo for p, x in pos.items()}
    mirror = {p: hi - x for p, x in pos.items()}
    for p in sorted(pos):
        if forward[p] != mirror[p]:
            return Placement(forward if forward[p] < mirror[p] else mirror)
    return Placement(forward)


@dataclass
class ValenceState:
    """Number of three-path components attached to each core point."""

    valence: dict[int, int]
    history: list[int] = field(default_factory=list)

    @classmethod
    def fresh(cls, points: Iterable[int]) -> "ValenceState":
        return cls({p: 0 for p in points})

    def spread(self) -> int:
        return max(self.valence.values()) - min(self.valence.values())

    def bucket(self, d: int) -> list[int]:
        return sorted(p for p, v in self.valence.items() if v == d)

    def attach(self, points: Iterable[int]) -> None:
        for p in points:
            self.valence[p] += 1
        self.history.append(self.spread())
