"""Rigidity condition tables for the three-path component.

Every table below is literal text, one condition per line, so it can be
compared line by line with the published lists.  An expression such as
``||p1p2| ± |r1s| ± |r2s||`` stands for the absolute value of a signed sum;
a condition ``lhs != rhs`` is violated when some sign choice on the left
equals some sign choice on the right.

Edge names are written as in the source (``p3p1``, ``sr2``) and normalised
for lookup, so ``p3p1`` and ``p1p3`` name the same edge.
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass, fields
from fractions import Fraction
from typing import Iterable, Mapping

from .model import parse_rational

PM = "±"

_TOKEN = re.compile(r"[pqr][123]|s")
_ORDER = {"p": 0, "q": 1, "r": 2, "s": 3}


class MissingEdge(KeyError):
    pass


def normalize_edge(name: str) -> str:
    tokens = _TOKEN.findall(name)
    if len(tokens) != 2 or "".join(tokens) != name:
        raise ValueError(f"not an edge name: {name!r}")
    tokens.sort(key=lambda t: (_ORDER[t[0]], t[1:]))
    return "".join(tokens)


@dataclass(frozen=True)
class LengthExpr:
    """``|t0 ± t1 ± ... ± tk|`` over named edge lengths."""

    terms: tuple[str, ...]

    @classmethod
    def parse(cls, text: str) -> "LengthExpr":
        body = text.replace("|", "").replace(" ", "").replace("+-", PM)
        terms = tuple(t for t in body.split(PM))
        for t in terms:
            normalize_edge(t)
        return cls(terms)

    @property
    def symbols(self) -> int:
        return len(self.terms) - 1

    def edges(self) -> set[str]:
        return {normalize_edge(t) for t in self.terms}

    def values(self, lengths: Mapping[str, Fraction]) -> list[Fraction]:
        """All ``2^k`` sign evaluations, absolute value applied, not deduplicated."""
        try:
            vals = [lengths[normalize_edge(t)] for t in self.terms]
        except KeyError as exc:
            raise MissingEdge(exc.args[0]) from None
        head, rest = vals[0], vals[1:]
        return [abs(head + sum(s * v for s, v in zip(signs, rest)))
                for signs in itertools.product((1, -1), repeat=len(rest))]

    def __str__(self) -> str:
        inner = f" {PM} ".join(f"|{t}|" for t in self.terms)
        return inner if len(self.terms) == 1 else f"|{inner}|"


def expand(e: LengthExpr | str, lengths: Mapping[str, Fraction]) -> set[Fraction]:
    if isinstance(e, str):
        e = LengthExpr.parse(e)
    return set(e.values(_normalized(lengths)))


@dataclass(frozen=True)
class Condition:
    lhs: LengthExpr
    rhs: LengthExpr

    @classmethod
    def parse(cls, text: str) -> "Condition":
        left, right = re.split(r"!=|≠", text)
        return cls(LengthExpr.parse(left), LengthExpr.parse(right))

    def edges(self) -> set[str]:
        return self.lhs.edges() | self.rhs.edges()

    def comparisons(self) -> int:
        return 2 ** self.lhs.symbols * 2 ** self.rhs.symbols

    def collision(self, lengths: Mapping[str, Fraction]) -> Fraction | None:
        """The common value if the condition is violated, else ``None``."""
        common = set(self.lhs.values(lengths)) & set(self.rhs.values(lengths))
        return min(common) if common else None

    def __str__(self) -> str:
        return f"{self.lhs} ≠ {self.rhs}"


@dataclass(frozen=True)
class ConditionSet:
    label: str
    serial: int
    conditions: tuple[Condition, ...]
    target: str | None = None

    @property
    def forbidden(self) -> tuple[LengthExpr, ...]:
        return tuple(c.rhs for c in self.conditions)

    def expanded_count(self) -> int:
        return sum(c.comparisons() for c in self.conditions)

    def forbidden_values(self, lengths: Mapping[str, Fraction]) -> list[Fraction]:
        lengths = _normalized(lengths)
        return [v for c in self.conditions for v in c.rhs.values(lengths)]

    def edges(self) -> set[str]:
        return set().union(*(c.edges() for c in self.conditions))

    def lines(self) -> list[str]:
        if self.target is not None:
            items = ", ".join(str(e) for e in self.forbidden)
            return [f"{self.label}: |{self.target}| ∉ {{{items}}}"]
        return [f"{self.label}: {c}" for c in self.conditions]


_SERIAL_CONDITIONS = {
    1: ("p1p2", ["|r1s|", "|r2s|", "||r1s| ± |r2s||"]),
    2: ("p2p3", ["|r2s|", "|r3s|", "||r2s| ± |r3s||"]),
    3: ("p3p1", ["|r3s|", "|r1s|", "||r3s| ± |r1s||"]),
    4: ("p1q1", [
        "|r1s|",
        "|r2s|",
        "||r1s| ± |r2s||",
        "||p1p2| ± |r1s||",
        "||p1p2| ± |r2s||",
        "||p1p3| ± |r1s||",
        "||p1p3| ± |r3s||",
        "||p1p2| ± |r1s| ± |r2s||",
        "||p1p3| ± |r1s| ± |r3s||",
    ]),
    5: ("p2q2", [
        "|r1s|",
        "|r2s|",
        "|p1q1|",
        "||r1s| ± |r2s||",
        "||p1p2| ± |r1s||",
        "||p1p2| ± |r2s||",
        "||p2p3| ± |r2s||",
        "||p2p3| ± |r3s||",
        "||p1q1| ± |r1s||",
        "||p1q1| ± |r2s||",
        "||p1p2| ± |r1s| ± |r2s||",
        "||p2p3| ± |r2s| ± |r3s||",
        "||p1q1| ± |r1s| ± |r2s||",
        "||p1q1| ± |p1p2| ± |r1s||",
        "||p1q1| ± |p1p2| ± |r2s||",
        "||p1q1| ± |p1p2| ± |r1s| ± |r2s||",
    ]),
    6: ("p3q3", [
        "|r1s|",
        "|r2s|",
        "|r3s|",
        "|p1q1|",
        "|p2q2|",
        "||r2s| ± |r3s||",
        "||r3s| ± |r1s||",
        "||p1p3| ± |r3s||",
        "||p2p3| ± |r3s||",
        "||p1q1| ± |r1s||",
        "||p1q1| ± |r3s||",
        "||p2q2| ± |r2s||",
        "||p2q2| ± |r3s||",
        "||p1p3| ± |r1s| ± |r3s||",
        "||p2p3| ± |r2s| ± |r3s||",
        "||p1q1| ± |r1s| ± |r3s||",
        "||p2q2| ± |r2s| ± |r3s||",
        "||p1q1| ± |p1p3| ± |r3s||",
        "||p2q2| ± |p2p3| ± |r3s||",
        "||p1q1| ± |p1p3| ± |r1s| ± |r2s||",
        "||p2q2| ± |p2p3| ± |r2s| ± |r3s||",
    ]),
}

# grouped by layer-graph shape of the 7-cycle (p1, q1, r1, s, r2, q2, p2);
# group 3 keeps the printed clause ||p2q2| ± |q2r2|| ≠ |p2q2| as is
_SEVEN_CYCLE = {
    1: [
        "|p1p2| != |q2r2|",
        "|p1p2| != |q1r1|",
        "|p2q2| != |r2s|",
        "|p1q1| != |r1s|",
        "|q2r2| != |r1s|",
        "|q1r1| != |r2s|",
        "|p1q1| != |p2q2|",
    ],
    2: [
        "||p1p2| ± |p2q2|| != |r2s|",
        "||p2q2| ± |q2r2|| != |r1s|",
        "||p1p2| ± |p1q1| ± |p2q2|| != |r1s|",
        "|p1q1| != ||r1s| ± |r2s||",
        "|p1p2| != ||q1r1| ± |r1s||",
        "||p1q1| ± |q1r1|| != |p2q2|",
        "||p1q1| ± |p1p2|| != |q2r2|",
    ],
    3: [
        "||p1p2| ± |p1q1|| != |r1s|",
        "||p1q1| ± |q1r1|| != |r2s|",
        "||p1p2| ± |p1q1| ± |p2q2|| != |r2s|",
        "|p2q2| != ||r1s| ± |r2s||",
        "|p1p2| != ||q2r2| ± |r2s||",
        "||p2q2| ± |q2r2|| != |p2q2|",
        "||p2q2| ± |p1p2|| != |q1r1|",
    ],
    4: [
        "|p1p2| != |r2s|",
        "|p1p2| != |r1s|",
        "|p2q2| != |r1s|",
        "|p1q1| != |r2s|",
        "||p1q1| ± |p2q2| ± |p1p2|| != ||r1s| ± |r2s||",
        "|p2q2| != |q1r1|",
        "|p1q1| != |q2r2|",
    ],
    5: [
        "|p2q2| != ||p1p2| ± |r1s||",
        "|p1q1| != ||p1p2| ± |r2s||",
        "|p1q1| != ||p1p2| ± |r1s| ± |r2s||",
        "|p2q2| != ||p1p2| ± |r1s| ± |r2s||",
        "|p1q1| != ||q2r2| ± |r2s||",
        "|p2q2| != ||q1r1| ± |r1s||",
        "|p1p2| != ||r1s| ± |r2s||",
    ],
    6: [
        "||p1q1| ± |q1r1|| != ||p2q2| ± |r2s||",
        "||p2q2| ± |q2r2|| != ||p1q1| ± |r1s||",
        "|q1r1| != ||p2q2| ± |r2s||",
        "|q2r2| != ||p1q1| ± |r1s||",
        "|p2q2| != ||p1q1| ± |r1s||",
        "|p1q1| != ||p2q2| ± |r2s||",
        "|p2q2| != ||p1q1| ± |r1s| ± |r2s||",
    ],
}

# replaces |p1p2| ≠ |q2r2| for the drawing where p1q1, q1r1, r1s, sr2 lie on one side
_REPLACEMENT = [
    "|p1p3| != ||p3q3| ± |r3s||",
    "|p1p3| != |r3s|",
    "||p3q3| ± |sr2|| != |p2q2|",
    "||p3q3| ± |sr2| ± |sr3|| != |p2q2|",
]

Q_R_EDGES = frozenset({"q1r1", "q2r2", "q3r3"})


def lemma2_condition_sets() -> list[ConditionSet]:
    return list(_serial_sets())


@functools.cache
def _serial_sets() -> tuple[ConditionSet, ...]:
    out = []
    for serial, (target, exprs) in _SERIAL_CONDITIONS.items():
        conds = tuple(Condition(LengthExpr((target,)), LengthExpr.parse(x)) for x in exprs)
        out.append(ConditionSet(f"serial {serial}", serial, conds, target))
    return tuple(out)


def seven_cycle_conditions() -> list[ConditionSet]:
    return [ConditionSet(f"group {g}", g, tuple(Condition.parse(c) for c in lines))
            for g, lines in _SEVEN_CYCLE.items()]


def appendixA_replacement_conditions() -> ConditionSet:
    return ConditionSet("replacement", 0, tuple(Condition.parse(c) for c in _REPLACEMENT))


@dataclass(frozen=True)
class ThreePathLengths:
    """Edge lengths of the three-path component plus the three pinned gaps.

    The ``q_i r_i`` lengths are only known after the second round and may be
    ``None`` when checking the conditions, which never mention them.
    """

    p1p2: Fraction
    p2p3: Fraction
    p3p1: Fraction
    p1q1: Fraction
    p2q2: Fraction
    p3q3: Fraction
    r1s: Fraction
    r2s: Fraction
    r3s: Fraction
    q1r1: Fraction | None = None
    q2r2: Fraction | None = None
    q3r3: Fraction | None = None

    def __post_init__(self) -> None:
        for f in fields(self):
            v = getattr(self, f.name)
            if v is not None:
                object.__setattr__(self, f.name, parse_rational(v))
        a, b, c = sorted((self.p1p2, self.p2p3, self.p3p1))
        if a + b != c:
            raise ValueError("pinned gaps |p1p2|, |p2p3|, |p3p1| are not collinear")

    @classmethod
    def from_mapping(cls, data: Mapping[str, object]) -> "ThreePathLengths":
        norm = {normalize_edge(k): parse_rational(v) for k, v in data.items()}
        names = {f.name: normalize_edge(f.name) for f in fields(cls)}
        return cls(**{attr: norm.get(key) for attr, key in names.items()})

    @classmethod
    def from_positions(cls, pos: Mapping[str, Fraction]) -> "ThreePathLengths":
        """Lengths read off role-named coordinates ``{"p1": x, ..., "s": x}``."""
        def d(a, b):
            return abs(Fraction(pos[a]) - Fraction(pos[b]))
        return cls(d("p1", "p2"), d("p2", "p3"), d("p3", "p1"),
                   d("p1", "q1"), d("p2", "q2"), d("p3", "q3"),
                   d("r1", "s"), d("r2", "s"), d("r3", "s"),
                   d("q1", "r1"), d("q2", "r2"), d("q3", "r3"))

    def as_dict(self) -> dict[str, Fraction]:
        return {normalize_edge(f.name): getattr(self, f.name)
                for f in fields(self) if getattr(self, f.name) is not None}


def _normalized(lengths: Mapping[str, Fraction] | ThreePathLengths) -> dict[str, Fraction]:
    if isinstance(lengths, ThreePathLengths):
        return lengths.as_dict()
    return {normalize_edge(k): Fraction(v) for k, v in lengths.items()}


@dataclass(frozen=True)
class Violation:
    label: str
    condition: str
    value: Fraction


@dataclass(frozen=True)
class ConditionReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        if self.ok:
            return {"ok": True}
        return {"ok": False, "violations": [
            {"set": v.label, "condition": v.condition, "value": str(v.value)}
            for v in self.violations]}


def check_conditions(sets: Iterable[ConditionSet],
                     lengths: Mapping[str, Fraction] | ThreePathLengths) -> ConditionReport:
    lengths = _normalized(lengths)
    out = []
    for cs in sets:
        for c in cs.conditions:
            hit = c.collision(lengths)
            if hit is not None:
                out.append(Violation(cs.label, str(c), hit))
    return ConditionReport(tuple(out))


def check_three_path(lengths: ThreePathLengths | Mapping[str, Fraction]) -> ConditionReport:
    """Check every condition of the six lists; ok iff nothing collides."""
    return check_conditions(_serial_sets(), lengths)


def check_four_cycle(pq: Fraction, rs: Fraction) -> bool:
    """A 4-cycle whose fourth side is fixed is rigid when the two sides
    meeting the free corner pair differ."""
    return Fraction(pq) != Fraction(rs)
