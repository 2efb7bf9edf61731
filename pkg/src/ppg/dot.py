"""Deterministic Graphviz export."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .model import Placement, Ppg, format_rational


def _label(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else format_rational(x)


def export_dot(g: Ppg, placement: Placement | Mapping[int, Fraction] | None = None, *,
               directions: Mapping[tuple[int, int], str] | None = None,
               coords2d: Mapping[int, tuple[Fraction, Fraction]] | None = None,
               name: str = "ppg") -> str:
    """Round-1 edges solid, round-2 dashed, lengths as labels.

    ``placement`` pins nodes on a horizontal line; ``coords2d`` pins them in
    the plane (used for layer drawings) and ``directions`` adds an edge
    attribute ``dir_axis`` of ``H`` or ``V``.
    """
    pos = dict(placement.as_dict() if isinstance(placement, Placement) else placement or {})
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    for v in range(g.n):
        attrs = []
        if v in g.roles:
            attrs.append(f'role="{g.roles[v]}"')
        if coords2d and v in coords2d:
            x, y = coords2d[v]
            attrs.append(f'pos="{float(x):g},{float(y):g}!"')
        elif v in pos:
            attrs.append(f'pos="{float(pos[v]):g},0!"')
            attrs.append(f'x="{format_rational(pos[v])}"')
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {v}{suffix};")
    for e in g.edges:
        attrs = [f'label="{_label(e.length)}"', f"style={'solid' if e.round == 1 else 'dashed'}"]
        if directions and e.pair in directions:
            attrs.append(f'dir_axis="{directions[e.pair]}"')
        lines.append(f"  {e.a} -- {e.b} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
