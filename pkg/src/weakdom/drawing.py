"""Weak dominance drawings built from pairs of topological sortings."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence
from xml.sax.saxutils import escape

from .dag import Dag, Reachability, kahn_order, transitive_closure
from .errors import InvalidOrder, UnknownFormat


@dataclass(frozen=True)
class TopoOrder:
    """A vertex permutation; ``sequence[i]`` is the vertex at position ``i + 1``."""

    sequence: tuple[int, ...]

    def __post_init__(self):
        seq = tuple(self.sequence)
        object.__setattr__(self, "sequence", seq)
        if sorted(seq) != list(range(len(seq))):
            raise InvalidOrder(f"not a permutation of 0..{len(seq) - 1}: {seq}")

    @classmethod
    def from_ranks(cls, rank: Sequence[int]) -> "TopoOrder":
        seq = [-1] * len(rank)
        for v, r in enumerate(rank):
            if not 1 <= r <= len(rank) or seq[r - 1] != -1:
                raise InvalidOrder(f"ranks are not a permutation of 1..{len(rank)}")
            seq[r - 1] = v
        return cls(tuple(seq))

    @cached_property
    def rank(self) -> tuple[int, ...]:
        """1-based position of every vertex."""
        out = [0] * len(self.sequence)
        for i, v in enumerate(self.sequence):
            out[v] = i + 1
        return tuple(out)

    def __len__(self):
        return len(self.sequence)

    def labels(self, g: Dag) -> list[str]:
        return [g.label(v) for v in self.sequence]

    def check(self, g: Dag) -> None:
        if len(self.sequence) != g.n:
            raise InvalidOrder(f"order has {len(self.sequence)} vertices, graph has {g.n}")
        rank = self.rank
        for u, v in g.sorted_edges():
            if rank[u] >= rank[v]:
                raise InvalidOrder(f"edge {g.label(u)} -> {g.label(v)} is violated")


def topological_sort(g: Dag) -> TopoOrder:
    return TopoOrder(tuple(kahn_order(g)))


@dataclass(frozen=True)
class WeakDominanceDrawing:
    graph: Dag
    reach: Reachability
    tx: TopoOrder
    ty: TopoOrder
    fips: tuple[tuple[int, int], ...]

    @property
    def x(self) -> tuple[int, ...]:
        return self.tx.rank

    @property
    def y(self) -> tuple[int, ...]:
        return self.ty.rank

    @property
    def fip_count(self) -> int:
        return len(self.fips)


def make_drawing(g: Dag, tx: TopoOrder, ty: TopoOrder, reach: Reachability | None = None) -> WeakDominanceDrawing:
    tx.check(g)
    ty.check(g)
    if reach is None:
        reach = transitive_closure(g)
    x, y = tx.rank, ty.rank
    # An incomparable pair is a fip when one vertex is below-left of the other.
    fips = tuple(
        (u, v) for u, v in reach.inc_pairs if (x[u] < x[v]) == (y[u] < y[v])
    )
    return WeakDominanceDrawing(g, reach, tx, ty, fips)


def count_fips(d: WeakDominanceDrawing) -> int:
    return d.fip_count


def intersection_cardinality(g: Dag, tx: TopoOrder, ty: TopoOrder) -> int:
    """Number of ordered pairs ``(u, v)`` placed ``u`` first by both orders."""
    tx.check(g)
    ty.check(g)
    x, y = tx.rank, ty.rank
    return sum(
        1 for u in range(g.n) for v in range(u + 1, g.n) if (x[u] < x[v]) == (y[u] < y[v])
    )


def diagonal_drawing(g: Dag, reach: Reachability | None = None) -> WeakDominanceDrawing:
    t = topological_sort(g)
    return make_drawing(g, t, t, reach)


def is_dominance_drawing(d: WeakDominanceDrawing) -> bool:
    return d.fip_count == 0


# SVG layout constants.
CELL = 48
MARGIN = 32
RADIUS = 6


def emit_drawing(d: WeakDominanceDrawing, fmt: str = "coords") -> str:
    """Render a drawing as ``coords`` text or an ``svg`` document.

    SVG edges of the graph are thin solid lines; falsely implied paths are
    thick dashed red lines with ``class="fip"``. The Y axis grows upward.
    """
    if fmt == "coords":
        return "".join(f"{d.graph.label(v)} {d.x[v]} {d.y[v]}\n" for v in range(d.graph.n))
    if fmt == "svg":
        return _svg(d)
    raise UnknownFormat(f"unknown drawing format {fmt!r}")


def _svg(d: WeakDominanceDrawing) -> str:
    n = d.graph.n
    size = 2 * MARGIN + max(n - 1, 0) * CELL

    def px(v):
        return MARGIN + (d.x[v] - 1) * CELL

    def py(v):
        return size - MARGIN - (d.y[v] - 1) * CELL

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>',
        '<g stroke="#dddddd" stroke-width="1">',
    ]
    for i in range(n):
        c = MARGIN + i * CELL
        out.append(f'<line x1="{c}" y1="{MARGIN}" x2="{c}" y2="{size - MARGIN}"/>')
        out.append(f'<line x1="{MARGIN}" y1="{c}" x2="{size - MARGIN}" y2="{c}"/>')
    out.append("</g>")
    out.append('<g stroke="black" stroke-width="1.5">')
    for u, v in d.graph.sorted_edges():
        out.append(f'<line class="edge" x1="{px(u)}" y1="{py(u)}" x2="{px(v)}" y2="{py(v)}"/>')
    out.append("</g>")
    out.append('<g stroke="#c00000" stroke-width="4" stroke-dasharray="8,4">')
    for u, v in d.fips:
        lo, hi = (u, v) if d.x[u] < d.x[v] else (v, u)
        out.append(f'<line class="fip" x1="{px(lo)}" y1="{py(lo)}" x2="{px(hi)}" y2="{py(hi)}"/>')
    out.append("</g>")
    out.append('<g font-family="sans-serif" font-size="12">')
    for v in range(n):
        out.append(f'<circle cx="{px(v)}" cy="{py(v)}" r="{RADIUS}" fill="black"/>')
        out.append(
            f'<text x="{px(v) + RADIUS + 2}" y="{py(v) - RADIUS - 2}">{escape(d.graph.label(v))}</text>'
        )
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"

