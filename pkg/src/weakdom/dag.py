"""DAG model, ingestion, generators and transitive closure.

Vertices are dense integer ids ``0..n-1``; labels are only used for display.
Reachability is stored as one Python ``int`` bitmask per source vertex, so
bit ``v`` of ``closure[u]`` is set iff there is a nonempty path ``u -> v``.
"""
from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Optional, Sequence

from .errors import CycleDetected, MalformedLine, SelfLoop

Edge = tuple[int, int]


@dataclass(frozen=True)
class Dag:
    n: int
    edges: frozenset[Edge] = frozenset()
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        object.__setattr__(self, "edges", frozenset(self.edges))
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
            if len(self.labels) != self.n:
                raise ValueError("label table length must equal n")
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            if u == v:
                raise SelfLoop(self.label(u))
        cycle = _find_cycle(self.n, self.successors)
        if cycle is not None:
            raise CycleDetected([self.label(v) for v in cycle])

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    @cached_property
    def successors(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            out[u].append(v)
        return tuple(tuple(sorted(s)) for s in out)

    @cached_property
    def predecessors(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            out[v].append(u)
        return tuple(tuple(sorted(s)) for s in out)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def with_edge(self, u: int, v: int) -> "Dag":
        return Dag(self.n, self.edges | {(u, v)}, self.labels)


def _find_cycle(n, succ) -> Optional[list[int]]:
    # Iterative three-colour DFS; returns the vertices of one cycle.
    color = [0] * n
    parent = [-1] * n
    for root in range(n):
        if color[root]:
            continue
        stack = [(root, iter(succ[root]))]
        color[root] = 1
        while stack:
            u, it = stack[-1]
            for v in it:
                if color[v] == 0:
                    color[v] = 1
                    parent[v] = u
                    stack.append((v, iter(succ[v])))
                    break
                if color[v] == 1:
                    cycle = [u]
                    w = u
                    while w != v:
                        w = parent[w]
                        cycle.append(w)
                    cycle.reverse()
                    return cycle + [v]
            else:
                color[u] = 2
                stack.pop()
    return None


def parse_edge_list(text: str) -> Dag:
    """Parse a ``u v`` per line edge list.

    Vertex tokens get ids in order of first appearance. ``#`` starts a
    comment line and blank lines are skipped. Duplicate edges are dropped.
    """
    ids: dict[str, int] = {}
    edges: set[Edge] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise MalformedLine(lineno, raw)
        a, b = parts
        if a == b:
            raise SelfLoop(a, lineno)
        u = ids.setdefault(a, len(ids))
        v = ids.setdefault(b, len(ids))
        edges.add((u, v))
    labels = tuple(sorted(ids, key=ids.__getitem__))
    return Dag(len(ids), frozenset(edges), labels)


def format_edge_list(g: Dag) -> str:
    lines = [f"{g.label(u)} {g.label(v)}" for u, v in g.sorted_edges()]
    # Isolated vertices cannot be expressed in the edge-list format.
    return "".join(line + "\n" for line in lines)


def gen_crown(k: int) -> Dag:
    """Crown ``C_k``: sources ``a1..ak`` (ids 0..k-1), sinks ``b1..bk``
    (ids k..2k-1), edge ``ai -> bj`` iff ``i != j``."""
    if k < 1:
        raise ValueError("crown size must be positive")
    edges = {(i, k + j) for i in range(k) for j in range(k) if i != j}
    labels = tuple(f"a{i + 1}" for i in range(k)) + tuple(f"b{j + 1}" for j in range(k))
    return Dag(2 * k, frozenset(edges), labels)


def gen_chain(n: int) -> Dag:
    return Dag(n, frozenset((i, i + 1) for i in range(n - 1)))


def gen_antichain(n: int) -> Dag:
    return Dag(n)


def gen_grid(rows: int, cols: int) -> Dag:
    """Product of a ``rows``-chain and a ``cols``-chain (cover relations only)."""
    if rows < 1 or cols < 1:
        raise ValueError("grid sides must be positive")
    vid = lambda r, c: r * cols + c  # noqa: E731
    edges = set()
    for r in range(rows):
        for c in range(cols):
            if r + 1 < rows:
                edges.add((vid(r, c), vid(r + 1, c)))
            if c + 1 < cols:
                edges.add((vid(r, c), vid(r, c + 1)))
    labels = tuple(f"{r}.{c}" for r in range(rows) for c in range(cols))
    return Dag(rows * cols, frozenset(edges), labels)


def gen_random_dag(n: int, p: float, seed: int) -> Dag:
    """Each pair ``i < j`` gets edge ``i -> j`` with probability ``p``."""
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    if not 0.0 <= p <= 1.0:
        raise ValueError("edge probability must lie in [0, 1]")
    rng = random.Random(seed)
    edges = {(i, j) for i, j in combinations(range(n), 2) if rng.random() < p}
    return Dag(n, frozenset(edges))


@dataclass(frozen=True)
class Reachability:
    """Transitive closure of a DAG, i.e. the strict poset it generates."""

    n: int
    closure: tuple[int, ...]
    closure_edge_count: int
    inc_pairs: tuple[Edge, ...] = field(repr=False)

    def reaches(self, u: int, v: int) -> bool:
        return bool(self.closure[u] >> v & 1)

    def comparable(self, u: int, v: int) -> bool:
        return bool((self.closure[u] >> v | self.closure[v] >> u) & 1)

    def matrix(self) -> list[list[bool]]:
        return [[bool(row >> v & 1) for v in range(self.n)] for row in self.closure]

    def closure_pairs(self) -> list[Edge]:
        return [(u, v) for u in range(self.n) for v in range(self.n) if self.closure[u] >> v & 1]

    @cached_property
    def pred_masks(self) -> tuple[int, ...]:
        preds = [0] * self.n
        for u, row in enumerate(self.closure):
            v = 0
            while row:
                if row & 1:
                    preds[v] |= 1 << u
                row >>= 1
                v += 1
        return tuple(preds)

    def as_dag(self, labels: Optional[Sequence[str]] = None) -> Dag:
        return Dag(self.n, frozenset(self.closure_pairs()), tuple(labels) if labels else None)


def transitive_closure(g: Dag) -> Reachability:
    order = kahn_order(g)
    closure = [0] * g.n
    for u in reversed(order):
        row = 0
        for v in g.successors[u]:
            row |= (1 << v) | closure[v]
        closure[u] = row
    count = sum(row.bit_count() for row in closure)
    inc = tuple(
        (u, v)
        for u, v in combinations(range(g.n), 2)
        if not ((closure[u] >> v) | (closure[v] >> u)) & 1
    )
    return Reachability(g.n, tuple(closure), count, inc)


def count_incomparable(r: Reachability) -> int:
    return r.n * (r.n - 1) // 2 - r.closure_edge_count


def kahn_order(g: Dag) -> list[int]:
    """Kahn's algorithm, always removing the smallest-id source."""
    indeg = [len(p) for p in g.predecessors]
    heap = [v for v in range(g.n) if indeg[v] == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        u = heapq.heappop(heap)
        out.append(u)
        for v in g.successors[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                heapq.heappush(heap, v)
    return out

