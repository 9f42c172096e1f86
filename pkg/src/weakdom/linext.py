"""Linear extensions of a reachability poset and the linear extension graph."""
from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .dag import Dag, Reachability
from .drawing import TopoOrder
from .errors import IndexOutOfRange, InvalidOrder, StateCapExceeded, TruncatedInput

DEFAULT_CAP = 100_000


def default_cap() -> int:
    """Extension cap, overridable through the ``WDD_CAP`` environment variable."""
    value = os.environ.get("WDD_CAP")
    return int(value) if value else DEFAULT_CAP


@dataclass(frozen=True)
class ExtensionSet:
    extensions: tuple[TopoOrder, ...]
    truncated: bool = False

    def __len__(self):
        return len(self.extensions)

    def __getitem__(self, i):
        return self.extensions[i]

    @cached_property
    def index(self) -> dict[tuple[int, ...], int]:
        return {e.sequence: i for i, e in enumerate(self.extensions)}


def enumerate_extensions(r: Reachability, cap: int | None = None) -> ExtensionSet:
    """All linear extensions, lexicographically by vertex sequence.

    Built by repeatedly choosing a minimal remaining element, smallest id
    first. If more than ``cap`` extensions exist, the first ``cap`` are
    returned with ``truncated=True``.
    """
    if cap is None:
        cap = default_cap()
    if cap < 1:
        raise ValueError("cap must be positive")
    n = r.n
    preds = r.pred_masks
    full = (1 << n) - 1
    out: list[TopoOrder] = []
    prefix: list[int] = []

    def rec(placed: int) -> bool:
        if placed == full:
            if len(out) == cap:
                return False
            out.append(TopoOrder(tuple(prefix)))
            return True
        for v in range(n):
            if not placed >> v & 1 and preds[v] & placed == preds[v]:
                prefix.append(v)
                ok = rec(placed | 1 << v)
                prefix.pop()
                if not ok:
                    return False
        return True

    complete = rec(0)
    return ExtensionSet(tuple(out), truncated=not complete)


def count_extensions(r: Reachability, cap: int | None = None) -> int:
    """Count linear extensions by dynamic programming over downsets.

    The number of extensions equals the number of maximal chains in the
    lattice of downsets. ``cap`` bounds the number of downsets visited.
    """
    if cap is None:
        cap = default_cap()
    if cap < 1:
        raise ValueError("cap must be positive")
    n = r.n
    preds = r.pred_masks
    level = {0: 1}
    seen = 1
    for _ in range(n):
        nxt: dict[int, int] = {}
        for down, ways in level.items():
            for v in range(n):
                if not down >> v & 1 and preds[v] & down == preds[v]:
                    key = down | 1 << v
                    nxt[key] = nxt.get(key, 0) + ways
        seen += len(nxt)
        if seen > cap:
            raise StateCapExceeded(f"more than {cap} downsets")
        level = nxt
    return sum(level.values())


def distance(l1: TopoOrder, l2: TopoOrder, r: Reachability | None = None) -> int:
    """Number of unordered pairs placed in opposite order by ``l1`` and ``l2``."""
    if len(l1) != len(l2):
        raise InvalidOrder("orders have different lengths")
    if r is not None:
        for t in (l1, l2):
            _check_extension(t, r)
    a, b = l1.rank, l2.rank
    n = len(a)
    return sum(
        1 for u in range(n) for v in range(u + 1, n) if (a[u] < a[v]) != (b[u] < b[v])
    )


def _check_extension(t: TopoOrder, r: Reachability) -> None:
    if len(t) != r.n:
        raise InvalidOrder("order length does not match poset size")
    rank = t.rank
    for u in range(r.n):
        row = r.closure[u]
        for v in range(r.n):
            if row >> v & 1 and rank[u] > rank[v]:
                raise InvalidOrder(f"order places {v} before {u} against the poset")


def order_signs(ext: ExtensionSet | list[TopoOrder], pairs) -> np.ndarray:
    """Boolean matrix: entry ``[i, k]`` says extension ``i`` puts ``pairs[k][0]`` first."""
    seqs = [e.rank for e in ext]
    if not seqs or not pairs:
        return np.zeros((len(seqs), len(pairs)), dtype=bool)
    ranks = np.asarray(seqs, dtype=np.int32)
    p = np.asarray(pairs, dtype=np.int64)
    return ranks[:, p[:, 0]] < ranks[:, p[:, 1]]


@dataclass(frozen=True)
class LinExtGraph:
    nodes: ExtensionSet
    adjacency: tuple[tuple[int, ...], ...]

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, nbrs in enumerate(self.adjacency) for j in nbrs if i < j]


def build_linext_graph(e: ExtensionSet) -> LinExtGraph:
    """Join extensions that differ by one adjacent transposition."""
    if e.truncated:
        raise TruncatedInput("linear extension graph needs a complete extension set")
    index = e.index
    adj: list[list[int]] = [[] for _ in range(len(e))]
    for i, ext in enumerate(e.extensions):
        seq = list(ext.sequence)
        for k in range(len(seq) - 1):
            seq[k], seq[k + 1] = seq[k + 1], seq[k]
            j = index.get(tuple(seq))
            if j is not None:
                adj[i].append(j)
            seq[k], seq[k + 1] = seq[k + 1], seq[k]
    return LinExtGraph(e, tuple(tuple(sorted(a)) for a in adj))


def bfs_distances(g: LinExtGraph, source: int) -> list[int]:
    dist = [-1] * len(g.adjacency)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def graph_distance(g: LinExtGraph, i: int, j: int) -> int:
    m = len(g.adjacency)
    if not (0 <= i < m and 0 <= j < m):
        raise IndexOutOfRange(f"node index out of range 0..{m - 1}")
    return bfs_distances(g, i)[j]


def export_linext_graph(g: LinExtGraph, dag: Dag) -> tuple[str, str]:
    """Edge list of node indices, plus a sidecar ``index extension`` table."""
    edges = "".join(f"{i} {j}\n" for i, j in g.edges())
    sep = "" if all(len(dag.label(v)) == 1 for v in range(dag.n)) else ","
    nodes = "".join(
        f"{i} {sep.join(ext.labels(dag))}\n" for i, ext in enumerate(g.nodes.extensions)
    )
    return edges, nodes
