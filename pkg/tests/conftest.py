"""Shared brute-force oracles and instance generators.

The oracles here deliberately avoid the package's own algorithms: they work
on plain permutations and adjacency lists.
"""
import itertools
import random

import pytest
from hypothesis import strategies as st

from weakdom.dag import Dag, gen_random_dag


def dfs_reach(g):
    """Set of (u, v) with a nonempty path u -> v, one DFS per source."""
    succ = {u: [] for u in range(g.n)}
    for u, v in g.edges:
        succ[u].append(v)
    out = set()
    for s in range(g.n):
        seen, stack = set(), list(succ[s])
        while stack:
            v = stack.pop()
            if v not in seen:
                seen.add(v)
                stack.extend(succ[v])
        out.update((s, v) for v in seen)
    return out


def brute_extensions(g):
    """All vertex permutations that respect every edge, in lexicographic order."""
    return [
        p for p in itertools.permutations(range(g.n))
        if all(p.index(u) < p.index(v) for u, v in g.edges)
    ]


def inversions(p, q):
    pos_p = {v: i for i, v in enumerate(p)}
    pos_q = {v: i for i, v in enumerate(q)}
    return sum(
        1 for u, v in itertools.combinations(p, 2)
        if (pos_p[u] < pos_p[v]) != (pos_q[u] < pos_q[v])
    )


def brute_fips(g, p, q):
    """Double loop over all pairs: incomparable and dominated on both axes."""
    reach = dfs_reach(g)
    x = {v: i for i, v in enumerate(p)}
    y = {v: i for i, v in enumerate(q)}
    count = 0
    for u in range(g.n):
        for v in range(g.n):
            if u != v and (u, v) not in reach and (v, u) not in reach:
                if x[u] < x[v] and y[u] < y[v]:
                    count += 1
    return count


def brute_min_fip(g):
    exts = brute_extensions(g)
    return min(brute_fips(g, p, q) for p in exts for q in exts)


def brute_led(g):
    exts = brute_extensions(g)
    return max(inversions(p, q) for p in exts for q in exts)


def all_dags(n):
    """Every DAG on n vertices whose edges go from lower to higher id."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Dag(n, frozenset(p for k, p in enumerate(pairs) if mask >> k & 1))


def random_suite(count, sizes, seed):
    rng = random.Random(seed)
    for i in range(count):
        yield gen_random_dag(sizes[i % len(sizes)], rng.uniform(0.05, 0.7), seed * 1000 + i)


@st.composite
def dags(draw, max_n=6):
    """Random DAG with vertices relabelled by a random permutation."""
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    perm = draw(st.permutations(range(n)))
    edges = {(perm[u], perm[v]) for (u, v), b in zip(pairs, bits) if b}
    return Dag(n, frozenset(edges))


@pytest.fixture
def crown3():
    from weakdom.dag import gen_crown

    return gen_crown(3)
