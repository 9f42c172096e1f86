import random

import pytest
from hypothesis import given, settings

from conftest import dags, dfs_reach
from weakdom.dag import (
    Dag,
    count_incomparable,
    format_edge_list,
    gen_antichain,
    gen_chain,
    gen_crown,
    gen_grid,
    gen_random_dag,
    parse_edge_list,
    transitive_closure,
)
from weakdom.errors import CycleDetected, MalformedLine, SelfLoop


class TestParse:
    def test_chain(self):
        g = parse_edge_list("a b\nb c")
        assert g.n == 3
        assert g.edges == {(0, 1), (1, 2)}
        assert g.labels == ("a", "b", "c")

    def test_two_cycle(self):
        with pytest.raises(CycleDetected):
            parse_edge_list("a b\nb a")

    def test_long_cycle_reports_vertices(self):
        with pytest.raises(CycleDetected) as exc:
            parse_edge_list("x y\ny z\nz x\n")
        assert set(exc.value.cycle) >= {"x", "y", "z"}

    def test_dedup_and_comments(self):
        g = parse_edge_list("a b\na b\n# note\n")
        assert g.n == 2 and len(g.edges) == 1

    def test_blank_lines_and_indented_comment(self):
        g = parse_edge_list("\n   # c\n  p   q \n\n")
        assert g.edges == {(0, 1)}

    def test_self_loop(self):
        with pytest.raises(SelfLoop):
            parse_edge_list("a a\n")

    @pytest.mark.parametrize("text, lineno", [("a b\nc\n", 2), ("a b c\n", 1)])
    def test_malformed(self, text, lineno):
        with pytest.raises(MalformedLine) as exc:
            parse_edge_list(text)
        assert exc.value.lineno == lineno

    def test_empty(self):
        g = parse_edge_list("")
        assert g.n == 0 and not g.edges

    def test_roundtrip(self):
        g = gen_crown(3)
        h = parse_edge_list(format_edge_list(g))
        assert h.n == 6 and len(h.edges) == 6

    def test_transitive_edges_accepted(self):
        g = parse_edge_list("a b\nb c\na c\n")
        assert len(g.edges) == 3


def test_dag_rejects_cycles_and_loops():
    with pytest.raises(CycleDetected):
        Dag(3, frozenset({(0, 1), (1, 2), (2, 0)}))
    with pytest.raises(SelfLoop):
        Dag(2, frozenset({(1, 1)}))
    with pytest.raises(ValueError):
        Dag(2, frozenset({(0, 5)}))


class TestGenerators:
    def test_crown3(self):
        g = gen_crown(3)
        assert g.n == 6 and len(g.edges) == 6
        assert all(u < 3 <= v and v - 3 != u for u, v in g.edges)

    def test_crown1(self):
        g = gen_crown(1)
        assert g.n == 2 and not g.edges

    def test_crown_size(self):
        for k in range(1, 6):
            g = gen_crown(k)
            assert (g.n, len(g.edges)) == (2 * k, k * (k - 1))

    def test_random_p0(self):
        g = gen_random_dag(5, 0.0, 1)
        assert g.n == 5 and not g.edges

    def test_random_p1_is_total(self):
        g = gen_random_dag(4, 1.0, 1)
        assert len(g.edges) == 6
        assert count_incomparable(transitive_closure(g)) == 0

    def test_random_deterministic(self):
        a = gen_random_dag(6, 0.4, 7)
        b = gen_random_dag(6, 0.4, 7)
        assert format_edge_list(a).encode() == format_edge_list(b).encode()
        assert a == b

    def test_grid(self):
        g = gen_grid(2, 3)
        assert g.n == 6 and len(g.edges) == 7
        assert count_incomparable(transitive_closure(g)) == 3


class TestClosure:
    def test_chain(self):
        r = transitive_closure(gen_chain(3))
        assert r.reaches(0, 2)
        assert r.closure_edge_count == 3

    def test_crown3(self):
        g = gen_crown(3)
        r = transitive_closure(g)
        assert r.closure_edge_count == 6
        assert set(r.closure_pairs()) == dfs_reach(g)

    def test_single_vertex(self):
        r = transitive_closure(gen_chain(1))
        assert r.closure == (0,) and r.closure_edge_count == 0

    def test_empty(self):
        r = transitive_closure(Dag(0))
        assert count_incomparable(r) == 0

    def test_matrix_view(self):
        m = transitive_closure(gen_chain(3)).matrix()
        assert m == [[False, True, True], [False, False, True], [False, False, False]]


class TestIncomparable:
    def test_crown3(self):
        assert count_incomparable(transitive_closure(gen_crown(3))) == 9

    @pytest.mark.parametrize("n", [0, 1, 2, 7])
    def test_chain(self, n):
        assert count_incomparable(transitive_closure(gen_chain(n))) == 0

    def test_antichain(self):
        assert count_incomparable(transitive_closure(gen_antichain(4))) == 6


def test_closure_matches_dfs_on_seeded_sample():
    rng = random.Random(11)
    for i in range(250):
        n = rng.randint(0, 6)
        g = gen_random_dag(n, rng.random(), i)
        perm = list(range(n))
        rng.shuffle(perm)
        g = Dag(n, frozenset((perm[u], perm[v]) for u, v in g.edges))
        assert set(transitive_closure(g).closure_pairs()) == dfs_reach(g)


@settings(max_examples=200, deadline=None)
@given(dags(max_n=7))
def test_closure_properties(g):
    r = transitive_closure(g)
    n = g.n
    pairs = set(r.closure_pairs())
    assert len(pairs) == r.closure_edge_count
    # Fact 1
    assert len(r.inc_pairs) + r.closure_edge_count == n * (n - 1) // 2
    assert count_incomparable(r) == len(r.inc_pairs)
    for u, v in g.edges:
        assert (u, v) in pairs
    for u, v in pairs:
        assert u != v and (v, u) not in pairs
        for w in range(n):
            if (v, w) in pairs:
                assert (u, w) in pairs
    # Idempotence on the closure viewed as a DAG.
    assert transitive_closure(r.as_dag()).closure == r.closure
