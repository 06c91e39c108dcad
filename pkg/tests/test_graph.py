import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chromacert.graph import (
    GraphError,
    Multigraph,
    core_of,
    degeneracy,
    hell_zhu_two_colorable,
    min_max_outdegree_orientation,
)

from util import atlas_graphs


def k(n):
    return Multigraph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def cyc(n):
    return Multigraph(n, tuple((i, (i + 1) % n) for i in range(n)))


@st.composite
def multigraphs(draw):
    n = draw(st.integers(1, 8))
    m = draw(st.integers(0, 12))
    edges = []
    for _ in range(m):
        u = draw(st.integers(0, n - 1))
        v = draw(st.integers(0, n - 1))
        if u != v:
            edges.append((min(u, v), max(u, v)))
    return Multigraph(n, tuple(sorted(edges)))


@given(multigraphs())
@settings(max_examples=200, deadline=None)
def test_text_roundtrip(g):
    assert Multigraph.from_text(g.to_text()) == g
    assert Multigraph.from_text(g.to_text()).hash() == g.hash()


def test_parse_errors():
    with pytest.raises(GraphError):
        Multigraph.from_text("vertices 2\nedge 0 5\n")
    with pytest.raises(GraphError):
        Multigraph.from_text("edge 0 1\n")
    with pytest.raises(GraphError):
        Multigraph.from_text("vertices 2\nwobble\n")


def test_core_known():
    tri_pendant = Multigraph(4, ((0, 1), (0, 2), (1, 2), (2, 3)))
    core, survivors = core_of(tri_pendant)
    assert core.n == 3 and len(core.edges) == 3
    assert survivors == [0, 1, 2]
    tree = Multigraph(5, ((0, 1), (1, 2), (2, 3), (3, 4)))
    core, _ = core_of(tree)
    assert core.n == 1 and not core.edges


def test_core_confluence():
    rng = random.Random(7)
    for _ in range(300):
        n = rng.randint(1, 8)
        edges = tuple(
            sorted(
                (min(a, b), max(a, b))
                for a, b in (
                    (rng.randrange(n), rng.randrange(n)) for _ in range(rng.randint(0, 10))
                )
                if a != b
            )
        )
        g = Multigraph(n, edges)
        base_core, base_survivors = core_of(g)
        order = list(range(n))
        rng.shuffle(order)
        other_core, other_survivors = core_of(g, removal_order=order)
        # tree components keep one arbitrary vertex, so only the edge
        # structure (in original ids) is order-independent
        base_edges = sorted(
            (base_survivors[u], base_survivors[v]) for u, v in base_core.edges
        )
        other_edges = sorted(
            (other_survivors[u], other_survivors[v]) for u, v in other_core.edges
        )
        assert base_edges == other_edges
        assert len(base_survivors) == len(other_survivors)


def test_degeneracy_known():
    assert degeneracy(k(5))[0] == 4
    assert degeneracy(cyc(6))[0] == 2
    assert degeneracy(Multigraph(4, ((0, 1), (1, 2), (2, 3))))[0] == 1
    kb = Multigraph(10, tuple((i, 3 + j) for i in range(3) for j in range(7)))
    assert degeneracy(kb)[0] == 3


def exhaustive_min_max_outdegree(g):
    m = len(g.edges)
    best = m
    for bits in range(1 << m):
        out = [0] * g.n
        for eid, (u, v) in enumerate(g.edges):
            out[u if bits >> eid & 1 else v] += 1
        best = min(best, max(out, default=0))
    return best


def test_orientation_matches_exhaustive_and_half_degree():
    for g in atlas_graphs(6, connected_only=False):
        m = len(g.edges)
        if m == 0 or m > 10:
            continue
        orient = min_max_outdegree_orientation(g)
        assert orient.max_outdegree == exhaustive_min_max_outdegree(g)
        assert orient.max_outdegree <= (g.max_degree() + 1) // 2


def test_orientation_is_valid_orientation():
    for g in [k(5), cyc(7), Multigraph(3, ((0, 1), (0, 1), (1, 2)))]:
        orient = min_max_outdegree_orientation(g)
        assert len(orient.direction) == len(g.edges)
        assert orient.max_outdegree >= (len(g.edges) + g.n - 1) // g.n


def test_hell_zhu():
    assert hell_zhu_two_colorable(cyc(5)) == (True, 0) or hell_zhu_two_colorable(cyc(5))[0]
    ok, _ = hell_zhu_two_colorable(k(4))
    assert not ok
    ok, removed = hell_zhu_two_colorable(cyc(6))
    assert ok and removed is None


def test_bipartition_components():
    g = Multigraph(6, ((0, 1), (2, 3), (3, 4), (4, 2)))
    assert g.bipartition() is None
    comps = g.components()
    assert sorted(map(sorted, comps)) == [[0, 1], [2, 3, 4], [5]]
    assert not g.is_connected()
    assert cyc(4).bipartition() is not None
