"""Named graph builders: parsing, gadget invariants, packaged instances."""

import pytest

from chromacert import constructions as cons
from chromacert import solver as slv
from chromacert.instances import LocalPartition, is_separated

from util import solvable


def test_build_parsing():
    assert cons.build("complete(5)").graph.n == 5
    assert cons.build(" cycle( 6 ) ").graph.n == 6
    assert cons.build("fig1_glued").graph.n == 10
    assert cons.build("complete_bipartite(2,3)").graph.n == 5
    with pytest.raises(ValueError):
        cons.build("complete(5") # unbalanced parens
    with pytest.raises(ValueError):
        cons.build("no_such_graph")
    with pytest.raises(TypeError):
        cons.build("complete(1,2,3)")


def test_basic_shapes():
    k5 = cons.build("complete(5)").graph
    assert (k5.n, len(k5.edges)) == (5, 10)
    w6 = cons.build("wheel(6)").graph
    assert (w6.n, len(w6.edges)) == (6, 10)
    assert sorted(w6.degrees()) == [3, 3, 3, 3, 3, 5]
    th = cons.build("theta(2,3,4)").graph
    assert (th.n, len(th.edges)) == (8, 9)
    tri2 = cons.build("cactus_two_triangles").graph
    assert (tri2.n, len(tri2.edges)) == (6, 7)
    km = cons.build("complete_multipartite(3,2)").graph
    assert (km.n, len(km.edges)) == (6, 12)


def test_expected_tables():
    k4 = cons.build("complete(4)").expected
    assert k4 == {
        "chi": (4, 4),
        "ch": (4, 4),
        "chi_conflict": (3, 3),
        "ch_ad": (3, 3),
        "ch_sep": (2, 2),
    }
    k5 = cons.build("complete(5)").expected
    assert k5["chi_conflict"] == (3, 3)
    assert k5["ch_sep"] == (3, 3)


def test_fig1_blocking_property():
    for a, b, c in cons.FIG1_COPY_COLORS:
        assert cons.blocking_property_check(cons.fig1_gadget(a, b, c))


def test_fig1_blocking_detects_flipped_pair():
    good = cons.fig1_gadget(0, 1, 2)
    pairs = list(good.instance.pairs)
    # flipping an asymmetric conflict pair must break the check
    eid = pairs.index((2, 1))
    pairs[eid] = (1, 2)
    bad = cons.Construction(
        "flipped", good.graph,
        instance=LocalPartition(3, tuple(pairs)),
        instance_kind="local-partition", meta=good.meta,
    )
    assert not cons.blocking_property_check(bad)


def test_fig1_glued_partition_unsolvable():
    c = cons.build("fig1_glued")
    assert not solvable(c.graph, c.instance)


def test_fig1_sep2_witness():
    g = cons.build("fig1_glued").graph
    L = cons.fig1_sep2_witness()
    assert L.k == 2
    assert is_separated(g, L)
    assert not solvable(g, L)


def test_fig2_glued_shape():
    c = cons.build("fig2_glued")
    assert c.instance_kind == "adapted"
    assert not solvable(c.graph, c.instance)
    # planarity and degeneracy claims behind the expected bounds
    import networkx as nx

    G = nx.MultiGraph()
    G.add_nodes_from(range(c.graph.n))
    G.add_edges_from(c.graph.edges)
    ok, _ = nx.check_planarity(G)
    assert ok


@pytest.mark.parametrize("k", [1, 2, 3])
def test_kkn_bad(k):
    c = cons.build(f"kkn_bad({k})")
    g, L = c.graph, c.instance
    assert g.n == k + k**k
    assert is_separated(g, L)
    assert not solvable(g, L)


def test_planar_triples_suite_is_planar():
    import networkx as nx

    suite = cons.planar_triples_suite()
    assert len(suite) >= 3
    seen = set()
    for construction, triple in suite:
        seen.add(triple)
        G = nx.MultiGraph()
        G.add_nodes_from(range(construction.graph.n))
        G.add_edges_from(construction.graph.edges)
        ok, _ = nx.check_planarity(G)
        assert ok
    assert len(seen) == len(suite)
