"""Forbidden-pair constraint solver against brute force, plus coloring pins."""

import random

import pytest

from chromacert.constructions import build
from chromacert.graph import Multigraph
from chromacert.instances import (
    AdaptedInstance,
    EdgeColoring,
    ListAssignment,
    is_separated,
    sample_instance,
)
from chromacert import solver as slv

from util import all_labeled_graphs


def random_system(rng: random.Random) -> slv.ConstraintSystem:
    n = rng.randint(1, 5)
    domains = tuple(
        frozenset(rng.sample(range(5), rng.randint(1, 3))) for _ in range(n)
    )
    cons = []
    for _ in range(rng.randint(0, 8)):
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v:
            continue
        pairs = set()
        for _ in range(rng.randint(1, 4)):
            pairs.add((rng.choice(sorted(domains[u])), rng.choice(sorted(domains[v]))))
        cons.append((u, v, frozenset(pairs)))
    return slv.ConstraintSystem(n, domains, tuple(cons))


def test_solve_matches_naive_on_random_systems():
    rng = random.Random(7)
    for _ in range(400):
        cs = random_system(rng)
        naive = slv.naive_solutions(cs)
        res = slv.solve(cs)
        if naive:
            assert res.status == slv.SAT
            assert slv.check_coloring(cs, res.coloring)
        else:
            assert res.status == slv.UNSAT
            assert res.coloring is None


def test_solve_matches_naive_on_sampled_instances():
    rng = random.Random(13)
    g = Multigraph(4, ((0, 1), (1, 2), (2, 3), (0, 3), (0, 2)))
    for kind in ("list", "sep-list", "edge-coloring", "local-partition", "dp-cover"):
        for seed in range(30):
            x = sample_instance(g, kind, 2, seed=seed)
            cs = slv.compile(g, x, 2)
            naive = slv.naive_solutions(cs)
            res = slv.solve(cs)
            assert (res.status == slv.SAT) == bool(naive)


def test_node_budget_exceeded():
    # an unsatisfiable list system large enough to need more than 1 node
    g = build("complete(6)").graph
    L = ListAssignment(3, (frozenset({0, 1, 2}),) * 6)
    cs = slv.compile(g, L)
    res = slv.solve(cs, max_nodes=2)
    assert res.status == slv.EXCEEDED


def test_adapted_coloring_may_clash_on_matching_edge_color():
    # adapted semantics: a monochromatic edge is fine unless the edge
    # carries that same color
    tri = Multigraph(3, ((0, 1), (1, 2), (0, 2)))
    f = EdgeColoring((1, 1, 1))
    L = ListAssignment(1, (frozenset({2}),) * 3)
    res = slv.solve(slv.compile(tri, AdaptedInstance(1, f, L)))
    assert res.status == slv.SAT
    bad = ListAssignment(1, (frozenset({1}),) * 3)
    res = slv.solve(slv.compile(tri, AdaptedInstance(1, f, bad)))
    assert res.status == slv.UNSAT


def test_k_colorable_matches_naive():
    for g in all_labeled_graphs(4):
        for k in (1, 2, 3):
            cs = slv.ConstraintSystem(
                g.n,
                tuple(frozenset(range(k)) for _ in range(g.n)),
                tuple(
                    (u, v, frozenset((c, c) for c in range(k))) for u, v in g.edges
                ),
            )
            assert (slv.k_colorable(g, k).status == slv.SAT) == bool(
                slv.naive_solutions(cs)
            )


@pytest.mark.parametrize(
    "name,chi",
    [
        ("complete(4)", 4),
        ("complete(5)", 5),
        ("cycle(5)", 3),
        ("cycle(6)", 2),
        ("complete_bipartite(3,4)", 2),
        ("wheel(6)", 4),
        ("path(6)", 2),
    ],
)
def test_chromatic_pins(name, chi):
    assert slv.chromatic_number(build(name).graph) == chi


def test_fig2_strategy_random_runs():
    cons = build("fig2_glued")
    g, meta = cons.graph, cons.meta
    for seed in range(300):
        L = sample_instance(g, "sep-list", 3, seed=seed)
        col = slv.fig2_strategy_coloring(g, meta, L)
        cs = slv.compile(g, L)
        assert slv.check_coloring(cs, col)


def test_fig2_strategy_preconditions():
    cons = build("fig2_glued")
    g, meta = cons.graph, cons.meta
    with pytest.raises(ValueError):
        slv.fig2_strategy_coloring(g, meta, ListAssignment(2, (frozenset({0, 1}),) * g.n))
    clashing = ListAssignment(3, (frozenset({0, 1, 2}),) * g.n)
    assert not is_separated(g, clashing)
    with pytest.raises(ValueError):
        slv.fig2_strategy_coloring(g, meta, clashing)
