"""Shared test helpers: small-graph generation and brute-force oracles."""

from __future__ import annotations

from itertools import combinations, permutations, product

from chromacert.graph import Multigraph
from chromacert.instances import (
    DPCover,
    EdgeColoring,
    ListAssignment,
    LocalPartition,
    is_separated,
)
from chromacert import solver as slv


def atlas_graphs(nmax: int, connected_only: bool = True) -> list[Multigraph]:
    import networkx as nx
    from networkx.generators.atlas import graph_atlas_g

    out = []
    for G in graph_atlas_g()[1:]:
        if G.number_of_nodes() > nmax:
            continue
        if connected_only and not nx.is_connected(G):
            continue
        nodes = sorted(G.nodes())
        idx = {v: i for i, v in enumerate(nodes)}
        out.append(
            Multigraph(
                len(nodes),
                tuple(
                    sorted(
                        (min(idx[u], idx[v]), max(idx[u], idx[v])) for u, v in G.edges()
                    )
                ),
            )
        )
    return out


def all_labeled_graphs(n: int) -> list[Multigraph]:
    """Every labeled simple graph on exactly n vertices."""
    pairs = list(combinations(range(n), 2))
    out = []
    for bits in range(1 << len(pairs)):
        edges = tuple(p for i, p in enumerate(pairs) if bits >> i & 1)
        out.append(Multigraph(n, edges))
    return out


def solvable(g: Multigraph, inst, k=None) -> bool:
    return slv.solve(slv.compile(g, inst, k)).status == slv.SAT


# -- raw instance universes (independent of the canonical enumerators) ----


def raw_list_assignments(g: Multigraph, k: int, separated: bool = False):
    universe = range(g.n * k)
    for combo in product(combinations(universe, k), repeat=g.n):
        L = ListAssignment(k, tuple(frozenset(c) for c in combo))
        if not separated or is_separated(g, L):
            yield L


def raw_edge_colorings(g: Multigraph, k: int):
    for colors in product(range(k), repeat=len(g.edges)):
        yield EdgeColoring(colors)


def raw_local_partitions(g: Multigraph, k: int):
    for pairs in product(product(range(k), repeat=2), repeat=len(g.edges)):
        yield LocalPartition(k, pairs)


def _edge_matchings(k: int):
    """All partial matchings between two [k] palettes, as sorted pair tuples."""
    out = []
    cols = list(range(k))
    for size in range(k + 1):
        for left in combinations(cols, size):
            for right in permutations(cols, size):
                out.append(tuple(sorted(zip(left, right))))
    return sorted(set(out))


def raw_dp_covers(g: Multigraph, k: int):
    per_edge = _edge_matchings(k)
    for choice in product(per_edge, repeat=len(g.edges)):
        yield DPCover(k, choice)


def dp_cover_orbit(g: Multigraph, cover: DPCover):
    """All covers reachable by independent per-vertex palette permutations."""
    k = cover.k
    out = set()
    for perms in product(list(permutations(range(k))), repeat=g.n):
        matchings = []
        for eid, (u, v) in enumerate(g.edges):
            pu, pv = perms[u], perms[v]
            matchings.append(tuple(sorted((pu[a], pv[b]) for a, b in cover.matchings[eid])))
        out.add(tuple(matchings))
    return out


def relabel_colors_lists(L: ListAssignment, perm: dict[int, int]) -> ListAssignment:
    return ListAssignment(L.k, tuple(frozenset(perm[c] for c in s) for s in L.lists))
