"""Structural predicates and small-pattern searches.

All searches are exhaustive DFS enumerations with explicit node budgets.
Budget exhaustion is a distinct result, never silently reported as
"not found".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .graph import Multigraph, core_of

FOUND = "found"
NONE = "none"
EXCEEDED = "exceeded"


class BudgetExceeded(Exception):
    pass


@dataclass
class SearchResult:
    status: str  # found | none | exceeded
    witness: object = None
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.status == FOUND


class _Counter:
    __slots__ = ("left",)

    def __init__(self, budget: int):
        self.left = budget

    def tick(self, amount: int = 1) -> None:
        self.left -= amount
        if self.left < 0:
            raise BudgetExceeded


# -- cycle enumeration --------------------------------------------------


def enumerate_cycles(
    g: Multigraph,
    min_len: int = 3,
    max_len: Optional[int] = None,
    budget: int = 10**6,
) -> Iterator[tuple[int, ...]]:
    """Yield simple cycles as vertex tuples, each exactly once.

    A cycle is reported rooted at its smallest vertex with its second
    vertex smaller than its last.  Parallel edges are ignored (a
    2-cycle is never a simple cycle of length >= 3).  Raises
    BudgetExceeded if the DFS expands more nodes than ``budget``.
    """
    adj = g.adjacency()
    counter = _Counter(budget)
    cap = max_len if max_len is not None else g.n
    path: list[int] = []
    on_path = [False] * g.n

    def dfs(start: int, v: int) -> Iterator[tuple[int, ...]]:
        counter.tick()
        for w in sorted(adj[v]):
            if w == start and len(path) >= min_len:
                if path[1] < path[-1]:
                    yield tuple(path)
            elif w > start and not on_path[w] and len(path) < cap:
                path.append(w)
                on_path[w] = True
                yield from dfs(start, w)
                path.pop()
                on_path[w] = False

    for s in range(g.n):
        path = [s]
        on_path = [False] * g.n
        on_path[s] = True
        yield from dfs(s, s)


def cycles_up_to(
    g: Multigraph, max_len: int, budget: int = 10**6
) -> list[tuple[int, ...]]:
    return list(enumerate_cycles(g, 3, max_len, budget))


# -- cycle / theta recognition ------------------------------------------


def is_cycle_graph(g: Multigraph, allow_multi: bool = False) -> bool:
    """Connected graph where every vertex has degree 2.

    In multigraph mode a pair of parallel edges counts as a 2-cycle.
    """
    if g.n == 0 or not g.is_connected():
        return False
    if not allow_multi and not g.is_simple():
        return False
    if g.n == 1:
        return False
    return all(d == 2 for d in g.degrees())


def theta_parameters(
    g: Multigraph, allow_multi: bool = False
) -> Optional[tuple[int, int, int]]:
    """Path lengths (i, j, k) if g is two vertices joined by three
    internally disjoint paths, else None.

    At most one path of length 1 unless multigraph mode is enabled.
    """
    if not g.is_connected() or g.n < 2:
        return None
    deg = g.degrees()
    branch = [v for v in range(g.n) if deg[v] == 3]
    if len(branch) != 2 or any(deg[v] not in (2, 3) for v in range(g.n)):
        return None
    a, b = branch
    # trace the three paths leaving a
    lengths = []
    used_edges = set()
    inc = {v: list(g.incident(v)) for v in range(g.n)}
    for eid0 in inc[a]:
        if eid0 in used_edges:
            continue
        length = 0
        v, eid = a, eid0
        while True:
            used_edges.add(eid)
            u1, u2 = g.edges[eid]
            w = u2 if u1 == v else u1
            length += 1
            if w == b:
                break
            if deg[w] != 2 or w == a:
                return None
            nxt = [e for e in inc[w] if e != eid]
            if len(nxt) != 1:
                return None
            v, eid = w, nxt[0]
        lengths.append(length)
    if len(lengths) != 3 or len(used_edges) != len(g.edges):
        return None
    ones = sum(1 for L in lengths if L == 1)
    if ones > 1 and not allow_multi:
        return None
    i, j, k = sorted(lengths)
    return (i, j, k)


def classify_two_choosable(g: Multigraph) -> tuple[bool, str]:
    """Decide 2-choosability of a connected simple graph structurally.

    True iff the core is a single vertex, an even cycle, or
    Theta_{2,2,2k}.  The single-vertex case covers trees (1-degenerate,
    hence 2-choosable) and is reported with classification "other".
    """
    if not g.is_connected():
        raise ValueError("classify_two_choosable requires a connected graph")
    if not g.is_simple():
        raise ValueError("classify_two_choosable requires a simple graph")
    core, _ = core_of(g)
    if core.n == 1:
        return True, "other"
    if is_cycle_graph(core):
        if core.n % 2 == 0:
            return True, "even-cycle"
        return False, "odd-cycle"
    t = theta_parameters(core)
    if t is not None and t[0] == 2 and t[1] == 2 and t[2] % 2 == 0:
        return True, f"theta(2,2,{t[2]})"
    return False, "other"


def classify_cycle_or_theta(g: Multigraph, allow_multi: bool = False) -> bool:
    """True iff g consists of two or three internally disjoint paths
    joining two distinct vertices (i.e. a cycle or a theta graph).

    Requires a connected graph with minimum degree >= 2; take the core
    first.  Simple-graph mode rejects parallel edges.
    """
    if not g.is_connected():
        raise ValueError("classify_cycle_or_theta requires a connected graph")
    if g.n == 0 or g.min_degree() < 2:
        raise ValueError("classify_cycle_or_theta requires minimum degree 2")
    if not allow_multi and not g.is_simple():
        raise ValueError("parallel edges need allow_multi=True")
    if is_cycle_graph(g, allow_multi):
        return True
    return theta_parameters(g, allow_multi) is not None


# -- two large cycles (separation lower bound pattern) ------------------


def find_two_big_cycles(g: Multigraph, budget: int = 10**6) -> SearchResult:
    """Two cycles of length >= 4 sharing at most one vertex, or none."""
    counter_budget = budget
    found: list[tuple[int, ...]] = []
    try:
        for cyc in enumerate_cycles(g, min_len=4, budget=counter_budget):
            cs = set(cyc)
            for other in found:
                if len(cs & set(other)) <= 1:
                    return SearchResult(FOUND, (other, cyc))
            found.append(cyc)
    except BudgetExceeded:
        return SearchResult(EXCEEDED)
    return SearchResult(NONE)


# -- ordered lollipops and cycles (separation obstruction pairs) --------


@dataclass(frozen=True)
class OrderedWalk:
    """A simple path v_1..v_d plus a closing edge from v_d.

    kind "cycle": closing edge returns to v_1 (cycle length d).
    kind "lollipop": closing edge hits v_j, 2 <= j <= d-2 (1-based);
    the contained cycle is v_j..v_d.
    """

    vertices: tuple[int, ...]
    kind: str
    close_index: int  # 0-based index of the vertex the last edge returns to

    @property
    def first(self) -> int:
        return self.vertices[0]

    @property
    def second(self) -> int:
        return self.vertices[1]

    @property
    def second_to_last(self) -> int:
        return self.vertices[-2]

    @property
    def cycle_length(self) -> int:
        return len(self.vertices) - self.close_index


def _ordered_structures(
    g: Multigraph, start: int, counter: _Counter
) -> Iterator[OrderedWalk]:
    adj = g.adjacency()
    path = [start]
    on_path = [False] * g.n
    on_path[start] = True

    def dfs(v: int) -> Iterator[OrderedWalk]:
        counter.tick()
        d = len(path)
        for w in sorted(adj[v]):
            if on_path[w]:
                j = path.index(w)
                if j == 0 and d >= 4:
                    yield OrderedWalk(tuple(path), "cycle", 0)
                elif 1 <= j <= d - 3 and d - j >= 4:
                    yield OrderedWalk(tuple(path), "lollipop", j)
            else:
                path.append(w)
                on_path[w] = True
                yield from dfs(w)
                path.pop()
                on_path[w] = False

    yield from dfs(start)


def _pair_ok(h1: OrderedWalk, h2: OrderedWalk) -> bool:
    if h1.first != h2.first:
        return False
    if h1.second == h2.second:
        return False
    if (h1.kind == "cycle" or h2.kind == "cycle") and (
        h1.second_to_last == h2.second_to_last
    ):
        return False
    if h1.kind == "cycle" and h2.kind == "cycle":
        four = {h1.second, h1.second_to_last, h2.second, h2.second_to_last}
        if len(four) != 4:
            return False
    return True


def find_lollipop_cycle_pair(g: Multigraph, budget: int = 10**6) -> SearchResult:
    """Pair (H_1, H_2) of ordered lollipops/cycles satisfying the
    necessary conditions for a graph not to be separation 2-choosable.
    """
    simple = g.simplified()
    counter = _Counter(budget)
    try:
        for start in range(simple.n):
            seen: list[OrderedWalk] = []
            for walk in _ordered_structures(simple, start, counter):
                for other in seen:
                    if _pair_ok(other, walk):
                        return SearchResult(FOUND, (other, walk))
                    if _pair_ok(walk, other):
                        return SearchResult(FOUND, (walk, other))
                seen.append(walk)
    except BudgetExceeded:
        return SearchResult(EXCEEDED)
    return SearchResult(NONE)


# -- wheels --------------------------------------------------------------


def find_wheel(g: Multigraph, k: int = 6) -> Optional[tuple[int, tuple[int, ...]]]:
    """Embedding of a k-wheel (hub joined to every vertex of a
    (k-1)-cycle) as a subgraph: returns (hub, rim cycle) or None.
    """
    simple = g.simplified()
    adj = simple.adjacency()
    rim_len = k - 1
    for hub in range(simple.n):
        nbrs = sorted(adj[hub])
        if len(nbrs) < rim_len:
            continue
        nbr_set = set(nbrs)
        # DFS for a rim_len-cycle inside the neighborhood
        def dfs(path: list[int], used: set[int]) -> Optional[tuple[int, ...]]:
            if len(path) == rim_len:
                return tuple(path) if path[0] in adj[path[-1]] else None
            for w in nbrs:
                if w in used or w not in adj[path[-1]]:
                    continue
                if len(path) == 1 and w < path[0]:
                    continue
                path.append(w)
                used.add(w)
                got = dfs(path, used)
                if got:
                    return got
                path.pop()
                used.remove(w)
            return None

        for first in nbrs:
            got = dfs([first], {first})
            if got:
                return hub, got
    return None


# -- short cycle census ---------------------------------------------------


@dataclass
class CycleCensus:
    triangles: list[tuple[int, ...]]
    four_cycles: list[tuple[int, ...]]
    five_cycles: list[tuple[int, ...]]
    has_intersecting_triangles: bool
    triangle_adjacent_to_triangle: bool
    triangle_adjacent_to_two_four_cycles: bool
    triangle_adjacent_to_four_cycle: bool
    five_cycle_adjacent_to_four_triangles: bool

    @property
    def condition_no_intersecting(self) -> bool:
        """No two intersecting triangles and every triangle adjacent to
        at most one 4-cycle."""
        return not self.has_intersecting_triangles and (
            not self.triangle_adjacent_to_two_four_cycles
        )

    @property
    def condition_sparse_triangles(self) -> bool:
        """No triangle adjacent to a triangle or 4-cycle, and every
        5-cycle adjacent to at most three triangles."""
        return (
            not self.triangle_adjacent_to_triangle
            and not self.triangle_adjacent_to_four_cycle
            and not self.five_cycle_adjacent_to_four_triangles
        )

    @property
    def any_condition(self) -> bool:
        return self.condition_no_intersecting or self.condition_sparse_triangles


def _cycle_edges(cyc: tuple[int, ...]) -> set[frozenset[int]]:
    return {
        frozenset((cyc[i], cyc[(i + 1) % len(cyc)])) for i in range(len(cyc))
    }


def short_cycle_census(g: Multigraph, budget: int = 10**6) -> CycleCensus:
    """Counts of 3-, 4-, 5-cycles plus the triangle-sparsity predicates
    used for asserted-planar single conflict 3-colorability."""
    cycles = cycles_up_to(g.simplified(), 5, budget)
    tri = [c for c in cycles if len(c) == 3]
    four = [c for c in cycles if len(c) == 4]
    five = [c for c in cycles if len(c) == 5]
    tri_edges = [_cycle_edges(c) for c in tri]
    four_edges = [_cycle_edges(c) for c in four]
    five_edges = [_cycle_edges(c) for c in five]

    intersecting = any(
        set(a) & set(b)
        for i, a in enumerate(tri)
        for b in tri[i + 1 :]
    )
    tri_adj_tri = any(
        tri_edges[i] & tri_edges[j]
        for i in range(len(tri))
        for j in range(i + 1, len(tri))
    )
    tri_adj_four_counts = [
        sum(1 for fe in four_edges if te & fe) for te in tri_edges
    ]
    five_adj_tri_counts = [
        sum(1 for te in tri_edges if te & fe) for fe in five_edges
    ]
    return CycleCensus(
        triangles=tri,
        four_cycles=four,
        five_cycles=five,
        has_intersecting_triangles=intersecting,
        triangle_adjacent_to_triangle=tri_adj_tri,
        triangle_adjacent_to_two_four_cycles=any(
            c >= 2 for c in tri_adj_four_counts
        ),
        triangle_adjacent_to_four_cycle=any(
            c >= 1 for c in tri_adj_four_counts
        ),
        five_cycle_adjacent_to_four_triangles=any(
            c >= 4 for c in five_adj_tri_counts
        ),
    )


def find_disjoint_triangles(g: Multigraph, budget: int = 10**6) -> SearchResult:
    """Two vertex-disjoint triangles, if any."""
    try:
        tris: list[tuple[int, ...]] = []
        for c in enumerate_cycles(g.simplified(), 3, 3, budget):
            for other in tris:
                if not (set(c) & set(other)):
                    return SearchResult(FOUND, (other, c))
            tris.append(c)
    except BudgetExceeded:
        return SearchResult(EXCEEDED)
    return SearchResult(NONE)


def count_big_cycles(g: Multigraph, limit: int = 2, budget: int = 10**6) -> SearchResult:
    """Count cycles of length > 3, stopping once ``limit`` are seen.

    witness is the count (capped at limit).
    """
    try:
        count = 0
        for _ in enumerate_cycles(g.simplified(), 4, budget=budget):
            count += 1
            if count >= limit:
                return SearchResult(FOUND, count)
    except BudgetExceeded:
        return SearchResult(EXCEEDED)
    return SearchResult(NONE, count)
