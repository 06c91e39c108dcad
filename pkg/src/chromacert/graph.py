"""Multigraph representation and basic structural computations.

Vertices are integers 0..n-1. Edges are an ordered sequence of (u, v)
pairs; parallel edges are repeated entries and loops are rejected.
Edge ids are positions in the sequence.
"""

from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Multigraph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __init__(self, n: int, edges: Iterable[Sequence[int]]):
        edges = tuple((int(u), int(v)) for u, v in edges)
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u} not allowed")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) out of range [0,{n})")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", edges)

    # -- incidence -----------------------------------------------------

    def incident(self, v: int) -> list[int]:
        """Edge ids incident to v, in edge order."""
        return self._incidence()[v]

    def _incidence(self) -> list[list[int]]:
        inc = getattr(self, "_inc_cache", None)
        if inc is None:
            inc = [[] for _ in range(self.n)]
            for eid, (u, v) in enumerate(self.edges):
                inc[u].append(eid)
                inc[v].append(eid)
            object.__setattr__(self, "_inc_cache", inc)
        return inc

    def degree(self, v: int) -> int:
        """Degree counting parallel edges with multiplicity."""
        return len(self.incident(v))

    def degrees(self) -> list[int]:
        return [len(ids) for ids in self._incidence()]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def neighbors(self, v: int) -> set[int]:
        out = set()
        for eid in self.incident(v):
            a, b = self.edges[eid]
            out.add(b if a == v else a)
        return out

    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def edge_multiplicity(self, u: int, v: int) -> int:
        key = (min(u, v), max(u, v))
        return sum(1 for a, b in self.edges if (min(a, b), max(a, b)) == key)

    def is_simple(self) -> bool:
        seen = set()
        for u, v in self.edges:
            key = (min(u, v), max(u, v))
            if key in seen:
                return False
            seen.add(key)
        return True

    def simplified(self) -> "Multigraph":
        """Collapse parallel edges; keeps first occurrence order."""
        seen = set()
        out = []
        for u, v in self.edges:
            key = (min(u, v), max(u, v))
            if key not in seen:
                seen.add(key)
                out.append((u, v))
        return Multigraph(self.n, out)

    # -- connectivity --------------------------------------------------

    def components(self) -> list[list[int]]:
        adj = self.adjacency()
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp = []
            stack = [s]
            seen[s] = True
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def bipartition(self) -> Optional[tuple[set[int], set[int]]]:
        """Two-color the vertices if possible, else None."""
        color = [-1] * self.n
        adj = self.adjacency()
        for s in range(self.n):
            if color[s] != -1:
                continue
            color[s] = 0
            q = deque([s])
            while q:
                v = q.popleft()
                for w in adj[v]:
                    if color[w] == -1:
                        color[w] = 1 - color[v]
                        q.append(w)
                    elif color[w] == color[v]:
                        return None
        return (
            {v for v in range(self.n) if color[v] == 0},
            {v for v in range(self.n) if color[v] == 1},
        )

    def is_forest(self) -> bool:
        # acyclic including parallel edges (a double edge is a cycle)
        comps = self.components()
        return len(self.edges) == self.n - len(comps)

    def induced(self, vertices: Iterable[int]) -> tuple["Multigraph", list[int]]:
        """Induced sub-multigraph; returns (graph, old ids by new id)."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        sub = [
            (index[u], index[v])
            for u, v in self.edges
            if u in index and v in index
        ]
        return Multigraph(len(keep), sub), keep

    # -- serialization -------------------------------------------------

    def to_text(self) -> str:
        lines = [f"vertices {self.n}"]
        lines.extend(f"edge {u} {v}" for u, v in self.edges)
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text: str) -> "Multigraph":
        n = None
        edges = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if parts[0] == "vertices":
                if n is not None:
                    raise GraphError("duplicate vertices line")
                if len(parts) != 2:
                    raise GraphError(f"bad vertices line: {raw!r}")
                n = int(parts[1])
            elif parts[0] == "edge":
                if len(parts) != 3:
                    raise GraphError(f"bad edge line: {raw!r}")
                edges.append((int(parts[1]), int(parts[2])))
            else:
                raise GraphError(f"unknown directive: {raw!r}")
        if n is None:
            raise GraphError("missing vertices line")
        return Multigraph(n, edges)

    def hash(self) -> str:
        return hashlib.sha256(self.to_text().encode()).hexdigest()


# -- core and degeneracy ----------------------------------------------


def core_of(
    g: Multigraph, removal_order: Optional[Sequence[int]] = None
) -> tuple[Multigraph, list[int]]:
    """Iteratively delete vertices of degree exactly 1.

    Returns the core plus the list of surviving original vertex ids
    (new id -> old id).  A tree collapses to a single vertex (the last
    survivor has degree 0 and is never removed).  ``removal_order`` is a
    vertex priority used only to break ties among degree-1 vertices; the
    resulting edge set does not depend on it.
    """
    priority = list(removal_order) if removal_order is not None else list(range(g.n))
    rank = {v: i for i, v in enumerate(priority)}
    alive = [True] * g.n
    deg = g.degrees()
    adj_eids = g._incidence()
    edge_alive = [True] * len(g.edges)
    ones = {v for v in range(g.n) if deg[v] == 1}
    while ones:
        v = min(ones, key=lambda x: rank[x])
        ones.discard(v)
        if not alive[v] or deg[v] != 1:
            continue
        alive[v] = False
        for eid in adj_eids[v]:
            if not edge_alive[eid]:
                continue
            edge_alive[eid] = False
            a, b = g.edges[eid]
            w = b if a == v else a
            deg[v] -= 1
            deg[w] -= 1
            if alive[w] and deg[w] == 1:
                ones.add(w)
    survivors = [v for v in range(g.n) if alive[v]]
    index = {v: i for i, v in enumerate(survivors)}
    kept_edges = [
        (index[u], index[v])
        for eid, (u, v) in enumerate(g.edges)
        if edge_alive[eid]
    ]
    return Multigraph(len(survivors), kept_edges), survivors


def degeneracy(g: Multigraph) -> tuple[int, list[int]]:
    """Least d with an elimination order leaving every vertex at most d
    later neighbors, counting parallel edges with multiplicity.

    Returns (d, elimination order).
    """
    if g.n == 0:
        return 0, []
    deg = g.degrees()
    alive = [True] * g.n
    adj_eids = g._incidence()
    edge_alive = [True] * len(g.edges)
    order = []
    d = 0
    for _ in range(g.n):
        v = min(
            (x for x in range(g.n) if alive[x]),
            key=lambda x: (deg[x], x),
        )
        d = max(d, deg[v])
        order.append(v)
        alive[v] = False
        for eid in adj_eids[v]:
            if not edge_alive[eid]:
                continue
            edge_alive[eid] = False
            a, b = g.edges[eid]
            w = b if a == v else a
            deg[w] -= 1
    return d, order


# -- orientations ------------------------------------------------------


@dataclass
class Orientation:
    """Per-edge direction: True means the stored (u, v) order, i.e. u->v."""

    graph: Multigraph
    direction: list[bool] = field(default_factory=list)

    def outdegrees(self) -> list[int]:
        out = [0] * self.graph.n
        for eid, (u, v) in enumerate(self.graph.edges):
            out[u if self.direction[eid] else v] += 1
        return out

    @property
    def max_outdegree(self) -> int:
        return max(self.outdegrees(), default=0)


def min_max_outdegree_orientation(g: Multigraph) -> Orientation:
    """Orientation minimizing the maximum outdegree (exact).

    Path-reversal method: while some vertex of maximum outdegree M can
    reach (along oriented edges) a vertex of outdegree <= M-2, reverse
    that path.  When no such path exists the reachable set R from the
    maximum-outdegree vertices has all edges inside R and average
    outdegree > M-1, so M is optimal.
    """
    direction = [True] * len(g.edges)
    out = [0] * g.n
    out_edges: list[set[int]] = [set() for _ in range(g.n)]
    for eid, (u, v) in enumerate(g.edges):
        out[u] += 1
        out_edges[u].add(eid)

    def head(eid: int) -> int:
        u, v = g.edges[eid]
        return v if direction[eid] else u

    def tail(eid: int) -> int:
        u, v = g.edges[eid]
        return u if direction[eid] else v

    while True:
        if not g.edges:
            break
        m = max(out)
        sources = [v for v in range(g.n) if out[v] == m]
        # BFS along oriented edges from all maximum-outdegree vertices
        parent_edge: dict[int, int] = {}
        seen = set(sources)
        q = deque(sources)
        target = None
        while q:
            v = q.popleft()
            if out[v] <= m - 2:
                target = v
                break
            for eid in sorted(out_edges[v]):
                w = head(eid)
                if w not in seen:
                    seen.add(w)
                    parent_edge[w] = eid
                    q.append(w)
        if target is None:
            break
        # reverse the path from a source down to target
        v = target
        while v in parent_edge:
            eid = parent_edge[v]
            t = tail(eid)
            direction[eid] = not direction[eid]
            out_edges[t].discard(eid)
            out_edges[v].add(eid)
            out[t] -= 1
            out[v] += 1
            v = t
    o = Orientation(g)
    o.direction = direction
    return o


# -- adaptable 2-colorability test (edge removal to bipartite) ---------


def hell_zhu_two_colorable(g: Multigraph) -> tuple[bool, Optional[int]]:
    """True iff removing at most one edge leaves the graph bipartite.

    Returns (answer, edge id or None).  Bipartite input returns
    (True, None).
    """
    if g.bipartition() is not None:
        return True, None
    for eid in range(len(g.edges)):
        rest = Multigraph(
            g.n, [e for i, e in enumerate(g.edges) if i != eid]
        )
        if rest.bipartition() is not None:
            return True, eid
    return False, None
