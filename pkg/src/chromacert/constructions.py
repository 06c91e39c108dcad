"""Named graph constructions and their adversarial gadget instances.

Each builder returns the graph plus, where one exists, the published
bad instance and the expected invariant bounds it certifies.  Copies in
glued gadgets share only the hub vertex; all other vertices follow a
fixed deterministic numbering so serialized certificates are stable.

Colors are 0-based: gadget parameter triples are permutations of
(0, 1, 2) and the literal fourth palette value is 3.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Optional

from .graph import Multigraph
from .instances import (
    AdaptedInstance,
    EdgeColoring,
    Instance,
    ListAssignment,
    LocalPartition,
    is_separated,
)

# (lo, hi) expected bounds per invariant name; lo == hi means exact.
Expected = dict[str, tuple[Optional[int], Optional[int]]]


@dataclass
class Construction:
    name: str
    graph: Multigraph
    instance: Optional[Instance] = None
    instance_kind: Optional[str] = None
    expected: Expected = field(default_factory=dict)
    meta: dict = field(default_factory=dict)


def complete(n: int) -> Construction:
    if n < 1:
        raise ValueError("complete(n) needs n >= 1")
    g = Multigraph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    table = {
        1: {"ch": 1, "chi_conflict": 1, "ch_ad": 1, "ch_sep": 1},
        2: {"ch": 2, "chi_conflict": 2, "ch_ad": 2, "ch_sep": 2},
        3: {"ch": 3, "chi_conflict": 2, "ch_ad": 2, "ch_sep": 2},
        4: {"ch": 4, "chi_conflict": 3, "ch_ad": 3, "ch_sep": 2},
        5: {"ch": 5, "chi_conflict": 3, "ch_ad": 3, "ch_sep": 3},
    }
    expected: Expected = {"chi": (n, n)}
    for kind, val in table.get(n, {}).items():
        expected[kind] = (val, val)
    return Construction(f"complete({n})", g, expected=expected)


def complete_bipartite(a: int, b: int) -> Construction:
    if a < 1 or b < 1:
        raise ValueError("complete_bipartite needs positive parts")
    g = Multigraph(a + b, [(i, a + j) for i in range(a) for j in range(b)])
    return Construction(f"complete_bipartite({a},{b})", g, expected={"chi": (2, 2)})


def complete_multipartite(k: int, n: int) -> Construction:
    if k < 1 or n < 1:
        raise ValueError("complete_multipartite needs positive parameters")
    parts = [list(range(i * n, (i + 1) * n)) for i in range(k)]
    edges = [
        (u, v)
        for i in range(k)
        for j in range(i + 1, k)
        for u in parts[i]
        for v in parts[j]
    ]
    return Construction(
        f"complete_multipartite({k},{n})", Multigraph(k * n, edges),
        expected={"chi": (k, k)},
    )


def cycle(n: int) -> Construction:
    if n < 3:
        raise ValueError("cycle(n) needs n >= 3")
    g = Multigraph(n, [(i, (i + 1) % n) for i in range(n)])
    chi = 2 if n % 2 == 0 else 3
    return Construction(f"cycle({n})", g, expected={"chi": (chi, chi)})


def path(n: int) -> Construction:
    if n < 1:
        raise ValueError("path(n) needs n >= 1")
    g = Multigraph(n, [(i, i + 1) for i in range(n - 1)])
    exp: Expected = {"ch_sep": (2, 2), "ch_ad": (2, 2), "chi_conflict": (2, 2)} if n > 1 else {}
    return Construction(f"path({n})", g, expected=exp)


def theta(i: int, j: int, k: int) -> Construction:
    lens = [i, j, k]
    if any(x < 1 for x in lens):
        raise ValueError("theta path lengths must be >= 1")
    if sum(1 for x in lens if x == 1) > 1:
        raise ValueError("theta allows at most one length-1 path")
    edges: list[tuple[int, int]] = []
    nxt = 2
    for length in lens:
        prev = 0
        for step in range(length - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, 1))
    g = Multigraph(nxt, edges)
    deg3 = [v for v in range(g.n) if g.degree(v) == 3]
    assert deg3 == [0, 1], "theta self-test: exactly two degree-3 vertices"
    return Construction(f"theta({i},{j},{k})", g)


def wheel(k: int) -> Construction:
    """k-wheel: a (k-1)-cycle (vertices 0..k-2) plus hub k-1."""
    if k < 4:
        raise ValueError("wheel(k) needs k >= 4")
    rim = k - 1
    edges = [(i, (i + 1) % rim) for i in range(rim)] + [(i, rim) for i in range(rim)]
    g = Multigraph(k, edges)
    exp: Expected = {"ch_sep": (3, 3)} if k == 6 else {}
    return Construction(f"wheel({k})", g, expected=exp)


def cactus_two_triangles() -> Construction:
    """Two vertex-disjoint triangles joined by a single bridge — planar,
    every cycle a triangle."""
    g = Multigraph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3)])
    return Construction(
        "cactus_two_triangles", g,
        expected={"ch_sep": (2, 2), "ch_ad": (3, 3), "chi_conflict": (3, 3)},
    )


def two_c4_bridge() -> Construction:
    """Two disjoint 4-cycles joined by one edge — planar, max degree 3."""
    g = Multigraph(
        8,
        [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4), (0, 4)],
    )
    return Construction(
        "two_c4_bridge", g,
        expected={"ch_sep": (3, 3), "ch_ad": (3, 3), "chi_conflict": (3, 3)},
    )


# -- first gadget (multigraph blocking one hub color per copy) -------------


def _fig1_edges_pairs(a: int, b: int, c: int, u: int, x: int, y: int, z: int):
    """Edge list and conflict pairs for one copy; pair sides follow the
    stored (first, second) endpoint order."""
    edges = [(u, x), (u, y), (u, z), (x, y), (x, y), (y, z), (y, z)]
    pairs = [(a, a), (a, a), (a, a), (b, b), (c, b), (c, c), (c, b)]
    return edges, pairs


def fig1_gadget(a: int, b: int, c: int) -> Construction:
    if len({a, b, c}) != 3:
        raise ValueError("gadget colors must be distinct")
    edges, pairs = _fig1_edges_pairs(a, b, c, 0, 1, 2, 3)
    g = Multigraph(4, edges)
    inst = LocalPartition(max(a, b, c) + 1, tuple(pairs))
    cons = Construction(
        f"fig1_gadget({a},{b},{c})", g, instance=inst,
        instance_kind="local-partition",
        meta={"u": 0, "x": 1, "y": 2, "z": 3, "colors": (a, b, c)},
    )
    if not blocking_property_check(cons):
        raise AssertionError("gadget blocking property failed")
    return cons


def blocking_property_check(cons: Construction) -> bool:
    """Exhaustively verify: with the hub colored a, both outer vertices
    are pushed into {b, c} and then no color remains for the middle
    vertex.  Pins the conflict-pair side orientation."""
    g, inst, meta = cons.graph, cons.instance, cons.meta
    a, b, c = meta["colors"]
    u, x, y, z = meta["u"], meta["x"], meta["y"], meta["z"]
    palette = (a, b, c)
    pair_of = dict()
    for eid, (p, q) in enumerate(g.edges):
        pair_of.setdefault((p, q), set()).add(inst.pairs[eid])

    def hits(p: int, q: int, cp: int, cq: int) -> bool:
        forb = pair_of.get((p, q), set()) | {
            (bb, aa) for aa, bb in pair_of.get((q, p), set())
        }
        return (cp, cq) in forb

    # hub colored a forces x, z away from a
    for cx in palette:
        if not hits(u, x, a, cx) and cx == a:
            return False
        if not hits(u, z, a, cx) and cx == a:
            return False
    # for every surviving (cx, cz) in {b,c}^2, every cy is blocked
    for cx in (b, c):
        for cz in (b, c):
            for cy in palette:
                blocked = (
                    hits(u, y, a, cy)
                    or hits(x, y, cx, cy)
                    or hits(y, z, cy, cz)
                )
                if not blocked:
                    return False
    return True


FIG1_COPY_COLORS = ((0, 1, 2), (1, 0, 2), (2, 0, 1))


def fig1_glued() -> Construction:
    """Three copies of the 4-vertex gadget sharing the hub: a 10-vertex
    multigraph whose local 3-partition admits no conflict coloring."""
    edges: list[tuple[int, int]] = []
    pairs: list[tuple[int, int]] = []
    copies = []
    for i, (a, b, c) in enumerate(FIG1_COPY_COLORS):
        x, y, z = 3 * i + 1, 3 * i + 2, 3 * i + 3
        e, p = _fig1_edges_pairs(a, b, c, 0, x, y, z)
        # each copy must individually block hub color a
        sub = fig1_gadget(a, b, c)
        assert blocking_property_check(sub)
        edges += e
        pairs += p
        copies.append({"x": x, "y": y, "z": z, "colors": (a, b, c)})
    g = Multigraph(10, edges)
    inst = LocalPartition(3, tuple(pairs))
    return Construction(
        "fig1_glued", g, instance=inst, instance_kind="local-partition",
        expected={
            "ch_sep": (3, 3),
            "ch_ad": (3, 3),
            "chi_conflict": (4, 4),
        },
        meta={"u": 0, "copies": copies},
    )


def fig1_sep2_witness() -> ListAssignment:
    """An explicit separated 2-assignment on the glued gadget with no
    proper list coloring: copies 1 and 2 each kill one hub color via the
    4-cycle hub-x-y-z (lists {hub-color, c} / {c, d} / {d, hub-color}
    with fresh c, d), copy 3 gets disjoint junk lists."""
    lists: list[frozenset[int]] = [frozenset()] * 10
    lists[0] = frozenset({0, 1})
    # copy 1 kills hub color 0
    lists[1], lists[2], lists[3] = (
        frozenset({0, 2}),
        frozenset({2, 3}),
        frozenset({3, 0}),
    )
    # copy 2 kills hub color 1
    lists[4], lists[5], lists[6] = (
        frozenset({1, 4}),
        frozenset({4, 5}),
        frozenset({5, 1}),
    )
    # copy 3: pairwise disjoint fresh lists
    lists[7], lists[8], lists[9] = (
        frozenset({6, 7}),
        frozenset({8, 9}),
        frozenset({10, 11}),
    )
    return ListAssignment(2, tuple(lists))


# -- second gadget (planar, adapted-list blocking) ---------------------------


def _fig2_edges_colors(a: int, b: int, c: int, d: int, u: int, base: int):
    """One copy: hub u, center v=base, pairs (x_i, y_i) = (base+1+2i,
    base+2+2i).  Hub edges colored a; center edges colored c,c,b,b,d,d;
    pair edges colored b, c, b."""
    v = base
    x = [base + 1, base + 3, base + 5]
    y = [base + 2, base + 4, base + 6]
    edges, colors = [], []
    for i in range(3):
        edges += [(u, x[i]), (u, y[i])]
        colors += [a, a]
    vcol = [c, b, d]
    for i in range(3):
        edges += [(v, x[i]), (v, y[i])]
        colors += [vcol[i], vcol[i]]
    pcol = [b, c, b]
    for i in range(3):
        edges.append((x[i], y[i]))
        colors.append(pcol[i])
    return edges, colors, {"v": v, "pairs": list(zip(x, y))}


def fig2_gadget(a: int, b: int, c: int, d: int = 3) -> Construction:
    if len({a, b, c, d}) != 4:
        raise ValueError("gadget needs four distinct colors")
    edges, colors, meta = _fig2_edges_colors(a, b, c, d, 0, 1)
    g = Multigraph(8, edges)
    assert len(g.edges) == 15
    inst = EdgeColoring(tuple(colors))
    return Construction(
        f"fig2_gadget({a},{b},{c})", g, instance=inst,
        instance_kind="edge-coloring", meta={"u": 0, "copies": [meta]},
    )


FIG2_COPY_COLORS = ((0, 1, 2), (1, 2, 0), (2, 0, 1))


def fig2_glued() -> Construction:
    """Three copies of the planar gadget identified at the hub: 22
    vertices, 45 edges, with a 4-edge-coloring whose induced lists (each
    vertex's incident edge colors, all of size 3) admit no adapted list
    coloring."""
    edges: list[tuple[int, int]] = []
    colors: list[int] = []
    copies = []
    for i, (a, b, c) in enumerate(FIG2_COPY_COLORS):
        e, col, meta = _fig2_edges_colors(a, b, c, 3, 0, 7 * i + 1)
        edges += e
        colors += col
        copies.append(meta)
    g = Multigraph(22, edges)
    assert len(g.edges) == 45
    f = EdgeColoring(tuple(colors))
    lists = [set() for _ in range(22)]
    for eid, (p, q) in enumerate(g.edges):
        lists[p].add(f.colors[eid])
        lists[q].add(f.colors[eid])
    assert all(len(L) == 3 for L in lists), "induced lists must have size 3"
    L = ListAssignment(3, tuple(frozenset(s) for s in lists))
    inst = AdaptedInstance(3, f, L)
    return Construction(
        "fig2_glued", g, instance=inst, instance_kind="adapted",
        expected={
            "chi": (3, 3),
            "chi_a": (3, 3),
            "ch_sep": (3, 3),
            "ch_ad": (4, 4),
            "chi_conflict": (4, 4),
        },
        meta={"u": 0, "copies": copies},
    )


# -- complete bipartite separated-list obstruction ---------------------------


def kkn_bad(k: int) -> Construction:
    """K_{k, k^k} with disjoint k-lists on the small side and every
    transversal as a list on the large side: separated and uncolorable."""
    if k < 1:
        raise ValueError("kkn_bad needs k >= 1")
    nx, ny = k, k**k
    edges = [(x, nx + y) for x in range(nx) for y in range(ny)]
    g = Multigraph(nx + ny, edges)
    lists = [frozenset(range(i * k, (i + 1) * k)) for i in range(nx)]
    for t in product(range(k), repeat=k):
        lists.append(frozenset(i * k + t[i] for i in range(k)))
    L = ListAssignment(k, tuple(lists))
    assert is_separated(g, L)
    return Construction(
        f"kkn_bad({k})", g, instance=L, instance_kind="sep-list",
        expected={"ch_sep": (k + 1, None)},
        meta={"k": k},
    )


# -- registry -----------------------------------------------------------------

REGISTRY: dict[str, Callable[..., Construction]] = {
    "complete": complete,
    "complete_bipartite": complete_bipartite,
    "complete_multipartite": complete_multipartite,
    "cycle": cycle,
    "path": path,
    "theta": theta,
    "wheel": wheel,
    "cactus_two_triangles": cactus_two_triangles,
    "two_c4_bridge": two_c4_bridge,
    "fig1_gadget": fig1_gadget,
    "fig1_glued": fig1_glued,
    "fig2_gadget": fig2_gadget,
    "fig2_glued": fig2_glued,
    "kkn_bad": kkn_bad,
}

_NAME_RE = re.compile(r"^([a-z0-9_]+)\s*(?:\(([-0-9,\s]*)\))?$")


def build(name: str) -> Construction:
    """Build a construction from its registry string, e.g. "complete(5)"
    or "fig1_glued"."""
    m = _NAME_RE.match(name.strip())
    if not m:
        raise ValueError(f"cannot parse construction name: {name!r}")
    fn = REGISTRY.get(m.group(1))
    if fn is None:
        raise ValueError(f"unknown construction: {m.group(1)!r}")
    args = [int(x) for x in m.group(2).split(",")] if m.group(2) else []
    return fn(*args)


def planar_triples_suite() -> list[tuple[Construction, tuple[int, int, int]]]:
    """Constructions realizing each feasible planar value pattern of
    (ch_sep, ch_ad, chi_conflict)."""
    return [
        (complete(1), (1, 1, 1)),
        (path(5), (2, 2, 2)),
        (cactus_two_triangles(), (2, 3, 3)),
        (two_c4_bridge(), (3, 3, 3)),
        (fig2_glued(), (3, 4, 4)),
    ]
