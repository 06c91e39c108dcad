"""Adversarial instance types and canonical enumeration.

The five instance families (list assignments, separated list
assignments, edge colorings, local partitions, DP covers) are the
universally-quantified side of each invariant's game.  Canonical
enumerators yield one representative per orbit of the relevant
symmetry group:

- list assignments: global color permutation.  An assignment is
  determined up to relabeling by the multiset of "columns" (for each
  color, the set of vertices whose list contains it), so we enumerate
  column-type multisets directly — exactly one per orbit.
- edge colorings: global color permutation; restricted-growth
  sequences over the edge order.
- local partitions: independent color permutation at every vertex
  (conflict colors at v only ever meet phi(v)); restricted growth per
  vertex over its incident-edge sequence.
- DP covers: independent palette permutation at every vertex; covers
  are normalized so spanning-tree edges carry diagonal matchings, with
  an explicit orbit dedup pass at small scale.

Colors are 0-based small integers everywhere.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Iterator, Optional, Sequence

from .graph import Multigraph

Split = Optional[tuple[int, int]]  # (worker_id, num_workers)


@dataclass(frozen=True)
class ListAssignment:
    k: int
    lists: tuple[frozenset[int], ...]

    def __post_init__(self):
        if any(len(L) != self.k for L in self.lists):
            raise ValueError("every list must have exactly k colors")


@dataclass(frozen=True)
class EdgeColoring:
    colors: tuple[int, ...]

    @property
    def palette(self) -> set[int]:
        return set(self.colors)


@dataclass(frozen=True)
class LocalPartition:
    """Per edge, the ordered conflict pair (c_u(e), c_v(e)); sides follow
    the edge's stored (u, v) order."""

    k: int
    pairs: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class DPCover:
    """Per edge, a partial matching between the u-side palette [k] and
    the v-side palette [k], as a sorted tuple of (u-color, v-color)."""

    k: int
    matchings: tuple[tuple[tuple[int, int], ...], ...]

    def __post_init__(self):
        for m in self.matchings:
            if len({a for a, _ in m}) != len(m) or len({b for _, b in m}) != len(m):
                raise ValueError("edge matching must be injective on both sides")


@dataclass(frozen=True)
class AdaptedInstance:
    """Combined edge coloring + list assignment (two-layer adversary)."""

    k: int
    edge_colors: EdgeColoring
    lists: ListAssignment


Instance = ListAssignment | EdgeColoring | LocalPartition | DPCover | AdaptedInstance


def is_separated(g: Multigraph, L: ListAssignment) -> bool:
    """True iff adjacent vertices share at most one list color."""
    return all(len(L.lists[u] & L.lists[v]) <= 1 for u, v in g.edges)


# -- canonical list assignments ------------------------------------------


def _column_types(g: Multigraph, reduced: bool) -> list[int]:
    """Vertex subsets (as bitmasks) that may serve as a color's column,
    ordered largest-first then by mask; singletons sorted last.

    reduced mode keeps only types whose induced subgraph has minimum
    degree >= 1 (every color shared with a neighbor): if a bad list
    assignment exists at all, one exists using only such columns, since
    a color of L(v) shared with no neighbor can color v outright.
    """
    adj_masks = [0] * g.n
    for u, v in g.edges:
        adj_masks[u] |= 1 << v
        adj_masks[v] |= 1 << u
    types = []
    for mask in range(1, 1 << g.n):
        size = bin(mask).count("1")
        if reduced:
            if size < 2:
                continue
            verts = [v for v in range(g.n) if mask >> v & 1]
            if any(not (adj_masks[v] & mask) for v in verts):
                continue
        types.append(mask)
    types.sort(key=lambda m: (-bin(m).count("1"), m))
    return types


def canonical_list_assignment(n: int, k: int, lists: Sequence[frozenset[int]]) -> ListAssignment:
    """Canonical representative of a list assignment's orbit under global
    color permutation: rebuild from the column multiset."""
    columns: dict[int, int] = {}
    for v, L in enumerate(lists):
        for c in L:
            columns[c] = columns.get(c, 0) | (1 << v)
    masks = sorted(columns.values(), key=lambda m: (-bin(m).count("1"), m))
    out = [set() for _ in range(n)]
    for color, mask in enumerate(masks):
        for v in range(n):
            if mask >> v & 1:
                out[v].add(color)
    return ListAssignment(k, tuple(frozenset(s) for s in out))


def _assignment_from_counts(g: Multigraph, k: int, chosen: list[tuple[int, int]]) -> ListAssignment:
    lists = [set() for _ in range(g.n)]
    color = 0
    for mask, count in chosen:
        for _ in range(count):
            for v in range(g.n):
                if mask >> v & 1:
                    lists[v].add(color)
            color += 1
    return ListAssignment(k, tuple(frozenset(s) for s in lists))


def enum_list_assignments(
    g: Multigraph,
    k: int,
    separated: bool = False,
    canonical: bool = True,
    reduced: bool = False,
    split: Split = None,
) -> Iterator[ListAssignment]:
    """All k-list assignments; canonical mode yields exactly one per
    global-color-permutation orbit, identical-lists instance first.

    separated prunes during generation; reduced restricts to columns
    with induced minimum degree >= 1 (sound for plain choosability
    decisions only — replacement can break separation).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if not canonical:
        universe = range(g.n * k)
        for combo in product(combinations(universe, k), repeat=g.n):
            L = ListAssignment(k, tuple(frozenset(c) for c in combo))
            if not separated or is_separated(g, L):
                yield L
        return

    types = _column_types(g, reduced)
    nonsingle = [m for m in types if bin(m).count("1") >= 2]
    singles = [m for m in types if bin(m).count("1") == 1]
    remaining = [k] * g.n
    edge_free = {i: 1 for i, (u, v) in enumerate(g.edges)} if separated else None
    chosen: list[tuple[int, int]] = []
    split_state = {"pending": split is not None}

    def max_count(mask: int) -> int:
        mc = min(remaining[v] for v in range(g.n) if mask >> v & 1)
        if separated and mc > 0:
            for i, (u, v) in enumerate(g.edges):
                if mask >> u & 1 and mask >> v & 1:
                    mc = min(mc, edge_free[i])
        return mc

    def apply(mask: int, count: int, sign: int) -> None:
        for v in range(g.n):
            if mask >> v & 1:
                remaining[v] -= sign * count
        if separated and count > 0:
            for i, (u, v) in enumerate(g.edges):
                if mask >> u & 1 and mask >> v & 1:
                    edge_free[i] -= sign

    def finish() -> Optional[ListAssignment]:
        if reduced:
            if any(remaining):
                return None
            return _assignment_from_counts(g, k, chosen)
        tail = chosen + [
            (1 << v, remaining[v]) for v in range(g.n) if remaining[v]
        ]
        return _assignment_from_counts(g, k, tail)

    # In non-reduced mode singleton columns never branch: leftover
    # capacity is filled with private colors, which is forced.
    del singles

    # Iterative DFS: the type list can be long (2^n - 1 masks), which
    # would overflow Python's recursion limit and make nested
    # ``yield from`` chains quadratic.
    n_ns = len(nonsingle)
    opts_stack: list[list[int]] = []
    oi_stack: list[int] = []
    idx = 0
    while True:
        descended = False
        if idx < n_ns:
            mask = nonsingle[idx]
            mc = max_count(mask)
            options = list(range(mc, -1, -1))
            if split_state["pending"] and len(options) > 1:
                wid, nw = split
                options = [c for i, c in enumerate(options) if i % nw == wid]
                split_state["pending"] = False
            opts_stack.append(options)
            oi_stack.append(0)
            if options:
                count = options[0]
                apply(mask, count, 1)
                chosen.append((mask, count))
                idx += 1
                descended = True
        else:
            got = finish()
            if got is not None:
                yield got
        if descended:
            continue
        # backtrack to the nearest frame with an unexplored option
        while True:
            if not opts_stack:
                return
            idx = len(opts_stack) - 1
            options = opts_stack[-1]
            oi = oi_stack[-1]
            if oi < len(options):
                chosen.pop()
                apply(nonsingle[idx], options[oi], -1)
            oi_stack[-1] = oi = oi + 1
            if oi < len(options):
                count = options[oi]
                apply(nonsingle[idx], count, 1)
                chosen.append((nonsingle[idx], count))
                idx += 1
                break
            opts_stack.pop()
            oi_stack.pop()


# -- canonical edge colorings ---------------------------------------------


def enum_edge_colorings(
    g: Multigraph,
    k: int,
    canonical: bool = True,
    split: Split = None,
) -> Iterator[EdgeColoring]:
    """Edge colorings with palette [k]; canonical mode yields one
    restricted-growth representative per global-permutation orbit."""
    if k < 1:
        raise ValueError("k must be >= 1")
    m = len(g.edges)
    if m == 0:
        yield EdgeColoring(())
        return
    if not canonical:
        for combo in product(range(k), repeat=m):
            yield EdgeColoring(combo)
        return
    colors = [0] * m
    split_state = {"pending": split is not None}

    def dfs(i: int, used: int) -> Iterator[EdgeColoring]:
        if i == m:
            yield EdgeColoring(tuple(colors))
            return
        options = list(range(min(used + 1, k)))
        if split_state["pending"] and len(options) > 1:
            wid, nw = split
            options = [c for j, c in enumerate(options) if j % nw == wid]
            split_state["pending"] = False
            restore = True
        else:
            restore = False
        for c in options:
            colors[i] = c
            yield from dfs(i + 1, max(used, c + 1))
        if restore:
            split_state["pending"] = True

    yield from dfs(0, 0)


def canonical_edge_coloring(f: EdgeColoring) -> EdgeColoring:
    """First-occurrence relabeling (restricted-growth normal form)."""
    relabel: dict[int, int] = {}
    out = []
    for c in f.colors:
        if c not in relabel:
            relabel[c] = len(relabel)
        out.append(relabel[c])
    return EdgeColoring(tuple(out))


# -- canonical local partitions -------------------------------------------


def enum_local_partitions(
    g: Multigraph,
    k: int,
    canonical: bool = True,
    split: Split = None,
) -> Iterator[LocalPartition]:
    """Conflict-pair choices per edge; canonical mode quotients by
    independent palette permutations at each vertex (each vertex's side
    sequence, in edge-id order, is in restricted-growth form)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    m = len(g.edges)
    if not canonical:
        for combo in product(product(range(k), repeat=2), repeat=m):
            yield LocalPartition(k, combo)
        return
    used = [0] * g.n  # colors used so far at each vertex
    pairs: list[tuple[int, int]] = []
    split_state = {"pending": split is not None}

    def dfs(i: int) -> Iterator[LocalPartition]:
        if i == m:
            yield LocalPartition(k, tuple(pairs))
            return
        u, v = g.edges[i]
        opts_u = range(min(used[u] + 1, k))
        opts_v_base = min(used[v] + 1, k)
        options = [(cu, cv) for cu in opts_u for cv in range(opts_v_base)]
        if split_state["pending"] and len(options) > 1:
            wid, nw = split
            options = [o for j, o in enumerate(options) if j % nw == wid]
            split_state["pending"] = False
            restore = True
        else:
            restore = False
        for cu, cv in options:
            su, sv = used[u], used[v]
            used[u] = max(su, cu + 1)
            used[v] = max(sv, cv + 1)
            pairs.append((cu, cv))
            yield from dfs(i + 1)
            pairs.pop()
            used[u], used[v] = su, sv
        if restore:
            split_state["pending"] = True

    yield from dfs(0)


def canonical_local_partition(g: Multigraph, p: LocalPartition) -> LocalPartition:
    """Apply first-occurrence relabeling independently at every vertex."""
    relabel: list[dict[int, int]] = [dict() for _ in range(g.n)]
    out = []
    for (u, v), (cu, cv) in zip(g.edges, p.pairs):
        ru, rv = relabel[u], relabel[v]
        if cu not in ru:
            ru[cu] = len(ru)
        if cv not in rv:
            rv[cv] = len(rv)
        out.append((ru[cu], rv[cv]))
    return LocalPartition(p.k, tuple(out))


# -- DP covers --------------------------------------------------------------


def _partial_matchings(k: int, perfect_only: bool) -> list[tuple[tuple[int, int], ...]]:
    out = []
    sides = list(range(k))
    lo = k if perfect_only else 0
    for size in range(lo, k + 1):
        for a_set in combinations(sides, size):
            for b_perm in permutations(sides, size):
                out.append(tuple(sorted(zip(a_set, b_perm))))
    return out


def _diagonal_matchings(k: int, perfect_only: bool) -> list[tuple[tuple[int, int], ...]]:
    if perfect_only:
        return [tuple((c, c) for c in range(k))]
    out = []
    for size in range(k + 1):
        for s in combinations(range(k), size):
            out.append(tuple((c, c) for c in s))
    return out


def _spanning_forest(g: Multigraph) -> set[int]:
    seen = [False] * g.n
    tree: set[int] = set()
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        queue = [root]
        while queue:
            v = queue.pop()
            for eid in g.incident(v):
                u1, u2 = g.edges[eid]
                w = u2 if u1 == v else u1
                if not seen[w]:
                    seen[w] = True
                    tree.add(eid)
                    queue.append(w)
    return tree


def apply_vertex_perms(g: Multigraph, cover: DPCover, perms: Sequence[Sequence[int]]) -> DPCover:
    out = []
    for (u, v), m in zip(g.edges, cover.matchings):
        out.append(tuple(sorted((perms[u][a], perms[v][b]) for a, b in m)))
    return DPCover(cover.k, tuple(out))


DP_DEDUP_GROUP_LIMIT = 200_000


def enum_dp_covers(
    g: Multigraph,
    k: int,
    perfect_only: bool = False,
    split: Split = None,
) -> Iterator[DPCover]:
    """DP covers up to per-vertex palette permutation.

    Spanning-forest edges are normalized to diagonal matchings (any
    cover can be relabeled into this form by walking the forest and
    permuting each child's palette).  When the full symmetry group
    (k!)^n is small enough we dedup to exactly one representative per
    orbit; beyond that only global-permutation duplicates are removed,
    which can over-report orbits but never misses one.

    Hard scale cap: k <= 3 and |edges| <= 9.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > 3 or len(g.edges) > 9:
        raise ValueError("dp cover enumeration is capped at k <= 3 and 9 edges")
    tree = _spanning_forest(g)
    per_edge = [
        _diagonal_matchings(k, perfect_only)
        if eid in tree
        else _partial_matchings(k, perfect_only)
        for eid in range(len(g.edges))
    ]
    import math

    perms = list(permutations(range(k)))
    full_group = math.factorial(k) ** g.n <= DP_DEDUP_GROUP_LIMIT
    if full_group:
        group = list(product(perms, repeat=g.n))
    else:
        group = [tuple([p] * g.n) for p in perms]
    seen: set[tuple] = set()
    m = len(g.edges)
    choice: list[tuple[tuple[int, int], ...]] = [()] * m
    split_state = {"pending": split is not None}

    def dfs(i: int) -> Iterator[DPCover]:
        if i == m:
            cover = DPCover(k, tuple(choice))
            key = min(apply_vertex_perms(g, cover, ps).matchings for ps in group)
            if key not in seen:
                seen.add(key)
                yield cover
            return
        options = per_edge[i]
        if split_state["pending"] and len(options) > 1:
            wid, nw = split
            options = [o for j, o in enumerate(options) if j % nw == wid]
            split_state["pending"] = False
            restore = True
        else:
            restore = False
        for mm in options:
            choice[i] = mm
            yield from dfs(i + 1)
        if restore:
            split_state["pending"] = True

    yield from dfs(0)


# -- adapted-list domain reduction ------------------------------------------


def adapted_domain_reduction(g: Multigraph, f: EdgeColoring, k: int) -> list[set[int]]:
    """Per-vertex admissible color sets {f(e) : e incident to v}.

    A list containing a color with no incident edge of that color makes
    the vertex trivially colorable, so minimal bad list assignments draw
    every list from these sets.
    """
    adm: list[set[int]] = [set() for _ in range(g.n)]
    for eid, (u, v) in enumerate(g.edges):
        adm[u].add(f.colors[eid])
        adm[v].add(f.colors[eid])
    return adm


def adapted_peel(g: Multigraph, f: EdgeColoring, k: int) -> tuple[list[int], list[set[int]]]:
    """Iteratively remove vertices whose admissible set (recomputed on
    the shrinking graph) has fewer than k colors; they can always pick a
    non-conflicting color last.  Returns (survivors, admissible sets on
    the surviving subgraph, indexed by original vertex id)."""
    alive = [True] * g.n
    while True:
        adm: list[set[int]] = [set() for _ in range(g.n)]
        for eid, (u, v) in enumerate(g.edges):
            if alive[u] and alive[v]:
                adm[u].add(f.colors[eid])
                adm[v].add(f.colors[eid])
        peel = [v for v in range(g.n) if alive[v] and len(adm[v]) < k]
        if not peel:
            return [v for v in range(g.n) if alive[v]], adm
        for v in peel:
            alive[v] = False


def enum_adapted_lists(
    g: Multigraph, f: EdgeColoring, k: int
) -> Iterator[tuple[list[int], ListAssignment]]:
    """All candidate bad list families on the peeled subgraph: each
    surviving vertex gets a k-subset of its admissible set.  Yields
    (survivors, assignment); the assignment's lists are indexed by
    original vertex id with peeled vertices given placeholder lists.
    """
    survivors, adm = adapted_peel(g, f, k)
    if not survivors:
        return
    pools = [sorted(adm[v]) for v in survivors]
    fresh = max(max(f.colors, default=0) + 1, 0)
    for combo in product(*[combinations(p, k) for p in pools]):
        lists: list[frozenset[int]] = [
            frozenset(range(fresh + v * k, fresh + v * k + k)) for v in range(g.n)
        ]
        for v, L in zip(survivors, combo):
            lists[v] = frozenset(L)
        yield survivors, ListAssignment(k, tuple(lists))


# -- sampling -----------------------------------------------------------------


def sample_instance(g: Multigraph, kind: str, k: int, seed: int) -> Instance:
    """Deterministic random raw instance.  Separated sampling repairs
    overlaps with unused colors (documented non-uniform heuristic)."""
    rng = random.Random(seed)
    n, m = g.n, len(g.edges)
    if kind == "list":
        universe = range(n * k)
        return ListAssignment(
            k, tuple(frozenset(rng.sample(universe, k)) for _ in range(n))
        )
    if kind == "sep-list":
        universe = list(range(n * k))
        lists = [set(rng.sample(universe, k)) for _ in range(n)]
        for _ in range(n * max(m, 1)):
            bad = [
                (u, v)
                for u, v in g.edges
                if len(lists[u] & lists[v]) > 1
            ]
            if not bad:
                break
            u, v = bad[0]
            over = sorted(lists[u] & lists[v])
            for c in over[1:]:
                free = [x for x in universe if x not in lists[u] and x not in lists[v]]
                lists[max(u, v)].discard(c)
                lists[max(u, v)].add(rng.choice(free))
        else:
            raise RuntimeError("separated repair did not converge")
        return ListAssignment(k, tuple(frozenset(s) for s in lists))
    if kind == "edge-coloring":
        return EdgeColoring(tuple(rng.randrange(k) for _ in range(m)))
    if kind == "local-partition":
        return LocalPartition(
            k, tuple((rng.randrange(k), rng.randrange(k)) for _ in range(m))
        )
    if kind == "dp-cover":
        choices = _partial_matchings(k, perfect_only=False)
        return DPCover(k, tuple(rng.choice(choices) for _ in range(m)))
    if kind == "adapted":
        palette = max(m, 1)
        f = EdgeColoring(tuple(rng.randrange(palette) for _ in range(m)))
        adm = adapted_domain_reduction(g, f, k)
        fresh = palette
        lists = []
        for v in range(n):
            pool = sorted(adm[v])
            if len(pool) >= k:
                lists.append(frozenset(rng.sample(pool, k)))
            else:
                pad = list(range(fresh, fresh + k - len(pool)))
                fresh += len(pad)
                lists.append(frozenset(pool + pad))
        return AdaptedInstance(k, f, ListAssignment(k, tuple(lists)))
    raise ValueError(f"unknown instance kind: {kind}")


# -- serialization --------------------------------------------------------------

KIND_LIST = "list"
KIND_SEP_LIST = "sep-list"
KIND_EDGE_COLORING = "edge-coloring"
KIND_LOCAL_PARTITION = "local-partition"
KIND_DP_COVER = "dp-cover"
KIND_ADAPTED = "adapted"


def instance_to_json(inst: Instance, g: Multigraph, kind: Optional[str] = None) -> dict:
    gh = g.hash()
    if isinstance(inst, ListAssignment):
        kind = kind or (KIND_SEP_LIST if is_separated(g, inst) else KIND_LIST)
        data = [sorted(L) for L in inst.lists]
        return {"kind": kind, "k": inst.k, "graph_hash": gh, "data": data}
    if isinstance(inst, EdgeColoring):
        return {
            "kind": KIND_EDGE_COLORING,
            "k": len(inst.palette),
            "graph_hash": gh,
            "data": list(inst.colors),
        }
    if isinstance(inst, LocalPartition):
        return {
            "kind": KIND_LOCAL_PARTITION,
            "k": inst.k,
            "graph_hash": gh,
            "data": [[a, b] for a, b in inst.pairs],
        }
    if isinstance(inst, DPCover):
        return {
            "kind": KIND_DP_COVER,
            "k": inst.k,
            "graph_hash": gh,
            "data": [[[a, b] for a, b in m] for m in inst.matchings],
        }
    if isinstance(inst, AdaptedInstance):
        return {
            "kind": KIND_ADAPTED,
            "k": inst.k,
            "graph_hash": gh,
            "data": {
                "edge_colors": list(inst.edge_colors.colors),
                "lists": [sorted(L) for L in inst.lists.lists],
            },
        }
    raise TypeError(f"not an instance: {inst!r}")


def instance_from_json(doc: dict) -> tuple[str, Instance]:
    kind, k, data = doc["kind"], doc["k"], doc["data"]
    if kind in (KIND_LIST, KIND_SEP_LIST):
        return kind, ListAssignment(k, tuple(frozenset(L) for L in data))
    if kind == KIND_EDGE_COLORING:
        return kind, EdgeColoring(tuple(data))
    if kind == KIND_LOCAL_PARTITION:
        return kind, LocalPartition(k, tuple((a, b) for a, b in data))
    if kind == KIND_DP_COVER:
        return kind, DPCover(
            k, tuple(tuple(sorted((a, b) for a, b in m)) for m in data)
        )
    if kind == KIND_ADAPTED:
        return kind, AdaptedInstance(
            k,
            EdgeColoring(tuple(data["edge_colors"])),
            ListAssignment(k, tuple(frozenset(L) for L in data["lists"])),
        )
    raise ValueError(f"unknown instance kind: {kind}")


def instance_dumps(inst: Instance, g: Multigraph, kind: Optional[str] = None) -> str:
    return json.dumps(instance_to_json(inst, g, kind), sort_keys=True, separators=(",", ":"))
