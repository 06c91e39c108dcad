"""Unified coloring solver.

Every invariant's existential side reduces to one question: is there an
assignment phi with phi(v) in domain(v) such that no edge (u, v) realizes
one of its forbidden ordered color pairs (a at u, b at v)?

- list / separated-list coloring: forbidden pairs are the diagonal over
  the endpoints' shared list colors;
- adapted coloring: the single pair (f(e), f(e)) — adapted colorings are
  NOT required to be proper;
- conflict coloring: the instance's single ordered pair per edge;
- DP coloring: the edge's matching pairs.

The solver is deterministic (smallest domain, then lowest vertex id,
then lowest color) so witnesses are reproducible bit-for-bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .graph import Multigraph
from .instances import (
    AdaptedInstance,
    DPCover,
    EdgeColoring,
    Instance,
    ListAssignment,
    LocalPartition,
)

SAT = "sat"
UNSAT = "unsat"
EXCEEDED = "exceeded"


@dataclass(frozen=True)
class ConstraintSystem:
    n: int
    domains: tuple[frozenset[int], ...]
    # (u, v, pairs): assigning a to u and b to v is forbidden when (a, b) in pairs
    constraints: tuple[tuple[int, int, frozenset[tuple[int, int]]], ...]


@dataclass(frozen=True)
class Coloring:
    assignment: tuple[int, ...]

    def to_json(self) -> dict:
        return {"assignment": list(self.assignment)}

    @staticmethod
    def from_json(doc: dict) -> "Coloring":
        return Coloring(tuple(doc["assignment"]))


@dataclass
class SolveResult:
    status: str  # sat | unsat | exceeded
    coloring: Optional[Coloring]
    nodes: int


def compile(g: Multigraph, inst: Instance, k: Optional[int] = None) -> ConstraintSystem:
    """Translate an adversarial instance into a constraint system whose
    solutions are exactly the instance's legal colorings."""
    if isinstance(inst, ListAssignment):
        if len(inst.lists) != g.n:
            raise ValueError("list assignment does not match graph")
        cons = []
        for u, v in g.edges:
            shared = inst.lists[u] & inst.lists[v]
            cons.append((u, v, frozenset((c, c) for c in shared)))
        return ConstraintSystem(g.n, inst.lists, tuple(cons))
    if isinstance(inst, EdgeColoring):
        if len(inst.colors) != len(g.edges):
            raise ValueError("edge coloring does not match graph")
        if k is None:
            raise ValueError("edge-coloring instances need an explicit k")
        dom = frozenset(range(k))
        cons = tuple(
            (u, v, frozenset({(inst.colors[i], inst.colors[i])}))
            for i, (u, v) in enumerate(g.edges)
        )
        return ConstraintSystem(g.n, (dom,) * g.n, cons)
    if isinstance(inst, AdaptedInstance):
        if len(inst.lists.lists) != g.n or len(inst.edge_colors.colors) != len(g.edges):
            raise ValueError("adapted instance does not match graph")
        f = inst.edge_colors.colors
        cons = tuple(
            (u, v, frozenset({(f[i], f[i])})) for i, (u, v) in enumerate(g.edges)
        )
        return ConstraintSystem(g.n, inst.lists.lists, cons)
    if isinstance(inst, LocalPartition):
        if len(inst.pairs) != len(g.edges):
            raise ValueError("local partition does not match graph")
        dom = frozenset(range(inst.k))
        cons = tuple(
            (u, v, frozenset({inst.pairs[i]})) for i, (u, v) in enumerate(g.edges)
        )
        return ConstraintSystem(g.n, (dom,) * g.n, cons)
    if isinstance(inst, DPCover):
        if len(inst.matchings) != len(g.edges):
            raise ValueError("dp cover does not match graph")
        dom = frozenset(range(inst.k))
        cons = tuple(
            (u, v, frozenset(inst.matchings[i])) for i, (u, v) in enumerate(g.edges)
        )
        return ConstraintSystem(g.n, (dom,) * g.n, cons)
    raise TypeError(f"not an instance: {inst!r}")


def check_coloring(cs: ConstraintSystem, coloring: Coloring) -> bool:
    """Independent validity check: in-domain and no forbidden pair hit."""
    a = coloring.assignment
    if len(a) != cs.n:
        return False
    if any(a[v] not in cs.domains[v] for v in range(cs.n)):
        return False
    return all((a[u], a[v]) not in pairs for u, v, pairs in cs.constraints)


def solve(cs: ConstraintSystem, max_nodes: Optional[int] = None) -> SolveResult:
    """Backtracking with forward checking over bitmask domains."""
    n = cs.n
    colors = sorted({c for d in cs.domains for c in d})
    index = {c: i for i, c in enumerate(colors)}
    full_masks = []
    for d in cs.domains:
        m = 0
        for c in d:
            m |= 1 << index[c]
        full_masks.append(m)
    # neighbors[v] = list of (other, direction-aware map: my color bit -> forbidden mask at other)
    nbrs: list[list[tuple[int, dict[int, int]]]] = [[] for _ in range(n)]
    for u, v, pairs in cs.constraints:
        fwd: dict[int, int] = {}
        bwd: dict[int, int] = {}
        for a, b in pairs:
            ia, ib = index.get(a), index.get(b)
            if ia is None or ib is None:
                continue  # pair over colors outside every domain: vacuous
            fwd[ia] = fwd.get(ia, 0) | (1 << ib)
            bwd[ib] = bwd.get(ib, 0) | (1 << ia)
        if fwd:
            nbrs[u].append((v, fwd))
            nbrs[v].append((u, bwd))

    domain = list(full_masks)
    assigned = [-1] * n
    nodes = 0

    if any(m == 0 for m in domain):
        return SolveResult(UNSAT, None, 0)

    def pick() -> int:
        best, best_size = -1, 1 << 60
        for v in range(n):
            if assigned[v] < 0:
                s = domain[v].bit_count()
                if s < best_size:
                    best, best_size = v, s
        return best

    trail: list[tuple[int, int]] = []

    def dfs(depth: int) -> Optional[str]:
        nonlocal nodes
        if depth == n:
            return SAT
        v = pick()
        mask = domain[v]
        while mask:
            bit = mask & -mask
            mask ^= bit
            ci = bit.bit_length() - 1
            nodes += 1
            if max_nodes is not None and nodes > max_nodes:
                return EXCEEDED
            assigned[v] = ci
            mark = len(trail)
            ok = True
            for w, fmap in nbrs[v]:
                if assigned[w] >= 0:
                    if fmap.get(ci, 0) >> assigned[w] & 1:
                        ok = False
                        break
                    continue
                forb = fmap.get(ci, 0)
                if forb and domain[w] & forb:
                    trail.append((w, domain[w]))
                    domain[w] &= ~forb
                    if domain[w] == 0:
                        ok = False
                        break
            if ok:
                got = dfs(depth + 1)
                if got is not None:
                    return got
            while len(trail) > mark:
                w, old = trail.pop()
                domain[w] = old
            assigned[v] = -1
        return None

    got = dfs(0)
    if got == SAT:
        coloring = Coloring(tuple(colors[assigned[v]] for v in range(n)))
        if not check_coloring(cs, coloring):
            raise AssertionError("solver produced an invalid coloring")
        return SolveResult(SAT, coloring, nodes)
    if got == EXCEEDED:
        return SolveResult(EXCEEDED, None, nodes)
    return SolveResult(UNSAT, None, nodes)


def naive_solutions(cs: ConstraintSystem) -> list[Coloring]:
    """Brute-force all assignments (tiny scale only); for testing solve."""
    from itertools import product

    out = []
    doms = [sorted(d) for d in cs.domains]
    for combo in product(*doms):
        c = Coloring(tuple(combo))
        if check_coloring(cs, c):
            out.append(c)
    return out


def k_colorable(g: Multigraph, k: int, max_nodes: Optional[int] = None) -> SolveResult:
    """Proper k-colorability with symmetry breaking: vertex i (in
    degree-descending order) may only use colors 0..min(i, k-1)."""
    simple = g.simplified()
    order = sorted(range(simple.n), key=lambda v: (-simple.degree(v), v))
    rank = {v: i for i, v in enumerate(order)}
    domains = tuple(
        frozenset(range(min(rank[v] + 1, k))) for v in range(simple.n)
    )
    cons = tuple(
        (u, v, frozenset((c, c) for c in range(k))) for u, v in simple.edges
    )
    return solve(ConstraintSystem(simple.n, domains, cons), max_nodes)


def chromatic_number(g: Multigraph, max_nodes: Optional[int] = None) -> int:
    if g.n == 0:
        return 0
    for k in range(1, g.n + 1):
        res = k_colorable(g, k, max_nodes)
        if res.status == EXCEEDED:
            raise RuntimeError("chromatic number search exceeded node budget")
        if res.status == SAT:
            return k
    raise AssertionError("unreachable: n colors always suffice")


def fig2_strategy_coloring(
    g: Multigraph, meta: dict, L: ListAssignment
) -> Coloring:
    """Explicit two-case coloring strategy for the three-copy shared-hub
    gadget, witnessing that every separated 3-assignment is colorable.

    meta: {"u": hub id, "copies": [{"v": id, "pairs": [(x, y), ...]}]}.
    Colors the hub and each copy's second center first, then each
    (x, y) pair by case analysis on whether both center colors appear
    in L(x) resp. L(y).
    """
    if L.k != 3:
        raise ValueError("strategy requires 3-lists")
    from .instances import is_separated

    if not is_separated(g, L):
        raise ValueError("strategy requires a separated assignment")
    phi: list[Optional[int]] = [None] * g.n
    u = meta["u"]
    j = min(L.lists[u])
    phi[u] = j
    for copy in meta["copies"]:
        v = copy["v"]
        kk = min(L.lists[v])
        phi[v] = kk
        jk = {j, kk}
        for x, y in copy["pairs"]:
            Lx, Ly = L.lists[x], L.lists[y]
            if jk <= Lx:
                c = min(Lx - jk)
                phi[x] = c
                phi[y] = min(Ly - jk - {c})
            elif jk <= Ly:
                c = min(Ly - jk)
                phi[y] = c
                phi[x] = min(Lx - jk - {c})
            else:
                c = min(Lx - jk)
                rest = Ly - jk - {c}
                if rest:
                    phi[x] = c
                    phi[y] = min(rest)
                else:
                    phi[x] = min(Lx - jk - {c})
                    phi[y] = c
    coloring = Coloring(tuple(phi))
    cs = compile(g, L)
    if not check_coloring(cs, coloring):
        raise AssertionError("strategy produced an invalid coloring")
    return coloring
