"""The two-level engine: exact invariant computation with certificates.

Seven invariants, one scheme: an adversary picks an instance (lists,
edge coloring, local partition, DP cover, or nothing for plain chi),
then the solver looks for a coloring.  The invariant's value is the
least k at which every canonical instance is colorable.

compute() starts from structural theorem bounds, then walks k upward
from the lower bound: a failing instance is a witness raising the
lower bound; a fully scanned level is an exhaustion certificate.
Everything lands in a BoundLedger with explicit provenances, closed
under the inequality chain

    chi_conflict >= ch_ad >= ch_sep,  ch >= ch_ad,
    chi_dp >= chi_conflict,  chi_dp >= ch,
    chi >= chi_a,  ch_ad >= chi_a.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterator, Optional

from . import patterns
from .graph import (
    Multigraph,
    core_of,
    degeneracy,
    hell_zhu_two_colorable,
    min_max_outdegree_orientation,
)
from .instances import (
    AdaptedInstance,
    DPCover,
    EdgeColoring,
    Instance,
    ListAssignment,
    LocalPartition,
    enum_adapted_lists,
    enum_dp_covers,
    enum_edge_colorings,
    enum_list_assignments,
    enum_local_partitions,
    instance_to_json,
    instance_from_json,
)
from . import solver as slv

KINDS = ("chi", "ch", "chi_a", "ch_ad", "ch_sep", "chi_conflict", "chi_dp")

# (x, y) meaning value(x) >= value(y)
CHAIN: tuple[tuple[str, str], ...] = (
    ("chi_conflict", "ch_ad"),
    ("ch_ad", "ch_sep"),
    ("ch", "ch_ad"),
    ("chi_dp", "chi_conflict"),
    ("chi_dp", "ch"),
    ("chi", "chi_a"),
    ("ch_ad", "chi_a"),
)

INSTANCE_KIND_OF = {
    "chi": None,
    "ch": "list",
    "ch_sep": "sep-list",
    "chi_a": "edge-coloring",
    "ch_ad": "adapted",
    "chi_conflict": "local-partition",
    "chi_dp": "dp-cover",
}

DP_MAX_K = 3
DP_MAX_EDGES = 9


@dataclass
class Budget:
    max_nodes: Optional[int] = None  # per solver call
    max_instances: Optional[int] = None
    max_seconds: Optional[float] = None
    samples: Optional[int] = None

    def __post_init__(self):
        for v in (self.max_nodes, self.max_instances, self.max_seconds, self.samples):
            if v is not None and v <= 0:
                raise ValueError("budget limits must be positive")


@dataclass(frozen=True)
class Provenance:
    type: str  # witness | exhaustion | theorem | chain
    detail: dict

    def to_json(self) -> dict:
        return {"type": self.type, **self.detail}


@dataclass
class Bound:
    value: int
    provenance: Provenance


class BoundLedger:
    """Per-invariant lower/upper bounds with provenances; immutable-ish
    value semantics (copy() before mutation when sharing)."""

    def __init__(self) -> None:
        self.entries: dict[str, dict[str, Optional[Bound]]] = {
            kind: {"lower": None, "upper": None} for kind in KINDS
        }

    def copy(self) -> "BoundLedger":
        other = BoundLedger()
        for kind in KINDS:
            other.entries[kind] = dict(self.entries[kind])
        return other

    def lower(self, kind: str) -> int:
        b = self.entries[kind]["lower"]
        return b.value if b else 1

    def upper(self, kind: str) -> Optional[int]:
        b = self.entries[kind]["upper"]
        return b.value if b else None

    def set_lower(self, kind: str, value: int, prov: Provenance) -> bool:
        cur = self.entries[kind]["lower"]
        if cur is None or value > cur.value:
            self.entries[kind]["lower"] = Bound(value, prov)
            return True
        return False

    def set_upper(self, kind: str, value: int, prov: Provenance) -> bool:
        cur = self.entries[kind]["upper"]
        if cur is None or value < cur.value:
            self.entries[kind]["upper"] = Bound(value, prov)
            return True
        return False

    def close_chain(self) -> None:
        """Propagate bounds along the inequality chain to a fixpoint."""
        changed = True
        while changed:
            changed = False
            for hi_kind, lo_kind in CHAIN:
                lo_b = self.entries[lo_kind]["lower"]
                if lo_b and self.set_lower(
                    hi_kind,
                    lo_b.value,
                    Provenance("chain", {"rule": f"{hi_kind}>={lo_kind}", "from": lo_kind}),
                ):
                    changed = True
                up_b = self.entries[hi_kind]["upper"]
                if up_b and self.set_upper(
                    lo_kind,
                    up_b.value,
                    Provenance("chain", {"rule": f"{hi_kind}>={lo_kind}", "from": hi_kind}),
                ):
                    changed = True

    def to_json(self) -> dict:
        out = {}
        for kind in KINDS:
            entry = {}
            for side in ("lower", "upper"):
                b = self.entries[kind][side]
                if b is not None:
                    entry[side] = {"value": b.value, "provenance": b.provenance.to_json()}
            out[kind] = entry
        return out


# -- structural theorem bounds ------------------------------------------------

THEOREM_REGISTRY = {
    "no-edges": "every invariant is 1 on an edgeless graph",
    "has-edge": "every invariant is at least 2 once any edge exists",
    "degeneracy": "greedy along a degeneracy order: chi, ch, chi_dp <= d + 1",
    "orientation-outdegree": "an orientation with max outdegree d gives chi_conflict <= d + 1",
    "half-max-degree": "chi_conflict <= ceil(max_degree / 2) + 1",
    "bipartite": "bipartite graphs are 2-chromatic",
    "adaptable-two-colorable": "chi_a <= 2 iff removing at most one edge makes each component bipartite",
    "two-choosable-classifier": "ch <= 2 iff every component's core is a single vertex, an even cycle, or two-two-even theta",
    "cycle-or-theta-classifier": "ch_ad <= 2 and chi_conflict <= 2 iff every component's core is a single vertex, cycle, or theta",
    "two-big-cycles": "two cycles of length >= 4 sharing at most one vertex force ch_sep >= 3",
    "one-big-cycle": "at most one cycle of length > 3 gives ch_sep <= 2",
    "six-wheel": "a 6-wheel subgraph forces ch_sep >= 3",
    "disjoint-triangles": "two vertex-disjoint triangles force ch_ad >= 3",
    "dp-cycle": "any cycle (incl. a doubled edge) forces chi_dp >= 3",
    "complete-bipartite-threshold": "K_{a,b}: b <= a^a - 1 gives ch, chi_conflict <= a; an embedded K_{j,j^j} forces ch_sep >= j + 1",
    "planar-triangle-sparsity": "asserted-planar with sparse short cycles gives chi_conflict <= 3",
    "fig2-strategy": "explicit pair-coloring strategy: every separated 3-assignment of the glued planar gadget is colorable",
}


def _detect_complete_bipartite(g: Multigraph) -> Optional[tuple[int, int]]:
    """(a, b) part sizes if g is a complete bipartite simple graph."""
    if not g.is_simple() or not g.is_connected() or g.n < 2:
        return None
    bip = g.bipartition()
    if bip is None:
        return None
    A, B = bip
    if len(A) * len(B) != len(g.edges):
        return None
    if not all((u in A) != (v in A) for u, v in g.edges):
        return None
    a, b = sorted((len(A), len(B)))
    return a, b


def structural_bounds(
    g: Multigraph, assume_planar: bool = False, cycle_budget: int = 200_000
) -> BoundLedger:
    """Every theorem bound the graph's structure yields, chain-closed."""
    led = BoundLedger()
    n, m = g.n, len(g.edges)
    if n == 0:
        raise ValueError("empty graph has no invariants")

    def thm(id_: str, **detail) -> Provenance:
        return Provenance("theorem", {"id": id_, **detail})

    if m == 0:
        for kind in KINDS:
            led.set_lower(kind, 1, thm("no-edges"))
            led.set_upper(kind, 1, thm("no-edges"))
        led.close_chain()
        return led

    for kind in KINDS:
        led.set_lower(kind, 2, thm("has-edge"))

    d, _ = degeneracy(g)
    for kind in ("chi", "ch", "chi_dp"):
        led.set_upper(kind, d + 1, thm("degeneracy", d=d))

    orient = min_max_outdegree_orientation(g)
    led.set_upper(
        "chi_conflict", orient.max_outdegree + 1, thm("orientation-outdegree", d=orient.max_outdegree)
    )
    half = (g.max_degree() + 1) // 2 + 1
    led.set_upper("chi_conflict", half, thm("half-max-degree"))

    simple = g.simplified()
    if g.bipartition() is not None:
        led.set_upper("chi", 2, thm("bipartite"))

    # per component: proper-coloring style invariants ignore multiplicity
    comp_graphs = [simple.induced(c)[0] for c in simple.components()]

    hz = [hell_zhu_two_colorable(c) for c in comp_graphs]
    if g.is_simple():
        if all(ok for ok, _ in hz):
            led.set_upper("chi_a", 2, thm("adaptable-two-colorable"))
        else:
            led.set_lower("chi_a", 3, thm("adaptable-two-colorable"))

    two_ch = [patterns.classify_two_choosable(c) for c in comp_graphs]
    if all(ok for ok, _ in two_ch):
        led.set_upper("ch", 2, thm("two-choosable-classifier"))
    elif any(not ok for ok, _ in two_ch):
        led.set_lower("ch", 3, thm("two-choosable-classifier"))

    if g.is_simple():
        cot = []
        for c in comp_graphs:
            core, _ = core_of(c)
            cot.append(
                core.n == 1
                or patterns.is_cycle_graph(core)
                or patterns.theta_parameters(core) is not None
            )
        if all(cot):
            led.set_upper("ch_ad", 2, thm("cycle-or-theta-classifier"))
            led.set_upper("chi_conflict", 2, thm("cycle-or-theta-classifier"))
        else:
            led.set_lower("ch_ad", 3, thm("cycle-or-theta-classifier"))
            led.set_lower("chi_conflict", 3, thm("cycle-or-theta-classifier"))

    big = patterns.find_two_big_cycles(simple, cycle_budget)
    if big.found:
        led.set_lower("ch_sep", 3, thm("two-big-cycles", cycles=[list(c) for c in big.witness]))
    count = patterns.count_big_cycles(simple, 2, cycle_budget)
    if count.status == patterns.NONE:
        led.set_upper("ch_sep", 2, thm("one-big-cycle"))

    if patterns.find_wheel(simple, 6) is not None:
        led.set_lower("ch_sep", 3, thm("six-wheel"))

    tris = patterns.find_disjoint_triangles(simple, cycle_budget)
    if tris.found:
        led.set_lower("ch_ad", 3, thm("disjoint-triangles"))

    if not g.is_forest():
        led.set_lower("chi_dp", 3, thm("dp-cycle"))

    kab = _detect_complete_bipartite(g)
    if kab is not None:
        a, b = kab
        if b <= a**a - 1:
            led.set_upper("ch", a, thm("complete-bipartite-threshold", parts=[a, b]))
            led.set_upper("chi_conflict", a, thm("complete-bipartite-threshold", parts=[a, b]))
        best = 0
        for j in range(1, a + 1):
            if b >= j**j or (a >= j**j and b >= j):
                best = j
        if best:
            led.set_lower("ch_sep", best + 1, thm("complete-bipartite-threshold", parts=[a, b], embedded=best))

    if assume_planar and g.is_simple():
        census = patterns.short_cycle_census(g, cycle_budget)
        if census.any_condition:
            led.set_upper("chi_conflict", 3, thm("planar-triangle-sparsity"))

    led.close_chain()
    return led


# -- decide_at_k ----------------------------------------------------------------


@dataclass
class DecideStats:
    instances: int = 0
    nodes: int = 0
    seconds: float = 0.0


@dataclass
class DecideResult:
    status: str  # holds | fails | exceeded
    witness: Optional[Instance] = None
    stats: DecideStats = field(default_factory=DecideStats)
    note: str = ""


def _instances_at_k(
    g: Multigraph, kind: str, k: int, split=None
) -> Iterator[Instance]:
    if kind == "ch":
        # column reduction needs k >= 2: at k = 1 a vertex isolated in
        # its color class has no admissible column at all
        yield from enum_list_assignments(g, k, reduced=k >= 2, split=split)
    elif kind == "ch_sep":
        yield from enum_list_assignments(g, k, separated=True, split=split)
    elif kind == "chi_a":
        yield from enum_edge_colorings(g, k, split=split)
    elif kind == "ch_ad":
        palette = max(len(g.edges), 1)
        for f in enum_edge_colorings(g, palette, split=split):
            for _, L in enum_adapted_lists(g, f, k):
                yield AdaptedInstance(k, f, L)
    elif kind == "chi_conflict":
        yield from enum_local_partitions(g, k, split=split)
    elif kind == "chi_dp":
        yield from enum_dp_covers(g, k, perfect_only=True, split=split)
    else:
        raise ValueError(f"no adversarial instances for kind {kind!r}")


def instance_sort_key(g: Multigraph, kind: str, inst: Instance):
    """Total order matching canonical enumeration order, for merging
    first-failure witnesses across parallel workers."""
    if kind in ("ch", "ch_sep"):
        counts: dict[int, int] = {}
        for v, L in enumerate(inst.lists):
            for c in L:
                counts[c] = counts.get(c, 0) | (1 << v)
        per_mask: dict[int, int] = {}
        for mask in counts.values():
            per_mask[mask] = per_mask.get(mask, 0) + 1
        all_masks = sorted(
            (mm for mm in range(1, 1 << g.n)),
            key=lambda mm: (-bin(mm).count("1"), mm),
        )
        return tuple(-per_mask.get(mm, 0) for mm in all_masks)
    if kind == "chi_a":
        return inst.colors
    if kind == "ch_ad":
        return (inst.edge_colors.colors, tuple(tuple(sorted(L)) for L in inst.lists.lists))
    if kind == "chi_conflict":
        return inst.pairs
    if kind == "chi_dp":
        return inst.matchings
    raise ValueError(kind)


def _scan(
    g: Multigraph, kind: str, k: int, budget: Optional[Budget], split=None
) -> DecideResult:
    budget = budget or Budget()
    stats = DecideStats()
    start = time.monotonic()
    deadline = start + budget.max_seconds if budget.max_seconds else None
    try:
        for inst in _instances_at_k(g, kind, k, split):
            stats.instances += 1
            if budget.max_instances and stats.instances > budget.max_instances:
                stats.seconds = time.monotonic() - start
                return DecideResult("exceeded", None, stats, "instance budget")
            if deadline and time.monotonic() > deadline:
                stats.seconds = time.monotonic() - start
                return DecideResult("exceeded", None, stats, "time budget")
            res = slv.solve(slv.compile(g, inst, k), budget.max_nodes)
            stats.nodes += res.nodes
            if res.status == slv.EXCEEDED:
                stats.seconds = time.monotonic() - start
                return DecideResult("exceeded", None, stats, "node budget")
            if res.status == slv.UNSAT:
                stats.seconds = time.monotonic() - start
                return DecideResult("fails", inst, stats)
    except ValueError as exc:
        stats.seconds = time.monotonic() - start
        return DecideResult("exceeded", None, stats, str(exc))
    stats.seconds = time.monotonic() - start
    return DecideResult("holds", None, stats)


def _worker_scan(args):
    text, kind, k, wid, nw, budget_tuple = args
    g = Multigraph.from_text(text)
    budget = Budget(*budget_tuple) if budget_tuple else None
    res = _scan(g, kind, k, budget, split=(wid, nw))
    witness_doc = (
        instance_to_json(res.witness, g, INSTANCE_KIND_OF[kind])
        if res.witness is not None
        else None
    )
    return res.status, witness_doc, res.stats.instances, res.stats.nodes, res.note


def decide_at_k(
    g: Multigraph,
    kind: str,
    k: int,
    budget: Optional[Budget] = None,
    workers: int = 1,
) -> DecideResult:
    """holds iff every canonical instance at list/palette size k has a
    solution; fails returns the canonically first failing instance."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if kind == "chi":
        res = slv.k_colorable(g, k, budget.max_nodes if budget else None)
        stats = DecideStats(instances=1, nodes=res.nodes)
        if res.status == slv.EXCEEDED:
            return DecideResult("exceeded", None, stats, "node budget")
        return DecideResult("holds" if res.status == slv.SAT else "fails", None, stats)
    if kind == "chi_dp" and (k > DP_MAX_K or len(g.edges) > DP_MAX_EDGES):
        return DecideResult("exceeded", None, DecideStats(), "dp scale cap")
    if workers <= 1:
        return _scan(g, kind, k, budget)

    from concurrent.futures import ProcessPoolExecutor

    budget_tuple = (
        (budget.max_nodes, budget.max_instances, budget.max_seconds, budget.samples)
        if budget
        else None
    )
    jobs = [(g.to_text(), kind, k, w, workers, budget_tuple) for w in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_worker_scan, jobs))
    stats = DecideStats(
        instances=sum(r[2] for r in results), nodes=sum(r[3] for r in results)
    )
    if any(r[0] == "exceeded" for r in results):
        note = next(r[4] for r in results if r[0] == "exceeded")
        return DecideResult("exceeded", None, stats, note)
    failures = [r[1] for r in results if r[0] == "fails"]
    if failures:
        insts = [instance_from_json(doc)[1] for doc in failures]
        best = min(insts, key=lambda i: instance_sort_key(g, kind, i))
        return DecideResult("fails", best, stats)
    return DecideResult("holds", None, stats)


# -- compute ---------------------------------------------------------------------


@dataclass
class ComputeResult:
    kind: str
    lower: int
    upper: int
    ledger: BoundLedger
    witness: Optional[Instance] = None
    note: str = ""

    @property
    def exact(self) -> Optional[int]:
        return self.lower if self.lower == self.upper else None

    def to_json(self, g: Multigraph) -> dict:
        out = {
            "kind": self.kind,
            "lower": self.lower,
            "upper": self.upper,
            "exact": self.exact,
            "ledger": self.ledger.to_json(),
        }
        if self.witness is not None:
            out["witness"] = instance_to_json(self.witness, g, INSTANCE_KIND_OF[self.kind])
        if self.note:
            out["note"] = self.note
        return out


def compute(
    g: Multigraph,
    kind: str,
    budget: Optional[Budget] = None,
    assume_planar: bool = False,
    workers: int = 1,
) -> ComputeResult:
    """Exact value when the search closes the structural gap, interval
    (never a guess) when a budget trips first."""
    if kind not in KINDS:
        raise ValueError(f"unknown invariant kind: {kind!r}")
    led = structural_bounds(g, assume_planar)
    lo, hi = led.lower(kind), led.upper(kind)
    assert hi is not None
    witness = None
    k = lo
    while k < hi:
        res = decide_at_k(g, kind, k, budget, workers)
        if res.status == "exceeded":
            return ComputeResult(kind, k, hi, led, witness, note=f"budget at k={k}: {res.note}")
        if res.status == "fails":
            witness = res.witness
            led.set_lower(
                kind,
                k + 1,
                Provenance("witness", {"k": k, "instance_kind": INSTANCE_KIND_OF[kind]}),
            )
            led.close_chain()
            k += 1
            continue
        led.set_upper(
            kind,
            k,
            Provenance(
                "exhaustion",
                {"k": k, "instances": res.stats.instances, "nodes": res.stats.nodes},
            ),
        )
        led.close_chain()
        return ComputeResult(kind, k, k, led, witness)
    return ComputeResult(kind, k, hi, led, witness)


# -- witness verification ----------------------------------------------------------


@dataclass
class VerifyResult:
    confirmed: bool
    coloring: Optional[slv.Coloring] = None
    note: str = ""


def verify_witness(
    g: Multigraph, inst: Instance, k: Optional[int] = None, max_nodes: Optional[int] = None
) -> VerifyResult:
    """Re-solve from scratch: confirmed iff genuinely uncolorable."""
    if isinstance(inst, EdgeColoring) and k is None:
        k = max(inst.colors, default=0) + 1
    res = slv.solve(slv.compile(g, inst, k), max_nodes)
    if res.status == slv.EXCEEDED:
        return VerifyResult(False, None, "budget exceeded")
    if res.status == slv.SAT:
        return VerifyResult(False, res.coloring, "refuted: coloring found")
    return VerifyResult(True)


# -- cross-ledger consistency --------------------------------------------------------


def ledger_consistency(
    ledgers: dict[str, dict], assume_planar: bool = False, simple: bool = True
) -> list[str]:
    """Check lower <= upper, the inequality chain, the equal-at-two rule
    (ch_ad exactly 2 forces chi_conflict = 2; simple graphs only —
    parallel edges can carry two distinct conflict pairs, and small
    multigraph counterexamples with ch_ad = 2, chi_conflict = 3 exist),
    and the planar meta-alarm (an asserted-planar graph with a strictly
    increasing exact triple ch_sep < ch_ad < chi_conflict would be a
    discovery or a bug).

    ledgers: kind -> {"lower": {"value": ...}, "upper": {"value": ...}}.
    """
    violations = []

    def lo(kind):
        e = ledgers.get(kind, {})
        return e.get("lower", {}).get("value")

    def up(kind):
        e = ledgers.get(kind, {})
        return e.get("upper", {}).get("value")

    def exact(kind):
        return lo(kind) if lo(kind) is not None and lo(kind) == up(kind) else None

    for kind in ledgers:
        if lo(kind) is not None and up(kind) is not None and lo(kind) > up(kind):
            violations.append(f"{kind}: lower {lo(kind)} > upper {up(kind)}")
    for x, y in CHAIN:
        if up(x) is not None and lo(y) is not None and up(x) < lo(y):
            violations.append(
                f"chain {x}>={y} violated: upper({x})={up(x)} < lower({y})={lo(y)}"
            )
    if simple and exact("ch_ad") == 2 and exact("chi_conflict") not in (None, 2):
        violations.append(
            f"equal-at-two rule: ch_ad = 2 but chi_conflict = {exact('chi_conflict')}"
        )
    if assume_planar:
        a, b, c = exact("ch_sep"), exact("ch_ad"), exact("chi_conflict")
        if a is not None and b is not None and c is not None and a < b < c:
            violations.append(
                "META-ALARM: asserted-planar graph with strictly increasing "
                f"({a}, {b}, {c}) — check planarity and report; this pattern is impossible"
            )
    return violations
