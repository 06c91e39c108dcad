"""Named reproduction experiments with inline expectations.

Each experiment returns a JSON-serializable report: a list of named
assertions, each pass/fail with supporting detail, plus the tool
version, graph hashes, seeds, and budgets.  Reports contain no
wall-clock data, so two runs with the same parameters are
byte-identical.
"""

from __future__ import annotations

import random
from typing import Callable, Optional

from . import __version__
from . import constructions as cons
from . import oracles, patterns
from .graph import Multigraph, core_of, degeneracy, min_max_outdegree_orientation
from .instances import instance_to_json, is_separated, sample_instance
from .invariants import (
    Budget,
    Provenance,
    compute,
    decide_at_k,
    ledger_consistency,
    structural_bounds,
    verify_witness,
)
from . import solver as slv


class Report:
    def __init__(self, name: str, params: dict):
        self.doc = {
            "experiment": name,
            "version": __version__,
            "params": params,
            "assertions": [],
        }

    def check(self, name: str, ok: bool, **detail) -> bool:
        entry = {"name": name, "pass": bool(ok)}
        if detail:
            entry["detail"] = detail
        self.doc["assertions"].append(entry)
        return ok

    def finish(self) -> dict:
        self.doc["pass"] = all(a["pass"] for a in self.doc["assertions"])
        return self.doc


def _exact_cell(rep: Report, g: Multigraph, kind: str, want: int, workers: int = 1,
                budget: Optional[Budget] = None, label: str = "") -> None:
    r = compute(g, kind, budget=budget, workers=workers)
    rep.check(
        label or f"{kind}={want}",
        r.exact == want,
        lower=r.lower,
        upper=r.upper,
        graph=g.hash()[:16],
    )


def run_table1(seed: int = 0, samples: Optional[int] = None, workers: int = 1,
               budget: Optional[Budget] = None) -> dict:
    rep = Report("table1", {"workers": workers})
    for n in range(1, 6):
        c = cons.complete(n)
        for kind in ("ch", "chi_conflict", "ch_ad", "ch_sep"):
            lo, hi = c.expected[kind]
            _exact_cell(rep, c.graph, kind, lo, workers, budget, f"K{n}.{kind}={lo}")
    return rep.finish()


def run_bipartite_threshold(k: int = 2, seed: int = 0, samples: Optional[int] = None,
                            workers: int = 1, budget: Optional[Budget] = None) -> dict:
    if k != 2:
        raise ValueError("only the k=2 threshold is in scope")
    rep = Report("bipartite-threshold", {"k": k, "workers": workers})
    for b in (2, 3):
        g = cons.complete_bipartite(2, b).graph
        _exact_cell(rep, g, "ch_sep", 2, workers, budget, f"K_2_{b}.ch_sep=2")
    g = cons.complete_bipartite(2, 4).graph
    for kind in ("ch", "ch_ad", "ch_sep", "chi_conflict"):
        _exact_cell(rep, g, kind, 3, workers, budget, f"K_2_4.{kind}=3")
    bad = cons.kkn_bad(2)
    rep.check("kkn_bad(2).separated", is_separated(bad.graph, bad.instance))
    rep.check("kkn_bad(2).confirmed", verify_witness(bad.graph, bad.instance).confirmed)
    return rep.finish()


def run_k3n_witness(seed: int = 0, samples: Optional[int] = None, workers: int = 1,
                    budget: Optional[Budget] = None) -> dict:
    samples = samples or 10_000
    rep = Report("k3n-witness", {"seed": seed, "samples": samples})
    bad = cons.kkn_bad(3)
    rep.check("kkn_bad(3).separated", is_separated(bad.graph, bad.instance))
    rep.check("kkn_bad(3).confirmed", verify_witness(bad.graph, bad.instance).confirmed)

    # just below the threshold: sampling evidence only, not a bound
    g = cons.complete_bipartite(3, 26).graph
    fails = 0
    for i in range(samples):
        inst = sample_instance(g, "sep-list", 3, seed * 1_000_003 + i)
        if slv.solve(slv.compile(g, inst)).status != slv.SAT:
            fails += 1
    rep.check("K_3_26.sampled-separated-3-lists-colorable", fails == 0,
              samples=samples, failures=fails, evidence="sampling, not a bound")
    fails = 0
    for i in range(samples):
        inst = sample_instance(g, "local-partition", 3, seed * 2_000_003 + i)
        if slv.solve(slv.compile(g, inst)).status != slv.SAT:
            fails += 1
    rep.check("K_3_26.sampled-local-3-partitions-colorable", fails == 0,
              samples=samples, failures=fails, evidence="sampling, not a bound")
    return rep.finish()


def run_k4n_witness(seed: int = 0, samples: Optional[int] = None, workers: int = 1,
                    budget: Optional[Budget] = None) -> dict:
    rep = Report("k4n-witness", {})
    bad = cons.kkn_bad(4)
    rep.check("kkn_bad(4).separated", is_separated(bad.graph, bad.instance))
    res = verify_witness(bad.graph, bad.instance)
    rep.check("kkn_bad(4).confirmed", res.confirmed, graph=bad.graph.hash()[:16])
    return rep.finish()


def run_fig1(seed: int = 0, samples: Optional[int] = None, workers: int = 1,
             budget: Optional[Budget] = None) -> dict:
    """The multigraph gadget: blocking property, glued uncolorable
    partition, and ch_ad = ch_sep = 3 by exhaustion or sampling."""
    samples = samples or 100_000
    budget = budget or Budget(max_seconds=1800)
    rep = Report("fig1", {"seed": seed, "samples": samples,
                          "budget_seconds": budget.max_seconds, "workers": workers})
    for a, b, c in cons.FIG1_COPY_COLORS:
        gadget = cons.fig1_gadget(a, b, c)
        rep.check(f"blocking({a},{b},{c})", cons.blocking_property_check(gadget))
    glued = cons.fig1_glued()
    g = glued.graph
    rep.check("glued-partition-confirmed", verify_witness(g, glued.instance).confirmed,
              graph=g.hash()[:16])
    d, _ = degeneracy(g)
    rep.check("degeneracy=3", d == 3, degeneracy=d)
    rep.check("two-big-cycles-detector", patterns.find_two_big_cycles(g.simplified()).found)
    wit = cons.fig1_sep2_witness()
    rep.check("sep2-witness-separated", is_separated(g, wit))
    rep.check("sep2-witness-confirmed", verify_witness(g, wit).confirmed)

    # ch_sep = ch_ad = 3: lower bounds are certified above; the upper
    # bound is exhaustion if it fits the budget, else seeded sampling.
    for kind, sample_kind in (("ch_sep", "sep-list"), ("ch_ad", "adapted")):
        res = decide_at_k(g, kind, 3, budget, workers)
        if res.status == "holds":
            rep.check(f"{kind}=3", True, mode="exhaustion",
                      instances=res.stats.instances)
            continue
        if res.status == "fails":
            rep.check(f"{kind}=3", False, mode="exhaustion",
                      detail="unexpected failing instance at k=3")
            continue
        fails = 0
        for i in range(samples):
            inst = sample_instance(g, sample_kind, 3, seed * 3_000_017 + i)
            if slv.solve(slv.compile(g, inst)).status != slv.SAT:
                fails += 1
        rep.check(f"{kind}=3", fails == 0, mode="sampling",
                  samples=samples, failures=fails)
    return rep.finish()


def run_fig2(seed: int = 0, samples: Optional[int] = None, workers: int = 1,
             budget: Optional[Budget] = None) -> dict:
    samples = samples or 100_000
    rep = Report("fig2", {"seed": seed, "samples": samples})
    glued = cons.fig2_glued()
    g = glued.graph
    rep.check("adapted-witness-confirmed", verify_witness(g, glued.instance).confirmed,
              graph=g.hash()[:16])
    r = compute(g, "chi", budget=budget, workers=workers)
    rep.check("chi=3", r.exact == 3, lower=r.lower, upper=r.upper)
    from .graph import hell_zhu_two_colorable

    hz, _ = hell_zhu_two_colorable(g)
    rep.check("not-adaptable-2-colorable", not hz)
    rep.check("chi_a=3", (not hz) and r.exact == 3,
              detail="lower: not adaptable-2-colorable; upper: chi")
    rep.check("two-big-cycles-detector", patterns.find_two_big_cycles(g).found)
    fails = 0
    for i in range(samples):
        L = sample_instance(g, "sep-list", 3, seed * 5_000_011 + i)
        try:
            col = slv.fig2_strategy_coloring(g, glued.meta, L)
            if not slv.check_coloring(slv.compile(g, L), col):
                fails += 1
        except Exception:
            fails += 1
    rep.check("strategy-zero-failures", fails == 0, samples=samples, failures=fails)
    return rep.finish()


def run_wheel6(seed: int = 0, samples: Optional[int] = None, workers: int = 1,
               budget: Optional[Budget] = None) -> dict:
    rep = Report("wheel6", {"workers": workers})
    g = cons.wheel(6).graph
    res = decide_at_k(g, "ch_sep", 2, budget, workers)
    rep.check("uncolorable-separated-2-assignment-found", res.status == "fails",
              instances=res.stats.instances)
    if res.witness is not None:
        rep.check("witness-confirmed", verify_witness(g, res.witness).confirmed,
                  witness=instance_to_json(res.witness, g, "sep-list"))
    orient = min_max_outdegree_orientation(g)
    rep.check("orientation-outdegree=2", orient.max_outdegree == 2)
    r = compute(g, "ch_sep", budget=budget, workers=workers)
    rep.check("ch_sep=3", r.exact == 3, lower=r.lower, upper=r.upper)
    return rep.finish()


def run_planar_triples(seed: int = 0, samples: Optional[int] = None, workers: int = 1,
                       budget: Optional[Budget] = None) -> dict:
    samples = samples or 2_000
    rep = Report("planar-triples", {"seed": seed, "samples": samples,
                                    "workers": workers})
    triple_kinds = ("ch_sep", "ch_ad", "chi_conflict")
    for c, want in cons.planar_triples_suite():
        if c.name == "fig2_glued":
            # exhaustion is out of reach at 22 vertices; certify by parts
            g = c.graph
            led = structural_bounds(g, assume_planar=True)
            ok_lower = led.lower("ch_sep") >= 3
            rep.check("fig2_glued.ch_sep-lower-3", ok_lower)
            fails = 0
            for i in range(samples):
                L = sample_instance(g, "sep-list", 3, seed * 7_000_039 + i)
                try:
                    col = slv.fig2_strategy_coloring(g, c.meta, L)
                    if not slv.check_coloring(slv.compile(g, L), col):
                        fails += 1
                except Exception:
                    fails += 1
            rep.check("fig2_glued.ch_sep-upper-3", fails == 0,
                      mode="theorem", theorem="fig2-strategy",
                      strategy_samples=samples, failures=fails)
            confirmed = verify_witness(g, c.instance).confirmed
            rep.check("fig2_glued.ch_ad-lower-4", confirmed)
            d, _ = degeneracy(g)
            rep.check("fig2_glued.ch_ad-upper-4", d + 1 == 4, mode="theorem",
                      theorem="degeneracy")
            orient = min_max_outdegree_orientation(g)
            rep.check("fig2_glued.chi_conflict=4",
                      confirmed and orient.max_outdegree + 1 == 4,
                      detail="lower: chain from ch_ad; upper: orientation-outdegree")
            continue
        for kind, want_v in zip(triple_kinds, want):
            r = compute(c.graph, kind, budget=budget, assume_planar=True,
                        workers=workers)
            mode = "search" if r.ledger.entries[kind]["upper"].provenance.type == "exhaustion" else "theorem"
            rep.check(f"{c.name}.{kind}={want_v}", r.exact == want_v,
                      lower=r.lower, upper=r.upper, mode=mode)
    return rep.finish()


def _atlas_graphs(nmax: int) -> list[Multigraph]:
    import networkx as nx
    from networkx.generators.atlas import graph_atlas_g

    out = []
    for G in graph_atlas_g()[1:]:
        if G.number_of_nodes() > nmax or not nx.is_connected(G):
            continue
        nodes = sorted(G.nodes())
        idx = {v: i for i, v in enumerate(nodes)}
        out.append(
            Multigraph(
                len(nodes),
                tuple(sorted((min(idx[u], idx[v]), max(idx[u], idx[v]))
                             for u, v in G.edges())),
            )
        )
    return out


def run_classifier_oracle(nmax: int = 7, seed: int = 0, samples: Optional[int] = None,
                          workers: int = 1, budget: Optional[Budget] = None) -> dict:
    """Structural classifiers against independent exhaustive deciders on
    every connected simple graph up to nmax vertices."""
    if nmax > 7:
        raise ValueError("iso-free generation available up to 7 vertices")
    rep = Report("classifier-oracle", {"nmax": nmax})
    graphs = _atlas_graphs(nmax)
    dis = {"two-choosable": 0, "adaptable": 0, "conflict": 0,
           "two-big-cycles": 0, "lollipop": 0, "one-big-cycle": 0}
    conflict_scope = 0
    for g in graphs:
        if patterns.classify_two_choosable(g)[0] != oracles.two_choosable(g).value:
            dis["two-choosable"] += 1
        core, _ = core_of(g)
        cls_ad = (core.n == 1 or patterns.is_cycle_graph(core)
                  or patterns.theta_parameters(core) is not None)
        if cls_ad != oracles.adaptable_two_choosable(g).value:
            dis["adaptable"] += 1
        if g.n >= 3 and g.min_degree() >= 2 and core.n == g.n:
            conflict_scope += 1
            cls_cf = (patterns.is_cycle_graph(g)
                      or patterns.theta_parameters(g) is not None)
            if cls_cf != oracles.conflict_two_colorable(g).value:
                dis["conflict"] += 1
        sep = oracles.sep_two_choosable(g).value
        if patterns.find_two_big_cycles(g).found and sep:
            dis["two-big-cycles"] += 1
        if not sep and not patterns.find_lollipop_cycle_pair(g).found:
            dis["lollipop"] += 1
        if patterns.count_big_cycles(g, 2).status == patterns.NONE and not sep:
            dis["one-big-cycle"] += 1
    rep.check("zero-disagreements", all(v == 0 for v in dis.values()),
              graphs=len(graphs), conflict_scope=conflict_scope, **dis)
    return rep.finish()


def _random_graph(rng: random.Random, nmax: int = 8) -> Multigraph:
    n = rng.randint(1, nmax)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < rng.choice((0.15, 0.3, 0.5)):
                edges.append((u, v))
    if edges and rng.random() < 0.2:  # occasional multigraph
        edges.append(rng.choice(edges))
    return Multigraph(n, tuple(sorted(edges)))


def run_ledger_fuzz(count: int = 1000, seed: int = 0, samples: Optional[int] = None,
                    workers: int = 1, budget: Optional[Budget] = None) -> dict:
    """Random graphs; every pair of exact values must respect the
    inequality chain, and the planar meta-alarm must never fire."""
    import networkx as nx

    budget = budget or Budget(max_instances=20_000, max_seconds=0.5)
    rep = Report("ledger-fuzz", {"count": count, "seed": seed,
                                 "budget_instances": budget.max_instances,
                                 "budget_seconds": budget.max_seconds})
    rng = random.Random(seed)
    violations: list[str] = []
    alarms = 0
    exact_counts = {k: 0 for k in
                    ("chi", "ch", "chi_a", "ch_ad", "ch_sep", "chi_conflict", "chi_dp")}
    for _ in range(count):
        g = _random_graph(rng)
        G = nx.MultiGraph()
        G.add_nodes_from(range(g.n))
        G.add_edges_from(g.edges)
        planar = nx.check_planarity(nx.Graph(G))[0]
        ledgers = {}
        for kind in exact_counts:
            if kind == "chi_dp" and (g.n > 6 or len(g.edges) > 9):
                continue
            r = compute(g, kind, budget=budget, assume_planar=planar)
            entry = {"lower": {"value": r.lower}}
            if r.exact is not None:
                entry["upper"] = {"value": r.upper}
                exact_counts[kind] += 1
            ledgers[kind] = entry
        found = ledger_consistency(ledgers, assume_planar=planar,
                                   simple=g.is_simple())
        for v in found:
            if "META-ALARM" in v:
                alarms += 1
            violations.append(f"{g.to_text()!r}: {v}")
    rep.check("zero-chain-violations", not violations,
              violations=violations[:20], exact_counts=exact_counts)
    rep.check("meta-alarm-never-fires", alarms == 0, alarms=alarms)
    return rep.finish()


EXPERIMENTS: dict[str, Callable[..., dict]] = {
    "table1": run_table1,
    "bipartite-threshold": run_bipartite_threshold,
    "k3n-witness": run_k3n_witness,
    "k4n-witness": run_k4n_witness,
    "fig1": run_fig1,
    "fig2": run_fig2,
    "wheel6": run_wheel6,
    "planar-triples": run_planar_triples,
    "classifier-oracle": run_classifier_oracle,
    "ledger-fuzz": run_ledger_fuzz,
}


def run_experiment(name: str, **kwargs) -> dict:
    fn = EXPERIMENTS.get(name)
    if fn is None:
        raise ValueError(f"unknown experiment: {name!r}")
    return fn(**kwargs)
