"""FastAPI service wrapping the invariant engine.

The CLI talks to this app in-process by default; `chromacert serve`
exposes the same app over HTTP.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__
from .. import constructions as cons
from ..experiments import EXPERIMENTS, run_experiment
from ..graph import GraphError, Multigraph
from ..instances import instance_from_json, instance_to_json
from ..invariants import KINDS, Budget, compute, verify_witness
from .models import (
    BudgetDoc,
    ConstructRequest,
    ConstructResponse,
    ExperimentRequest,
    ExperimentResponse,
    GraphDoc,
    HealthResponse,
    InvariantRequest,
    InvariantResponse,
    ParseRequest,
    VerifyRequest,
    VerifyResponse,
)

app = FastAPI(title="chromacert", version=__version__)


def _parse_graph(text: str) -> Multigraph:
    try:
        return Multigraph.from_text(text)
    except (GraphError, ValueError) as exc:
        raise HTTPException(status_code=422, detail=f"bad graph: {exc}")


def _graph_doc(g: Multigraph) -> GraphDoc:
    return GraphDoc(
        n=g.n,
        edges=list(g.edges),
        hash=g.hash(),
        text=g.to_text(),
        simple=g.is_simple(),
        connected=g.is_connected(),
    )


def _budget(doc: BudgetDoc | None) -> Budget | None:
    if doc is None or all(
        v is None for v in (doc.max_nodes, doc.max_instances, doc.max_seconds, doc.samples)
    ):
        return None
    return Budget(doc.max_nodes, doc.max_instances, doc.max_seconds, doc.samples)


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.post("/parse", response_model=GraphDoc)
def parse(req: ParseRequest) -> GraphDoc:
    return _graph_doc(_parse_graph(req.text))


@app.get("/constructions")
def constructions() -> dict:
    return {"names": sorted(cons.REGISTRY)}


@app.post("/construct", response_model=ConstructResponse)
def construct(req: ConstructRequest) -> ConstructResponse:
    try:
        c = cons.build(req.name)
    except (ValueError, TypeError) as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    inst = (
        instance_to_json(c.instance, c.graph, c.instance_kind)
        if c.instance is not None
        else None
    )
    return ConstructResponse(
        name=c.name,
        graph=_graph_doc(c.graph),
        expected=c.expected,
        instance=inst,
        instance_kind=c.instance_kind,
        meta={k: v for k, v in c.meta.items()},
    )


@app.post("/invariant", response_model=InvariantResponse)
def invariant(req: InvariantRequest) -> InvariantResponse:
    if req.kind not in KINDS:
        raise HTTPException(status_code=422, detail=f"unknown kind {req.kind!r}; choose from {KINDS}")
    g = _parse_graph(req.graph)
    res = compute(
        g,
        req.kind,
        budget=_budget(req.budget),
        assume_planar=req.assume_planar,
        workers=req.workers,
    )
    doc = res.to_json(g)
    return InvariantResponse(graph_hash=g.hash(), **doc)


@app.post("/verify", response_model=VerifyResponse)
def verify(req: VerifyRequest) -> VerifyResponse:
    g = _parse_graph(req.graph)
    want_hash = req.instance.get("graph_hash")
    if want_hash and want_hash != g.hash():
        raise HTTPException(status_code=409, detail="instance graph_hash does not match graph")
    try:
        _, inst = instance_from_json(req.instance)
    except (KeyError, ValueError, TypeError) as exc:
        raise HTTPException(status_code=422, detail=f"bad instance: {exc}")
    k = req.instance.get("k")
    res = verify_witness(g, inst, k=k, max_nodes=req.max_nodes)
    coloring = list(res.coloring.assignment) if res.coloring is not None else None
    return VerifyResponse(confirmed=res.confirmed, coloring=coloring, note=res.note)


@app.post("/experiment", response_model=ExperimentResponse)
def experiment(req: ExperimentRequest) -> ExperimentResponse:
    if req.name not in EXPERIMENTS:
        raise HTTPException(
            status_code=422, detail=f"unknown experiment; choose from {sorted(EXPERIMENTS)}"
        )
    kwargs: dict = {"seed": req.seed, "samples": req.samples, "workers": req.workers}
    if req.budget is not None:
        kwargs["budget"] = _budget(req.budget)
    if req.k is not None:
        kwargs["k"] = req.k
    if req.nmax is not None:
        kwargs["nmax"] = req.nmax
    if req.count is not None:
        kwargs["count"] = req.count
    try:
        report = run_experiment(req.name, **kwargs)
    except TypeError as exc:
        raise HTTPException(status_code=422, detail=f"bad experiment parameters: {exc}")
    return ExperimentResponse(report=report)
