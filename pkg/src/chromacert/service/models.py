"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Any, Optional

from pydantic import BaseModel, Field


class GraphDoc(BaseModel):
    n: int
    edges: list[tuple[int, int]]
    hash: str
    text: str
    simple: bool
    connected: bool


class BudgetDoc(BaseModel):
    max_nodes: Optional[int] = None
    max_instances: Optional[int] = None
    max_seconds: Optional[float] = None
    samples: Optional[int] = None


class ParseRequest(BaseModel):
    text: str


class ConstructRequest(BaseModel):
    name: str = Field(description='registry string, e.g. "complete(5)" or "fig1_glued"')


class ConstructResponse(BaseModel):
    name: str
    graph: GraphDoc
    expected: dict[str, tuple[Optional[int], Optional[int]]]
    instance: Optional[dict] = None
    instance_kind: Optional[str] = None
    meta: dict = {}


class InvariantRequest(BaseModel):
    graph: str = Field(description="graph in text format")
    kind: str
    budget: Optional[BudgetDoc] = None
    assume_planar: bool = False
    workers: int = 1


class InvariantResponse(BaseModel):
    kind: str
    lower: int
    upper: int
    exact: Optional[int]
    ledger: dict[str, Any]
    witness: Optional[dict] = None
    note: str = ""
    graph_hash: str


class VerifyRequest(BaseModel):
    graph: str
    instance: dict
    max_nodes: Optional[int] = None


class VerifyResponse(BaseModel):
    confirmed: bool
    coloring: Optional[list[int]] = None
    note: str = ""


class ExperimentRequest(BaseModel):
    name: str
    seed: int = 0
    samples: Optional[int] = None
    workers: int = 1
    budget: Optional[BudgetDoc] = None
    # experiment-specific knobs
    k: Optional[int] = None
    nmax: Optional[int] = None
    count: Optional[int] = None


class ExperimentResponse(BaseModel):
    report: dict


class HealthResponse(BaseModel):
    status: str
    version: str
