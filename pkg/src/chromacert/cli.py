"""Command-line front end: a thin client over the HTTP service.

By default requests are served in-process (ASGI transport, no network);
`--server URL` points the same commands at a remote instance.

Exit codes: 0 success/exact, 1 expectation or verification failure,
2 budget-limited interval, 3 input error.
"""

from __future__ import annotations

import json
import os
import sys
from typing import Optional

import click
import httpx

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_BUDGET = 2
EXIT_INPUT = 3

TABLE_COLUMNS = ("ch", "chi_conflict", "ch_ad", "ch_sep")


def _client(server: Optional[str]) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=None)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from starlette.testclient import TestClient

    from .service.app import app

    return TestClient(app, base_url="http://chromacert", raise_server_exceptions=False)


def _fail_input(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(EXIT_INPUT)


def _post(client: httpx.Client, path: str, payload: dict) -> dict:
    resp = client.post(path, json=payload)
    if resp.status_code >= 400:
        try:
            detail = resp.json().get("detail", resp.text)
        except ValueError:
            detail = resp.text
        _fail_input(str(detail))
    return resp.json()


def _load_graph_text(spec: str, client: httpx.Client) -> str:
    """A graph argument is a file path or a construction name."""
    if os.path.exists(spec):
        with open(spec) as fh:
            return fh.read()
    doc = _post(client, "/construct", {"name": spec})
    return doc["graph"]["text"]


def _budget_payload(nodes, instances, seconds, samples) -> Optional[dict]:
    if nodes is None and instances is None and seconds is None and samples is None:
        return None
    return {
        "max_nodes": nodes,
        "max_instances": instances,
        "max_seconds": seconds,
        "samples": samples,
    }


def _write_json(doc: dict, path: Optional[str]) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


budget_options = [
    click.option("--budget-nodes", type=int, default=None, help="solver node limit per instance"),
    click.option("--budget-instances", type=int, default=None, help="instance scan limit"),
    click.option("--budget-seconds", type=float, default=None, help="wall-time limit per decision"),
    click.option("--samples", type=int, default=None, help="sample count for sampling modes"),
]


def add_options(options):
    def wrap(fn):
        for opt in reversed(options):
            fn = opt(fn)
        return fn

    return wrap


@click.group()
@click.option("--server", default=None, help="remote service URL (default: in-process)")
@click.pass_context
def main(ctx: click.Context, server: Optional[str]) -> None:
    """Exact bounds and certificates for list-coloring style invariants."""
    ctx.obj = server


@main.command()
@click.argument("graph")
@click.pass_obj
def parse(server: Optional[str], graph: str) -> None:
    """Parse GRAPH (file or construction name) and print its summary."""
    with _client(server) as client:
        text = _load_graph_text(graph, client)
        doc = _post(client, "/parse", {"text": text})
    click.echo(json.dumps(doc, indent=2, sort_keys=True))


@main.command()
@click.argument("name")
@click.option("--json", "json_path", default=None, help="write the construction JSON here")
@click.pass_obj
def construct(server: Optional[str], name: str, json_path: Optional[str]) -> None:
    """Build a named construction; print its graph and expectations."""
    with _client(server) as client:
        doc = _post(client, "/construct", {"name": name})
    _write_json(doc, json_path)
    if json_path:
        click.echo(f"wrote {json_path}")


@main.command()
@click.argument("graphs", nargs=-1, required=True)
@click.option("--kind", default=None, help=f"one of {TABLE_COLUMNS} etc.; default: table of the four list kinds")
@click.option("--assume-planar", is_flag=True, default=False)
@click.option("--workers", type=int, default=1)
@click.option("--json", "json_path", default=None)
@add_options(budget_options)
@click.pass_obj
def invariant(server, graphs, kind, assume_planar, workers, json_path,
              budget_nodes, budget_instances, budget_seconds, samples) -> None:
    """Compute invariant bounds for one or more GRAPHS."""
    budget = _budget_payload(budget_nodes, budget_instances, budget_seconds, samples)
    rows = []
    exit_code = EXIT_OK
    with _client(server) as client:
        for spec in graphs:
            text = _load_graph_text(spec, client)
            kinds = [kind] if kind else list(TABLE_COLUMNS)
            row = {"graph": spec}
            for kd in kinds:
                doc = _post(client, "/invariant", {
                    "graph": text, "kind": kd, "budget": budget,
                    "assume_planar": assume_planar, "workers": workers,
                })
                row[kd] = doc
                if doc["exact"] is None:
                    exit_code = max(exit_code, EXIT_BUDGET)
            rows.append(row)
    if json_path:
        _write_json({"rows": rows}, json_path)

    def cell(doc: dict) -> str:
        if doc["exact"] is not None:
            return str(doc["exact"])
        return f"[{doc['lower']},{doc['upper']}]"

    kinds = [kind] if kind else list(TABLE_COLUMNS)
    width = max(len(r["graph"]) for r in rows)
    header = "graph".ljust(width) + "  " + "  ".join(k.rjust(12) for k in kinds)
    click.echo(header)
    for r in rows:
        click.echo(
            r["graph"].ljust(width)
            + "  "
            + "  ".join(cell(r[k]).rjust(12) for k in kinds)
        )
    sys.exit(exit_code)


@main.command()
@click.argument("graph")
@click.argument("instance_file")
@click.option("--budget-nodes", type=int, default=None)
@click.pass_obj
def verify(server, graph, instance_file, budget_nodes) -> None:
    """Re-check an instance JSON against GRAPH: confirmed or refuted."""
    try:
        with open(instance_file) as fh:
            inst = json.load(fh)
    except (OSError, ValueError) as exc:
        _fail_input(f"cannot read instance: {exc}")
    with _client(server) as client:
        text = _load_graph_text(graph, client)
        resp = client.post("/verify", json={
            "graph": text, "instance": inst, "max_nodes": budget_nodes,
        })
    if resp.status_code == 409:
        _fail_input(resp.json()["detail"])
    if resp.status_code >= 400:
        _fail_input(str(resp.json().get("detail", resp.text)))
    doc = resp.json()
    if doc["confirmed"]:
        click.echo("confirmed: no coloring exists")
        sys.exit(EXIT_OK)
    if doc["coloring"] is not None:
        click.echo(f"refuted: coloring {doc['coloring']}")
        sys.exit(EXIT_FAIL)
    click.echo(f"inconclusive: {doc['note']}")
    sys.exit(EXIT_BUDGET)


@main.command()
@click.argument("name")
@click.option("--seed", type=int, default=0)
@click.option("--workers", type=int, default=1)
@click.option("--k", type=int, default=None)
@click.option("--nmax", type=int, default=None)
@click.option("--count", type=int, default=None)
@click.option("--json", "json_path", default=None)
@add_options(budget_options)
@click.pass_obj
def experiment(server, name, seed, workers, k, nmax, count, json_path,
               budget_nodes, budget_instances, budget_seconds, samples) -> None:
    """Run a named experiment; nonzero exit on expectation mismatch."""
    payload = {
        "name": name, "seed": seed, "workers": workers, "samples": samples,
        "budget": _budget_payload(budget_nodes, budget_instances, budget_seconds, None),
    }
    if k is not None:
        payload["k"] = k
    if nmax is not None:
        payload["nmax"] = nmax
    if count is not None:
        payload["count"] = count
    with _client(server) as client:
        doc = _post(client, "/experiment", payload)
    report = doc["report"]
    _write_json(report, json_path)
    for a in report["assertions"]:
        mark = "ok  " if a["pass"] else "FAIL"
        click.echo(f"{mark} {a['name']}", err=True)
    click.echo(f"{'PASS' if report['pass'] else 'FAIL'} {report['experiment']}", err=True)
    sys.exit(EXIT_OK if report["pass"] else EXIT_FAIL)


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
def serve(host: str, port: int) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
