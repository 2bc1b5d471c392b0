"""Command-line client for the certification service.

All subcommands build the same request models the HTTP API consumes.  By
default they execute in-process; pass --server to talk to a running service
instead.  Exit codes: 0 = ran to completion, 2 = malformed input,
3 = precision exhausted on a single-curve run.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Optional

import click


def _dispatch(server: Optional[str], path: str, payload: dict) -> dict:
    if server:
        import httpx

        resp = httpx.post(server.rstrip("/") + path, json=payload, timeout=600.0)
        if resp.status_code == 422:
            raise click.ClickException("malformed input: " + resp.text)
        resp.raise_for_status()
        return resp.json()
    from fastapi.testclient import TestClient

    from .api.app import app

    with TestClient(app) as client:
        resp = client.post(path, json=payload)
        if resp.status_code == 422:
            detail = resp.json().get("detail", resp.text)
            raise _Malformed(str(detail))
        resp.raise_for_status()
        return resp.json()


class _Malformed(Exception):
    pass


@click.group()
def main() -> None:
    """Finiteness certification for depth-2 Chabauty-Kim sets at p = 2."""


@main.command()
@click.option("--poly", required=True, help="coefficients c0;c1;...;cn ascending")
@click.option("--rank", required=True, type=int, help="Mordell-Weil rank of the Jacobian")
@click.option("--label", default="curve", show_default=True)
@click.option("--cert", "cert_path", type=click.Path(exists=True), default=None, help="certificate JSON")
@click.option("--precision", type=int, default=128, show_default=True)
@click.option("--max-precision", type=int, default=1024, show_default=True)
@click.option("--orientation", type=click.Choice(["rank_ge", "literal_lt"]), default="rank_ge")
@click.option("--json", "json_out", type=click.Path(), default=None, help="write the report here")
@click.option("--server", default=None, help="base URL of a running service")
def certify(poly, rank, label, cert_path, precision, max_precision, orientation, json_out, server):
    """Run the six-condition pipeline on one curve."""
    payload = {
        "curve": {"label": label, "coeffs": poly.split(";"), "mw_rank": rank},
        "options": {
            "precision_start": precision,
            "precision_max": max_precision,
            "condition6_orientation": orientation,
        },
    }
    if cert_path:
        data = json.loads(Path(cert_path).read_text())
        payload["certificate"] = data
    try:
        out = _dispatch(server, "/certify", payload)
    except _Malformed as err:
        click.echo(f"malformed input: {err}", err=True)
        sys.exit(2)
    report = out["report"]
    text = json.dumps(report, indent=1)
    if json_out:
        Path(json_out).write_text(text)
    click.echo(text)
    if any(v == "precision-exhausted" for v in report["conditions"].values()):
        sys.exit(3)


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True), help="curves CSV")
@click.option("--certs", "certs_dir", type=click.Path(exists=True), default=None, help="certificate JSON directory")
@click.option("--jobs", type=int, default=1, show_default=True)
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--orientation", type=click.Choice(["rank_ge", "literal_lt"]), default="rank_ge")
@click.option("--server", default=None)
def batch(input_path, certs_dir, jobs, out_path, orientation, server):
    """Certify every curve in a CSV corpus and write the aggregate report."""
    from .pipeline import ingest_lmfdb

    ingest = ingest_lmfdb(input_path)
    if ingest.errors:
        for lineno, msg in ingest.errors:
            click.echo(f"row {lineno}: {msg}", err=True)
    if not ingest.accepted and ingest.errors:
        sys.exit(2)
    curves = [
        {
            "label": c.label,
            "coeffs": [str(x) for x in c.f.coeffs],
            "mw_rank": c.mw_rank,
        }
        for c in ingest.accepted
    ]
    certs = []
    if certs_dir:
        for path in sorted(Path(certs_dir).glob("*.json")):
            certs.append(json.loads(path.read_text()))
    payload = {
        "curves": curves,
        "certificates": certs,
        "jobs": jobs,
        "options": {"condition6_orientation": orientation},
    }
    try:
        out = _dispatch(server, "/batch", payload)
    except _Malformed as err:
        click.echo(f"malformed input: {err}", err=True)
        sys.exit(2)
    report = out["report"]
    report["ingest_errors"] = [{"row": r, "error": e} for r, e in ingest.errors]
    Path(out_path).write_text(json.dumps(report, indent=1, sort_keys=True))
    click.echo(f"wrote {out_path}: verified {report['verified']} of {report['total']}")


@main.command()
@click.option("--report", "report_path", required=True, type=click.Path(exists=True))
@click.option("--server", default=None)
def stats(report_path, server):
    """Print the stage table for a batch report."""
    data = json.loads(Path(report_path).read_text())
    out = _dispatch(server, "/stats", {"report": data})
    click.echo(out["table"])


@main.command()
@click.option("--suite", default="all", show_default=True)
@click.option("--twist-cases", type=int, default=100, show_default=True)
@click.option("--shapiro-cases", type=int, default=50, show_default=True)
@click.option("--server", default=None)
def oracle(suite, twist_cases, shapiro_cases, server):
    """Run the group-cohomology verification suite."""
    out = _dispatch(
        server,
        "/oracle/run",
        {"suite": suite, "twist_cases": twist_cases, "shapiro_cases": shapiro_cases},
    )
    click.echo(json.dumps(out["result"], indent=1))
    if not out["result"]["passed"]:
        sys.exit(1)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8642, show_default=True)
def serve(host, port):
    """Run the certification service."""
    import uvicorn

    uvicorn.run("descent2.api.app:app", host=host, port=port)


if __name__ == "__main__":
    main()
