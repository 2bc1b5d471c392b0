"""FastAPI service wrapping the certification pipeline.

The CLI drives these handlers in-process by default; `descent2 serve` exposes
them over HTTP for long-running or multi-client use.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..pipeline import (
    CurveInput,
    GlobalCertificate,
    PipelineConfig,
    batch_run,
    run_conditions,
    stats_table,
)
from ..polynomials import RatPoly
from ..oracle_suite import run_suite
from .models import (
    BatchRequest,
    BatchResponse,
    CertifyRequest,
    CertifyResponse,
    HealthResponse,
    OracleRequest,
    OracleResponse,
    StatsRequest,
    StatsResponse,
)

app = FastAPI(title="descent2", version=__version__)


class MalformedInput(HTTPException):
    def __init__(self, detail: str) -> None:
        super().__init__(status_code=422, detail=detail)


def _curve_from_spec(spec) -> CurveInput:
    try:
        coeffs = [Fraction(c) for c in spec.coeffs]
        return CurveInput(spec.label, RatPoly(coeffs), spec.mw_rank)
    except (ValueError, ZeroDivisionError) as err:
        raise MalformedInput(f"curve {spec.label!r}: {err}")


def _cert_from_spec(spec) -> GlobalCertificate:
    try:
        su = None
        if spec.s_units is not None:
            su = [[Fraction(c) for c in row] for row in spec.s_units]
        return GlobalCertificate(spec.label, spec.cl2_kf, spec.cl2_kf2, su, spec.source)
    except (ValueError, ZeroDivisionError) as err:
        raise MalformedInput(f"certificate {spec.label!r}: {err}")


def _config_from_options(opts) -> PipelineConfig:
    if opts.condition6_orientation not in ("rank_ge", "literal_lt"):
        raise MalformedInput("condition6_orientation must be rank_ge or literal_lt")
    return PipelineConfig(
        precision_start=opts.precision_start,
        precision_max=opts.precision_max,
        condition6_orientation=opts.condition6_orientation,
        spec_count_adjust=opts.spec_count_adjust,
        allow_lambda_fallback=opts.allow_lambda_fallback,
    )


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.post("/certify", response_model=CertifyResponse)
def certify(req: CertifyRequest) -> CertifyResponse:
    curve = _curve_from_spec(req.curve)
    cert = _cert_from_spec(req.certificate) if req.certificate else None
    config = _config_from_options(req.options)
    report = run_conditions(curve, cert, config)
    return CertifyResponse(report=report.to_json())


@app.post("/batch", response_model=BatchResponse)
def batch(req: BatchRequest) -> BatchResponse:
    curves = [_curve_from_spec(c) for c in req.curves]
    certs: Dict[str, GlobalCertificate] = {}
    for spec in req.certificates:
        certs[spec.label] = _cert_from_spec(spec)
    config = _config_from_options(req.options)
    report = batch_run(curves, certs, config, jobs=max(1, req.jobs))
    return BatchResponse(report=report)


@app.post("/stats", response_model=StatsResponse)
def stats(req: StatsRequest) -> StatsResponse:
    try:
        return StatsResponse(table=stats_table(req.report))
    except KeyError as err:
        raise MalformedInput(f"report is missing field {err}")


@app.post("/oracle/run", response_model=OracleResponse)
def oracle(req: OracleRequest) -> OracleResponse:
    if req.suite != "all":
        raise MalformedInput("only suite=all is available")
    result = run_suite(req.twist_cases, req.shapiro_cases, req.seed)
    return OracleResponse(result=result.to_json())
