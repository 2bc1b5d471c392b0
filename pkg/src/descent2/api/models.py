"""Pydantic request/response models for the certification service."""

from __future__ import annotations

from typing import Dict, List, Optional

from pydantic import BaseModel, Field


class CurveSpec(BaseModel):
    label: str
    coeffs: List[str] = Field(description="polynomial coefficients, ascending, exact rationals as strings")
    mw_rank: int


class CertificateSpec(BaseModel):
    label: str
    cl2_kf: int
    cl2_kf2: int
    s_units: Optional[List[List[str]]] = None
    source: str = ""


class PipelineOptions(BaseModel):
    precision_start: int = 128
    precision_max: int = 1024
    condition6_orientation: str = "rank_ge"
    spec_count_adjust: int = 0
    allow_lambda_fallback: bool = True


class CertifyRequest(BaseModel):
    curve: CurveSpec
    certificate: Optional[CertificateSpec] = None
    options: PipelineOptions = PipelineOptions()


class CertifyResponse(BaseModel):
    report: dict


class BatchRequest(BaseModel):
    curves: List[CurveSpec]
    certificates: List[CertificateSpec] = []
    options: PipelineOptions = PipelineOptions()
    jobs: int = 1


class BatchResponse(BaseModel):
    report: dict


class StatsRequest(BaseModel):
    report: dict


class StatsResponse(BaseModel):
    table: str


class OracleRequest(BaseModel):
    suite: str = "all"
    twist_cases: int = 100
    shapiro_cases: int = 50
    seed: int = 20240917


class OracleResponse(BaseModel):
    result: Dict[str, int | bool]


class HealthResponse(BaseModel):
    status: str
    version: str
