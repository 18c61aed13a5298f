"""Pydantic request and response models for the HTTP service."""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, Field

MethodSelector = Literal["max", "sum", "com", "all"]


class OneSampleTestRequest(BaseModel):
    data: list[list[float]] = Field(..., description="samples by coordinates")
    method: MethodSelector = "all"
    alpha: float = Field(0.05, gt=0.0, lt=1.0)
    bandwidth: int | None = Field(None, ge=0)


class TwoSampleTestRequest(BaseModel):
    x: list[list[float]] = Field(..., description="first sample, samples by coordinates")
    y: list[list[float]] = Field(..., description="second sample, same coordinate count")
    method: MethodSelector = "all"
    alpha: float = Field(0.05, gt=0.0, lt=1.0)
    bandwidth: int | None = Field(None, ge=0)


class TestResultModel(BaseModel):
    method: Literal["max", "sum", "com"]
    problem: Literal["one_sample", "two_sample"]
    statistic: float
    p_value: float
    reject: bool
    alpha: float
    meta: dict[str, Any] = {}


class TestReport(BaseModel):
    results: list[TestResultModel]


class SimulationRequest(BaseModel):
    problem: Literal["one_sample", "two_sample"] = "one_sample"
    n: int = Field(100, ge=2)
    m: int | None = Field(None, ge=2)
    p: int = Field(200, ge=1)
    scenario: Literal["identity", "ar1"] = "identity"
    rho: float | None = None
    distribution: Literal["normal", "t3"] = "normal"
    m_signal: list[int] = [0]
    reps: int = Field(1000, ge=1)
    alpha: float = Field(0.05, gt=0.0, lt=1.0)
    seed: int = Field(0, ge=0, lt=2**64)
    bandwidth: int | None = Field(None, ge=0)
    method: MethodSelector = "all"
    threads: int | None = Field(None, ge=1)


class StudyCellModel(BaseModel):
    method: Literal["max", "sum", "com"]
    n: int
    m: int
    p: int
    distribution: str
    scenario: str
    m_signal: int
    rejection_rate: float
    mc_stderr: float


class SimulationReport(BaseModel):
    kind: Literal["size", "power"]
    cells: list[StudyCellModel]


class HealthResponse(BaseModel):
    status: str
    version: str
