"""FastAPI application exposing the test procedures and the study runner.

Error mapping: malformed data gives 400 with code ``invalid_input``, a
violated method precondition gives 422 with code ``method_precondition``,
and a numerical failure gives 500 with code ``numerical_failure``.  The
body always carries ``{"detail": {"code": ..., "message": ...}}`` so thin
clients can translate codes to exit statuses.
"""

from __future__ import annotations

from dataclasses import asdict

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import DomainError, NumericalError, ValidationError
from ..procedures import METHODS, TestResult, run_one_sample_tests, run_two_sample_tests
from ..simulate import SimConfig, run_study, resolve_threads
from . import schemas


def _selected(method: str) -> tuple[str, ...]:
    return METHODS if method == "all" else (method,)


def _result_model(res: TestResult) -> schemas.TestResultModel:
    return schemas.TestResultModel(**asdict(res))


def create_app() -> FastAPI:
    app = FastAPI(
        title="hdrank",
        version=__version__,
        description=(
            "Rank-based max-type, sum-type and Cauchy-combined tests for "
            "high-dimensional one- and two-sample mean problems, plus a "
            "reproducible Monte Carlo study runner."
        ),
    )

    def _error(status: int, code: str, exc: Exception) -> JSONResponse:
        return JSONResponse(
            status_code=status,
            content={"detail": {"code": code, "message": str(exc)}},
        )

    @app.exception_handler(ValidationError)
    async def _invalid(request, exc):
        return _error(400, "invalid_input", exc)

    @app.exception_handler(DomainError)
    async def _precondition(request, exc):
        return _error(422, "method_precondition", exc)

    @app.exception_handler(NumericalError)
    async def _numerical(request, exc):
        return _error(500, "numerical_failure", exc)

    @app.get("/health", response_model=schemas.HealthResponse)
    def health() -> schemas.HealthResponse:
        return schemas.HealthResponse(status="ok", version=__version__)

    @app.post("/v1/tests/one-sample", response_model=schemas.TestReport)
    def one_sample(req: schemas.OneSampleTestRequest) -> schemas.TestReport:
        methods = _selected(req.method)
        results = run_one_sample_tests(req.data, methods, req.alpha, req.bandwidth)
        return schemas.TestReport(results=[_result_model(results[m]) for m in methods])

    @app.post("/v1/tests/two-sample", response_model=schemas.TestReport)
    def two_sample(req: schemas.TwoSampleTestRequest) -> schemas.TestReport:
        methods = _selected(req.method)
        results = run_two_sample_tests(req.x, req.y, methods, req.alpha, req.bandwidth)
        return schemas.TestReport(results=[_result_model(results[m]) for m in methods])

    @app.post("/v1/simulations", response_model=schemas.SimulationReport)
    def simulations(req: schemas.SimulationRequest) -> schemas.SimulationReport:
        config = SimConfig(
            problem=req.problem,
            n=req.n,
            m=req.m,
            p=req.p,
            scenario=req.scenario,
            rho=req.rho,
            distribution=req.distribution,
            m_signal=tuple(req.m_signal),
            reps=req.reps,
            alpha=req.alpha,
            master_seed=req.seed,
            bandwidth=req.bandwidth,
            methods=_selected(req.method),
            threads=resolve_threads(req.threads),
        )
        study = run_study(config)
        return schemas.SimulationReport(
            kind=study.kind,
            cells=[schemas.StudyCellModel(**asdict(cell)) for cell in study.cells],
        )

    return app
