"""HTTP service exposing the chart engines.

Stateless by design: requests carry all inputs (including checkpoint text
for resumption) and responses carry complete artifacts, so the CLI can be
a thin client and the server never touches the filesystem except for the
bundled literature data.
"""

from __future__ import annotations

from typing import Dict, List, Literal, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__
from . import bpbp, deformation, presentations
from .charts import Chart, ChartFormatError
from .config import Config, ConfigError
from .ext import (
    BudgetExceeded,
    CheckpointError,
    Resolution,
    cobar_ext,
    crho_chart,
    minimal_resolution,
    vanishing_check,
)
from .reporting import Report

DIFFERENTIALS_FILE = "adams_differentials_stem20.txt"

app = FastAPI(title="isochart", version=__version__)


# -- models -------------------------------------------------------------------


class HealthResponse(BaseModel):
    status: str = "ok"
    version: str = __version__


class CheckModel(BaseModel):
    label: str
    ok: bool
    detail: str = ""


class ReportModel(BaseModel):
    name: str
    passed: bool
    checks: List[CheckModel]

    @classmethod
    def from_report(cls, report: Report) -> "ReportModel":
        return cls(
            name=report.name,
            passed=report.passed,
            checks=[CheckModel(label=l, ok=ok, detail=d) for l, ok, d in report.checks],
        )


class FrontierModel(BaseModel):
    max_s: int
    t_done: int


class ExtRequest(BaseModel):
    max_s: int = Field(ge=0, le=40)
    max_t: int = Field(ge=0, le=80)
    oracle: bool = False
    workers: int = Field(default=1, ge=1, le=64)
    budget_cells: Optional[int] = Field(default=None, ge=1)
    resume_checkpoint: Optional[str] = None


class ExtResponse(BaseModel):
    status: Literal["ok", "budget_exhausted"]
    chart_tsv: str
    checkpoint: str
    frontier: FrontierModel
    oracle_agrees: Optional[bool] = None
    mismatches: List[str] = []


class CrhoRequest(BaseModel):
    max_s: int = Field(ge=0, le=40)
    max_t: int = Field(ge=0, le=80)
    workers: int = Field(default=1, ge=1, le=64)


class CrhoResponse(BaseModel):
    chart_tsv: str
    vanishing: ReportModel


class PresentationsRequest(BaseModel):
    window: int = Field(default=20, ge=0, le=40)
    samples: int = Field(default=1000, ge=1, le=100_000)
    seed: int = 0


class SmashRequest(BaseModel):
    n: int = Field(default=4, ge=1, le=8)
    max_s: int = Field(default=6, ge=0, le=40)
    max_t: int = Field(default=12, ge=0, le=80)


class BpbpVerifyRequest(BaseModel):
    n_max: int = Field(default=3, ge=1, le=6)
    degree_bound: int = Field(default=14, ge=0, le=62)


class FibersRequest(BaseModel):
    max_stem: int = Field(default=20, ge=0, le=40)
    max_s: int = Field(default=12, ge=0, le=40)
    differentials: Optional[str] = None
    e2_chart_tsv: Optional[str] = None


class VerifyResponse(BaseModel):
    passed: bool
    report: ReportModel


class AssembleRequest(BaseModel):
    differentials: Optional[str] = None
    e2_chart_tsv: Optional[str] = None
    max_stem: int = Field(default=20, ge=0, le=40)
    max_s: int = Field(default=12, ge=0, le=40)


class AssembleResponse(BaseModel):
    passed: bool
    towers_tsv: str
    special: ReportModel
    generic: ReportModel


class BpbpStructureRequest(BaseModel):
    degree_bound: int = Field(default=14, ge=0, le=62)


# -- helpers ------------------------------------------------------------------


def _compute_resolution(
    max_s: int,
    max_t: int,
    workers: int,
    budget_cells: Optional[int],
    resume_checkpoint: Optional[str],
):
    resume: Optional[Resolution] = None
    if resume_checkpoint:
        try:
            resume = Resolution.from_checkpoint(resume_checkpoint)
        except CheckpointError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
    try:
        res = minimal_resolution(
            max_s, max_t, workers=workers, budget_cells=budget_cells, resume=resume
        )
        return res, "ok"
    except CheckpointError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    except BudgetExceeded as exc:
        return exc.resolution, "budget_exhausted"


def _stem_restricted_chart(max_s: int, max_stem: int) -> Chart:
    res = minimal_resolution(max_s, max_stem + max_s)
    full = res.chart()
    out = Chart(("s", "t"))
    for (s, t), dim, labels in full.items():
        if t - s <= max_stem:
            out.set((s, t), dim, labels)
    return out


def _bundled_differentials() -> str:
    try:
        return Config().data_path(DIFFERENTIALS_FILE).read_text()
    except ConfigError as exc:
        raise HTTPException(status_code=400, detail=str(exc))


def _build_adams_data(req_diffs: Optional[str], req_chart: Optional[str],
                      max_s: int, max_stem: int):
    text = req_diffs if req_diffs is not None else _bundled_differentials()
    try:
        diffs = deformation.parse_differentials(text)
        if req_chart is not None:
            e2 = Chart.from_tsv(req_chart)
        else:
            e2 = _stem_restricted_chart(max_s, max_stem)
        return deformation.AdamsData(e2, diffs)
    except (deformation.DifferentialFormatError, deformation.MatchingError,
            ChartFormatError, ValueError) as exc:
        raise HTTPException(status_code=400, detail=str(exc))


# -- endpoints ----------------------------------------------------------------


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse()


@app.post("/ext", response_model=ExtResponse)
def ext(req: ExtRequest) -> ExtResponse:
    res, status = _compute_resolution(
        req.max_s, req.max_t, req.workers, req.budget_cells, req.resume_checkpoint
    )
    chart = res.chart()
    oracle_agrees: Optional[bool] = None
    mismatches: List[str] = []
    if req.oracle and status == "ok":
        oracle = cobar_ext(req.max_s, req.max_t)
        oracle_agrees = chart.dims_equal(oracle)
        if not oracle_agrees:
            keys = sorted(set(chart.keys()) | set(oracle.keys()))
            for key in keys:
                if chart.dim(key) != oracle.dim(key):
                    mismatches.append(
                        f"(s,t)={key}: resolution {chart.dim(key)}, cobar {oracle.dim(key)}"
                    )
    return ExtResponse(
        status=status,
        chart_tsv=chart.to_tsv(),
        checkpoint=res.to_checkpoint(),
        frontier=FrontierModel(max_s=res.max_s, t_done=res.t_done),
        oracle_agrees=oracle_agrees,
        mismatches=mismatches,
    )


@app.post("/crho", response_model=CrhoResponse)
def crho(req: CrhoRequest) -> CrhoResponse:
    res, status = _compute_resolution(req.max_s, req.max_t, req.workers, None, None)
    assert status == "ok"
    chart = crho_chart(res.chart())
    report = vanishing_check(chart)
    return CrhoResponse(chart_tsv=chart.to_tsv(), vanishing=ReportModel.from_report(report))


@app.post("/verify/presentations", response_model=VerifyResponse)
def verify_presentations(req: PresentationsRequest) -> VerifyResponse:
    report = presentations.presentations_suite(req.window, req.samples, req.seed)
    return VerifyResponse(passed=report.passed, report=ReportModel.from_report(report))


@app.post("/verify/smash", response_model=VerifyResponse)
def verify_smash(req: SmashRequest) -> VerifyResponse:
    res = minimal_resolution(req.max_s, req.max_t)
    chart = crho_chart(res.chart())
    combined = Report("smash")
    for n in range(1, req.n + 1):
        sub = deformation.smash_rank_check(chart, n)
        combined.checks.extend(sub.checks)
    return VerifyResponse(passed=combined.passed, report=ReportModel.from_report(combined))


@app.post("/verify/bpbp", response_model=VerifyResponse)
def verify_bpbp(req: BpbpVerifyRequest) -> VerifyResponse:
    report = bpbp.bpbp_suite(req.n_max, req.degree_bound)
    return VerifyResponse(passed=report.passed, report=ReportModel.from_report(report))


@app.post("/verify/fibers", response_model=VerifyResponse)
def verify_fibers(req: FibersRequest) -> VerifyResponse:
    data = _build_adams_data(req.differentials, req.e2_chart_tsv, req.max_s, req.max_stem)
    module = deformation.assemble(data)
    combined = Report("fibers")
    combined.checks.extend(
        deformation.special_fiber_check(module, crho_chart(data.e2)).checks
    )
    combined.checks.extend(deformation.generic_fiber_check(module, data).checks)
    return VerifyResponse(passed=combined.passed, report=ReportModel.from_report(combined))


@app.post("/assemble", response_model=AssembleResponse)
def assemble(req: AssembleRequest) -> AssembleResponse:
    data = _build_adams_data(req.differentials, req.e2_chart_tsv, req.max_s, req.max_stem)
    module = deformation.assemble(data)
    special = deformation.special_fiber_check(module, crho_chart(data.e2))
    generic = deformation.generic_fiber_check(module, data)
    return AssembleResponse(
        passed=special.passed and generic.passed,
        towers_tsv=module.to_chart().to_tsv(),
        special=ReportModel.from_report(special),
        generic=ReportModel.from_report(generic),
    )


@app.post("/bpbp/structure")
def bpbp_structure(req: BpbpStructureRequest) -> Dict[str, object]:
    return bpbp.structure_dump(req.degree_bound)


__all__ = ["app"]
