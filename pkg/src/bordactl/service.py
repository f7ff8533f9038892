"""HTTP facade over the solver library.

Stateless request/response endpoints wrapping scoring, solving,
verification, reduction and generation.  The CLI is a thin client of
this app (in-process by default); run it standalone with
`uvicorn bordactl.service:app` or `bordactl serve`.
"""

from __future__ import annotations

import time
from typing import Literal

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .bruteforce import SearchBudgetExceeded, SolveResult, solve_control_bruteforce
from .control import (
    CANDIDATE_KINDS,
    ControlInstance,
    ControlKind,
    apply_solution,
    verify_explain,
)
from .election import ElectionError, Rule, WinnerModel
from .fpt import (
    FptApplicabilityError,
    solve_1ccac,
    solve_1ccdc,
    solve_ccav_fpt,
    solve_ccdv_fpt,
)
from .gen import GenError, gen_instance
from .graphs import GraphError
from .reductions import (
    REDUCTIONS,
    ReductionPreconditionError,
    ReductionResult,
)
from .report import RunReport, score_table, winner_lines
from .textio import (
    ParseError,
    parse_election,
    parse_graph,
    parse_instance,
    serialize_instance,
    serialize_witness_map,
)

app = FastAPI(title="bordactl", version="0.1.0")

_BAD_INPUT = (
    ParseError,
    ElectionError,
    GraphError,
    GenError,
    ReductionPreconditionError,
    FptApplicabilityError,
    SearchBudgetExceeded,
    ValueError,
)


class ScoreRequest(BaseModel):
    election: str


class SolveRequest(BaseModel):
    instance: str
    solver: Literal["brute", "fpt", "auto"] = "auto"
    model: Literal["unique", "cowinner"] = "unique"


class VerifyRequest(BaseModel):
    instance: str
    picks: list[str]
    model: Literal["unique", "cowinner"] = "unique"


class ReduceRequest(BaseModel):
    graph: str
    k: int = Field(ge=0)
    target: str
    force: bool = False


class GenRequest(BaseModel):
    seed: int
    m: int
    n: int
    t: int
    rule: Literal["borda", "up", "down", "av"]
    kind: Literal["ccav", "ccdv", "ccac", "ccdc"]
    budget: int
    pool: int | None = None


class ReportPayload(BaseModel):
    command: str
    exit_code: int
    feasible: bool | None
    solution: list[str] | None
    text: str
    stats: dict[str, int]


class ReducePayload(BaseModel):
    exit_code: int
    instance_text: str
    witness_text: str
    text: str


class GenPayload(BaseModel):
    exit_code: int
    instance_text: str


def _payload(report: RunReport) -> ReportPayload:
    return ReportPayload(
        command=report.command,
        exit_code=report.exit_code,
        feasible=report.feasible,
        solution=report.solution,
        text=report.render(),
        stats=report.stats,
    )


def _ms(start: float) -> int:
    return int((time.perf_counter() - start) * 1000)


@app.get("/health")
def health() -> dict[str, str]:
    return {"status": "ok"}


@app.post("/score", response_model=ReportPayload)
def score(req: ScoreRequest) -> ReportPayload:
    start = time.perf_counter()
    try:
        election = parse_election(req.election)
    except _BAD_INPUT as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    report = RunReport("score", 0)
    report.lines += [("rule", election.rule.value), ("m", str(election.m))]
    report.lines += score_table(election, "score")
    report.lines += winner_lines(election, "winners")
    report.wallclock_ms = _ms(start)
    return _payload(report)


def _fpt_solver_for(inst: ControlInstance):
    if inst.base.t_cap is None:
        return None
    if inst.kind is ControlKind.CCDV:
        return solve_ccdv_fpt
    if inst.kind is ControlKind.CCAV:
        return solve_ccav_fpt
    if inst.base.t_cap == 1 and inst.kind is ControlKind.CCDC:
        return solve_1ccdc
    if inst.base.t_cap == 1 and inst.kind is ControlKind.CCAC:
        return solve_1ccac
    return None


def _solve(inst: ControlInstance, solver: str) -> SolveResult:
    fpt = _fpt_solver_for(inst)
    if solver == "fpt":
        if fpt is None:
            raise FptApplicabilityError(
                f"no FPT algorithm exists for this problem class "
                f"({inst.kind.value}, t={inst.base.t_cap})"
            )
        return fpt(inst)
    if solver == "brute" or fpt is None:
        return solve_control_bruteforce(inst)
    return fpt(inst)


def _format_picks(inst: ControlInstance, picks: frozenset[int]) -> list[str]:
    if inst.kind in CANDIDATE_KINDS:
        return [inst.base.labels[c] for c in sorted(picks)]
    return [str(i) for i in sorted(picks)]


@app.post("/solve", response_model=ReportPayload)
def solve(req: SolveRequest) -> ReportPayload:
    start = time.perf_counter()
    try:
        inst = parse_instance(req.instance)
        inst = ControlInstance(
            inst.kind,
            inst.base,
            inst.budget,
            pool_votes=inst.pool_votes,
            pool_candidates=inst.pool_candidates,
            model=WinnerModel(req.model),
        )
        result = _solve(inst, req.solver)
    except _BAD_INPUT as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    feasible = result.feasible
    solution = _format_picks(inst, result.solution) if feasible else None
    report = RunReport(
        "solve",
        0 if feasible else 1,
        feasible=feasible,
        solution=solution,
        stats=dict(result.stats),
    )
    report.lines += [
        ("kind", inst.kind.value),
        ("solver", result.solver),
        ("model", inst.model.value),
        ("budget", str(inst.budget)),
        ("feasible", "true" if feasible else "false"),
        # "-" means no solution exists; an empty value means the empty edit wins
        ("solution", " ".join(solution) if solution is not None else "-"),
    ]
    report.lines += score_table(inst.base, "score_before")
    report.lines += winner_lines(inst.base, "winners_before")
    if feasible:
        after = apply_solution(inst, result.solution)
        report.lines += score_table(after, "score_after")
        report.lines += winner_lines(after, "winners_after")
    report.wallclock_ms = _ms(start)
    return _payload(report)


def _parse_picks(inst: ControlInstance, picks: list[str]) -> frozenset[int] | str:
    """Map CLI pick tokens to ids/indices, or return a rejection reason."""
    out: set[int] = set()
    if inst.kind in CANDIDATE_KINDS:
        for token in picks:
            if token not in inst.base.labels:
                return f"unknown-candidate:{token}"
            out.add(inst.base.labels.index(token))
    else:
        for token in picks:
            try:
                out.add(int(token))
            except ValueError:
                return f"bad-vote-index:{token}"
    return frozenset(out)


@app.post("/verify", response_model=ReportPayload)
def verify_endpoint(req: VerifyRequest) -> ReportPayload:
    start = time.perf_counter()
    try:
        inst = parse_instance(req.instance)
        inst = ControlInstance(
            inst.kind,
            inst.base,
            inst.budget,
            pool_votes=inst.pool_votes,
            pool_candidates=inst.pool_candidates,
            model=WinnerModel(req.model),
        )
    except _BAD_INPUT as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    parsed = _parse_picks(inst, req.picks)
    if isinstance(parsed, str):
        verdict, reason = False, parsed
        picks: frozenset[int] = frozenset()
    else:
        picks = parsed
        verdict, reason = verify_explain(inst, picks)
    report = RunReport("verify", 0 if verdict else 1, feasible=verdict)
    report.lines += [
        ("kind", inst.kind.value),
        ("model", inst.model.value),
        ("picks", " ".join(req.picks) if req.picks else "-"),
        ("verdict", "true" if verdict else "false"),
        ("reason", reason),
    ]
    report.lines += score_table(inst.base, "score_before")
    report.lines += winner_lines(inst.base, "winners_before")
    if verdict:
        after = apply_solution(inst, picks)
        report.lines += score_table(after, "score_after")
        report.lines += winner_lines(after, "winners_after")
    report.wallclock_ms = _ms(start)
    return _payload(report)


@app.post("/reduce", response_model=ReducePayload)
def reduce_endpoint(req: ReduceRequest) -> ReducePayload:
    try:
        if req.target not in REDUCTIONS:
            raise ReductionPreconditionError(
                f"unknown reduction {req.target!r}; choose from {sorted(REDUCTIONS)}"
            )
        graph = parse_graph(req.graph)
        result: ReductionResult = REDUCTIONS[req.target](graph, req.k, force=req.force)
    except _BAD_INPUT as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    report = RunReport("reduce", 0)
    report.lines += [
        ("target", result.name),
        ("kind", result.instance.kind.value),
        ("budget", str(result.instance.budget)),
    ]
    report.lines += [(f"size.{k}", str(v)) for k, v in sorted(result.params.items())]
    return ReducePayload(
        exit_code=0,
        instance_text=serialize_instance(result.instance),
        witness_text=serialize_witness_map(result.witness_map),
        text=report.render(),
    )


@app.post("/gen", response_model=GenPayload)
def gen_endpoint(req: GenRequest) -> GenPayload:
    try:
        inst = gen_instance(
            req.seed,
            req.m,
            req.n,
            req.t,
            Rule(req.rule),
            ControlKind(req.kind),
            req.budget,
            pool=req.pool,
        )
    except _BAD_INPUT as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    return GenPayload(exit_code=0, instance_text=serialize_instance(inst))
