"""HTTP service exposing the workbench.

Every endpoint is a thin pydantic wrapper over the core modules; the CLI
calls the same handler functions in process, so both front ends share
one request/response surface.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import acceptance, analysis, classifier
from .language import depth, is_safe, length, ordinal_of, parse, render, synthesize
from .machine import (
    config_from_dict,
    config_to_dict,
    config_width,
    machine_from_dict,
    simulate_via_language,
    tm_run,
)
from .ordinal import parse_ordinal, render_ordinal
from .rewriter import Datum, FuelExhausted, bar_datum, run, trace_to_dict

__all__ = ["create_app", "app"] + [
    "program_info", "synthesize_program", "run_program", "compute_size",
    "compute_wainer", "classify_input", "tm_run_endpoint", "tm_simulate_endpoint",
    "verify_endpoint",
]


class ProgramRequest(BaseModel):
    program: str


class ProgramInfo(BaseModel):
    program: str
    canonical: str
    length: int
    depth: int
    safe: bool
    ordinal: str
    absorption_free: bool = Field(
        description="False when some left part outweighs what follows it, "
                    "so program length and ordinal size disagree")


class SynthRequest(BaseModel):
    ordinal: str
    symbol: str = "a"


class SynthResponse(BaseModel):
    ordinal: str
    program: str


class RunRequest(BaseModel):
    program: str
    n: int | None = None
    components: list[str] | None = None
    fuel: int = 10 ** 6
    trace: bool = False
    max_recorded: int = 1000


class RunResponse(BaseModel):
    finalLength: int
    applications: int
    totalCost: int
    stepsTotal: int
    finalComponents: list[str] | None = None
    steps: list[dict] | None = None


class SizeRequest(BaseModel):
    ordinal: str
    n: int
    cap_bits: int | None = None


class NumberResponse(BaseModel):
    exact: str | None = None
    overflow_ge_bits: str | None = None


class WainerRequest(BaseModel):
    ordinal: str
    n: int
    cap_bits: int | None = None


class BoundsRequest(BaseModel):
    ordinal: str


class BoundsResponse(BaseModel):
    ordinal: str
    lower: str
    upper: str


class ClassifyRequest(BaseModel):
    program: str | None = None
    ordinal: str | None = None


class TmRunRequest(BaseModel):
    machine: dict
    input: dict
    steps: int


class TmSimulateRequest(BaseModel):
    machine: dict
    input: dict
    ordinal: str
    fuel: int = 10 ** 6


class TmSimulateResponse(BaseModel):
    config: dict
    steps_simulated: int
    expected_steps: str


class VerifyRequest(BaseModel):
    suites: list[str] | None = None


class VerifyResponse(BaseModel):
    results: list[dict]
    all_passed: bool


def _bad_request(exc: Exception) -> HTTPException:
    return HTTPException(status_code=422, detail=str(exc))


def program_info(req: ProgramRequest) -> ProgramInfo:
    try:
        prog = parse(req.program)
    except ValueError as exc:
        raise _bad_request(exc)
    alpha = ordinal_of(prog)
    from .ordinal import ord_size
    return ProgramInfo(
        program=req.program,
        canonical=render(prog),
        length=length(prog),
        depth=depth(prog),
        safe=is_safe(prog),
        ordinal=render_ordinal(alpha),
        absorption_free=length(prog) == ord_size(alpha),
    )


def synthesize_program(req: SynthRequest) -> SynthResponse:
    try:
        alpha = parse_ordinal(req.ordinal)
        prog = synthesize(alpha, req.symbol)
    except ValueError as exc:
        raise _bad_request(exc)
    return SynthResponse(ordinal=render_ordinal(alpha), program=render(prog))


def run_program(req: RunRequest) -> RunResponse:
    try:
        prog = parse(req.program)
        if req.components is not None:
            datum = Datum(tuple(req.components))
        elif req.n is not None:
            datum = bar_datum(req.n)
        else:
            raise ValueError("provide either n or components")
        trace = run(prog, datum, fuel=req.fuel,
                    max_recorded=req.max_recorded if req.trace else 0)
    except FuelExhausted as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    except ValueError as exc:
        raise _bad_request(exc)
    payload = trace_to_dict(trace)
    return RunResponse(
        finalLength=payload["finalLength"],
        applications=payload["applications"],
        totalCost=payload["totalCost"],
        stepsTotal=payload["stepsTotal"],
        finalComponents=list(trace.final_datum.components) if req.components or (
            req.n is not None and trace.final_length <= 10_000) else None,
        steps=payload["steps"] if req.trace else None,
    )


def compute_size(req: SizeRequest) -> NumberResponse:
    try:
        alpha = parse_ordinal(req.ordinal)
        value = analysis.bounded_size_fn(alpha, req.n, req.cap_bits)
    except ValueError as exc:
        raise _bad_request(exc)
    return _number_response(value)


def _number_response(value: analysis.BoundedValue) -> NumberResponse:
    if value.is_exact():
        return NumberResponse(exact=analysis.format_nat(value.value))
    return NumberResponse(overflow_ge_bits=analysis.format_nat(value.overflow_bits))


def compute_wainer(req: WainerRequest) -> NumberResponse:
    try:
        alpha = parse_ordinal(req.ordinal)
        value = analysis.wainer(alpha, req.n, req.cap_bits)
    except ValueError as exc:
        raise _bad_request(exc)
    return _number_response(value)


def compute_bounds(req: BoundsRequest) -> BoundsResponse:
    try:
        alpha = parse_ordinal(req.ordinal)
        lower, upper = analysis.grz_bounds(alpha)
    except ValueError as exc:
        raise _bad_request(exc)
    return BoundsResponse(ordinal=render_ordinal(alpha),
                          lower=analysis.render_bound(lower),
                          upper=analysis.render_bound(upper))


def classify_input(req: ClassifyRequest) -> dict:
    try:
        if req.program is not None:
            return classifier.classify_program(parse(req.program)).to_dict()
        if req.ordinal is not None:
            return classifier.classify(parse_ordinal(req.ordinal)).to_dict()
        raise ValueError("provide either program or ordinal")
    except ValueError as exc:
        raise _bad_request(exc)


def tm_run_endpoint(req: TmRunRequest) -> dict:
    try:
        mach = machine_from_dict(req.machine)
        cfg = config_from_dict(req.input)
        return config_to_dict(tm_run(mach, cfg, req.steps))
    except ValueError as exc:
        raise _bad_request(exc)


def tm_simulate_endpoint(req: TmSimulateRequest) -> TmSimulateResponse:
    try:
        mach = machine_from_dict(req.machine)
        cfg = config_from_dict(req.input)
        alpha = parse_ordinal(req.ordinal)
        expected = analysis.bounded_size_fn(alpha, config_width(cfg))
        result = simulate_via_language(mach, alpha, cfg, fuel=req.fuel)
    except FuelExhausted as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    except (ValueError, analysis.CapExceeded) as exc:
        raise _bad_request(exc)
    return TmSimulateResponse(
        config=config_to_dict(result.config),
        steps_simulated=result.steps_simulated,
        expected_steps=str(expected),
    )


def verify_endpoint(req: VerifyRequest) -> VerifyResponse:
    results = acceptance.run_suites(req.suites)
    return VerifyResponse(
        results=[{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results],
        all_passed=all(r.passed for r in results),
    )


def create_app() -> FastAPI:
    app = FastAPI(title="ordlang", version="0.1.0",
                  description="Ordinal-indexed repetition language workbench")

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    app.post("/parse", response_model=ProgramInfo)(program_info)
    app.post("/synthesize", response_model=SynthResponse)(synthesize_program)
    app.post("/run", response_model=RunResponse)(run_program)
    app.post("/size", response_model=NumberResponse)(compute_size)
    app.post("/wainer", response_model=NumberResponse)(compute_wainer)
    app.post("/bounds", response_model=BoundsResponse)(compute_bounds)
    app.post("/classify")(classify_input)
    app.post("/tm/run")(tm_run_endpoint)
    app.post("/tm/simulate", response_model=TmSimulateResponse)(tm_simulate_endpoint)
    app.post("/verify", response_model=VerifyResponse)(verify_endpoint)
    return app


app = create_app()
