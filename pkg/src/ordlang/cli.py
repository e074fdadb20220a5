"""Command-line front end.

Each command builds the service request model, calls the same handler
the HTTP endpoint uses, and formats the response; ``--json`` prints the
raw response body instead.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
from fastapi import HTTPException

from . import api
from .analysis import CapExceeded

__all__ = ["main"]


def _call(handler, request):
    try:
        return handler(request)
    except HTTPException as exc:
        raise click.ClickException(str(exc.detail))
    except CapExceeded as exc:
        raise click.ClickException(str(exc))


def _emit(payload, as_json: bool, lines) -> None:
    if as_json:
        if hasattr(payload, "model_dump"):
            payload = payload.model_dump()
        click.echo(json.dumps(payload, indent=2))
    else:
        for line in lines:
            click.echo(line)


def _read_components(path: str) -> list[str]:
    text = Path(path).read_text("utf-8")
    stripped = text.strip()
    if stripped.startswith("["):
        return [str(c) for c in json.loads(stripped)]
    return [stripped]


@click.group()
def main() -> None:
    """Ordinal-indexed repetition language workbench."""


@main.command("parse")
@click.argument("program")
@click.option("--json", "as_json", is_flag=True, help="emit the full response as JSON")
def parse_cmd(program: str, as_json: bool) -> None:
    """Parse a program and report its measures."""
    info = _call(api.program_info, api.ProgramRequest(program=program))
    lines = [
        f"canonical: {info.canonical}",
        f"length: {info.length}",
        f"depth: {info.depth}",
        f"safe: {info.safe}",
        f"ordinal: {info.ordinal}",
    ]
    if not info.absorption_free:
        lines.append("note: absorbed left parts; program length exceeds its ordinal size")
    _emit(info, as_json, lines)


@main.command("ord")
@click.argument("program")
@click.option("--json", "as_json", is_flag=True)
def ord_cmd(program: str, as_json: bool) -> None:
    """Print the tree ordinal of a program."""
    info = _call(api.program_info, api.ProgramRequest(program=program))
    _emit(info, as_json, [info.ordinal])


@main.command("synth")
@click.option("--ordinal", required=True)
@click.option("--symbol", default="a", show_default=True)
@click.option("--json", "as_json", is_flag=True)
def synth_cmd(ordinal: str, symbol: str, as_json: bool) -> None:
    """Emit the canonical program of an ordinal."""
    resp = _call(api.synthesize_program, api.SynthRequest(ordinal=ordinal, symbol=symbol))
    _emit(resp, as_json, [resp.program])


@main.command("run")
@click.argument("program")
@click.option("--n", type=int, default=None, help="run on the default datum of this length")
@click.option("--input", "input_path", type=click.Path(exists=True), default=None,
              help="file holding the input datum (JSON list of strings, or raw text)")
@click.option("--fuel", type=int, default=10 ** 6, show_default=True)
@click.option("--trace", is_flag=True, help="include step records")
@click.option("--json", "as_json", is_flag=True)
def run_cmd(program: str, n: int | None, input_path: str | None, fuel: int,
            trace: bool, as_json: bool) -> None:
    """Execute a program by the rewrite rules."""
    components = _read_components(input_path) if input_path else None
    req = api.RunRequest(program=program, n=n, components=components,
                         fuel=fuel, trace=trace)
    resp = _call(api.run_program, req)
    lines = [
        f"finalLength: {resp.finalLength}",
        f"applications: {resp.applications}",
        f"totalCost: {resp.totalCost}",
        f"steps: {resp.stepsTotal}",
    ]
    if trace:
        lines.append(json.dumps({"steps": resp.steps}, indent=2))
    _emit(resp, as_json, lines)


@main.command("size")
@click.option("--ordinal", required=True)
@click.option("--n", type=int, required=True)
@click.option("--cap", "cap_bits", type=int, default=None, help="magnitude cap in bits")
@click.option("--json", "as_json", is_flag=True)
def size_cmd(ordinal: str, n: int, cap_bits: int | None, as_json: bool) -> None:
    """Exact length added by the canonical program of an ordinal."""
    resp = _call(api.compute_size, api.SizeRequest(ordinal=ordinal, n=n, cap_bits=cap_bits))
    text = resp.exact if resp.exact is not None else f"overflow(>= {resp.overflow_ge_bits} bits)"
    _emit(resp, as_json, [text])


@main.command("wainer")
@click.option("--ordinal", required=True)
@click.option("--n", type=int, required=True)
@click.option("--cap", "cap_bits", type=int, default=None, help="magnitude cap in bits")
@click.option("--json", "as_json", is_flag=True)
def wainer_cmd(ordinal: str, n: int, cap_bits: int | None, as_json: bool) -> None:
    """Evaluate the fast-growing reference function."""
    resp = _call(api.compute_wainer, api.WainerRequest(ordinal=ordinal, n=n, cap_bits=cap_bits))
    text = resp.exact if resp.exact is not None else f"overflow(>= {resp.overflow_ge_bits} bits)"
    _emit(resp, as_json, [text])


@main.command("bounds")
@click.option("--ordinal", required=True)
@click.option("--json", "as_json", is_flag=True)
def bounds_cmd(ordinal: str, as_json: bool) -> None:
    """Symbolic lower/upper growth sandwich for an ordinal at or above w^w."""
    resp = _call(api.compute_bounds, api.BoundsRequest(ordinal=ordinal))
    _emit(resp, as_json, [f"lower: {resp.lower}", f"upper: {resp.upper}"])


@main.command("classify")
@click.argument("program", required=False)
@click.option("--ordinal", default=None)
@click.option("--json", "as_json", is_flag=True)
def classify_cmd(program: str | None, ordinal: str | None, as_json: bool) -> None:
    """Place a program or ordinal in the time hierarchy."""
    resp = _call(api.classify_input, api.ClassifyRequest(program=program, ordinal=ordinal))
    lines = [
        f"ordinal: {resp['ordinal']}",
        f"milestone: {resp['milestone']}",
        f"family: {resp['family']}",
        f"label: {resp['label']}",
        f"sandwich: [{resp['sandwichLower']}, {resp['sandwichUpper']}]",
        f"exact: {resp['exact']}",
    ]
    if "depth" in resp:
        lines.insert(0, f"depth: {resp['depth']} (safe: {resp['safe']})")
    _emit(resp, as_json, lines)


@main.group("tm")
def tm_group() -> None:
    """Turing machine commands."""


@tm_group.command("run")
@click.option("--machine", "machine_path", type=click.Path(exists=True), required=True)
@click.option("--input", "input_path", type=click.Path(exists=True), required=True)
@click.option("--steps", type=int, required=True)
@click.option("--json", "as_json", is_flag=True)
def tm_run_cmd(machine_path: str, input_path: str, steps: int, as_json: bool) -> None:
    """Run a machine directly for a fixed number of steps."""
    req = api.TmRunRequest(
        machine=json.loads(Path(machine_path).read_text("utf-8")),
        input=json.loads(Path(input_path).read_text("utf-8")),
        steps=steps,
    )
    resp = _call(api.tm_run_endpoint, req)
    _emit(resp, as_json, [json.dumps(resp, indent=2)])


@tm_group.command("compile")
@click.option("--machine", "machine_path", type=click.Path(exists=True), required=True)
@click.option("--json", "as_json", is_flag=True)
def tm_compile_cmd(machine_path: str, as_json: bool) -> None:
    """Compile a machine step into an initial symbol and self-check it."""
    from .machine import compile_step, config_width, encode_config, machine_from_dict
    from .sampling import random_configuration
    import random

    mach = machine_from_dict(json.loads(Path(machine_path).read_text("utf-8")))
    compiled = compile_step(mach)
    rng = random.Random(0)
    ok = True
    for _ in range(25):
        cfg = random_configuration(rng, mach)
        x = encode_config(cfg, rng.randint(0, 4), max(2, config_width(cfg)))
        ok = ok and compiled.apply(x).length() == x.length() + 1
    payload = {"symbol": compiled.symbol, "q": mach.states, "d": mach.tapes,
               "k": mach.symbols, "growth_ok": ok}
    _emit(payload, as_json, [f"symbol: {compiled.symbol}", f"growth check (+1 per step): {ok}"])
    if not ok:
        sys.exit(1)


@tm_group.command("simulate")
@click.option("--machine", "machine_path", type=click.Path(exists=True), required=True)
@click.option("--input", "input_path", type=click.Path(exists=True), required=True)
@click.option("--ordinal", required=True)
@click.option("--fuel", type=int, default=10 ** 6, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def tm_simulate_cmd(machine_path: str, input_path: str, ordinal: str, fuel: int,
                    as_json: bool) -> None:
    """Drive a machine through the compiled program of an ordinal."""
    req = api.TmSimulateRequest(
        machine=json.loads(Path(machine_path).read_text("utf-8")),
        input=json.loads(Path(input_path).read_text("utf-8")),
        ordinal=ordinal,
        fuel=fuel,
    )
    resp = _call(api.tm_simulate_endpoint, req)
    lines = [
        f"steps simulated: {resp.steps_simulated}",
        f"expected steps: {resp.expected_steps}",
        f"final configuration: {json.dumps(resp.config)}",
    ]
    _emit(resp, as_json, lines)


@main.command("verify")
@click.option("--suite", "suites", multiple=True, help="run only the named suites")
@click.option("--json", "as_json", is_flag=True)
def verify_cmd(suites: tuple[str, ...], as_json: bool) -> None:
    """Run the acceptance suites; exit nonzero on any failure."""
    resp = _call(api.verify_endpoint, api.VerifyRequest(suites=list(suites) or None))
    lines = [
        f"{'PASS' if r['passed'] else 'FAIL'} {r['name']}: {r['detail']}"
        for r in resp.results
    ]
    _emit(resp, as_json, lines)
    if not resp.all_passed:
        sys.exit(1)


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve_cmd(host: str, port: int) -> None:
    """Start the HTTP service."""
    import uvicorn

    uvicorn.run(api.app, host=host, port=port)


if __name__ == "__main__":
    main()
