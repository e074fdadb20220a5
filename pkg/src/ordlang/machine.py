"""Multi-tape Turing machines, configuration encoding and compilation.

Machines are total transition arrays: q states, d tapes infinite to the
right over symbols 1..k, and for every (state, scanned vector) a next
state plus one action per tape (-1 move left, 0 move right, v >= 1 write
symbol v).  Moving right past the end extends the tape with the blank
symbol 1; moving left at the left edge is an error.

A configuration encodes into the rewriting engine's data domain as the
(3d+2)-tuple (state, left_1, scanned_1, reversed right_1, ..., padding),
where the padding component 1^(steps_taken + input_size) keeps the datum
length growing by exactly one per simulated step.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from .language import Program, synthesize
from .ordinal import Ordinal
from .rewriter import Datum, RewriteError, Trace, run

__all__ = [
    "TuringMachine",
    "TapeState",
    "Configuration",
    "MachineError",
    "TapeUnderflow",
    "tm_step",
    "tm_run",
    "encode_config",
    "decode_config",
    "CompiledStep",
    "compile_step",
    "SimulationResult",
    "simulate_via_language",
    "machine_from_dict",
    "machine_to_dict",
    "load_machine",
    "config_from_dict",
    "config_to_dict",
    "config_width",
]

BLANK = 1


class MachineError(ValueError):
    pass


class TapeUnderflow(MachineError):
    pass


@dataclass(frozen=True, eq=False)
class TuringMachine:
    states: int
    tapes: int
    symbols: int
    table: dict[tuple[int, tuple[int, ...]], tuple[int, tuple[int, ...]]]

    def __post_init__(self) -> None:
        q, d, k = self.states, self.tapes, self.symbols
        if q < 1 or d < 1 or k < 1:
            raise MachineError("states, tapes and symbols must all be >= 1")
        if len(self.table) != q * k ** d:
            raise MachineError(
                f"table must be total: expected {q * k ** d} entries, got {len(self.table)}")
        for (state, scan), (nxt, actions) in self.table.items():
            if not 1 <= state <= q or not 1 <= nxt <= q:
                raise MachineError(f"state out of range in entry {(state, scan)}")
            if len(scan) != d or len(actions) != d:
                raise MachineError(f"entry {(state, scan)} has wrong arity")
            if any(not 1 <= o <= k for o in scan):
                raise MachineError(f"scanned symbol out of range in {(state, scan)}")
            if any(not -1 <= a <= k for a in actions):
                raise MachineError(f"action out of range in {(state, scan)}")


@dataclass(frozen=True)
class TapeState:
    left: tuple[int, ...]
    scanned: int
    right: tuple[int, ...]


@dataclass(frozen=True)
class Configuration:
    state: int
    tapes: tuple[TapeState, ...]


def tm_step(machine: TuringMachine, cfg: Configuration) -> Configuration:
    """One deterministic transition."""
    if len(cfg.tapes) != machine.tapes:
        raise MachineError("configuration arity does not match the machine")
    scan = tuple(t.scanned for t in cfg.tapes)
    try:
        nxt, actions = machine.table[(cfg.state, scan)]
    except KeyError:
        raise MachineError(f"no table entry for state {cfg.state} scanning {scan}") from None
    new_tapes = []
    for tape, action in zip(cfg.tapes, actions):
        if action == -1:
            if not tape.left:
                raise TapeUnderflow("tape underflow: left move at the left edge")
            new_tapes.append(TapeState(tape.left[:-1], tape.left[-1],
                                       (tape.scanned,) + tape.right))
        elif action == 0:
            scanned = tape.right[0] if tape.right else BLANK
            new_tapes.append(TapeState(tape.left + (tape.scanned,), scanned, tape.right[1:]))
        else:
            new_tapes.append(TapeState(tape.left, action, tape.right))
    return Configuration(nxt, tuple(new_tapes))


def tm_run(machine: TuringMachine, cfg: Configuration, steps: int) -> Configuration:
    """Iterate tm_step; the oracle for simulation round trips."""
    for _ in range(steps):
        cfg = tm_step(machine, cfg)
    return cfg


def config_width(cfg: Configuration) -> int:
    """Max tape content length: the input size measure of a start configuration."""
    return max(len(t.left) + 1 + len(t.right) for t in cfg.tapes)


def _sym_char(v: int) -> str:
    if not 1 <= v <= 9:
        raise MachineError("encoding supports symbol values 1..9 only")
    return str(v)


def encode_config(cfg: Configuration, steps_taken: int, input_size: int) -> Datum:
    """Encode a configuration as a (3d+2)-component datum.

    The final component 1^(steps_taken + input_size) dominates the length
    measure, so the compiled step grows the datum by exactly one.
    """
    parts: list[str] = [str(cfg.state)]
    for tape in cfg.tapes:
        parts.append("".join(_sym_char(v) for v in tape.left))
        parts.append(_sym_char(tape.scanned))
        parts.append("".join(_sym_char(v) for v in reversed(tape.right)))
    parts.append("1" * (steps_taken + input_size))
    return Datum(tuple(parts))


def decode_config(x: Datum, machine: TuringMachine,
                  input_size: int = 0) -> tuple[Configuration, int]:
    """Inverse of encode_config; returns (configuration, steps_taken)."""
    d = machine.tapes
    if len(x.components) != 3 * d + 2:
        raise MachineError(
            f"expected {3 * d + 2} components for a {d}-tape machine, got {len(x.components)}")
    try:
        state = int(x.components[0])
    except ValueError:
        raise MachineError(f"malformed state component {x.components[0]!r}") from None
    if not 1 <= state <= machine.states:
        raise MachineError(f"state {state} out of range")

    def syms(text: str, what: str) -> tuple[int, ...]:
        out = []
        for ch in text:
            if not ch.isdigit() or not 1 <= int(ch) <= machine.symbols:
                raise MachineError(f"malformed {what} component {text!r}")
            out.append(int(ch))
        return tuple(out)

    tapes = []
    for h in range(d):
        left = syms(x.components[1 + 3 * h], "tape")
        scanned_text = x.components[2 + 3 * h]
        if len(scanned_text) != 1:
            raise MachineError(f"scanned component must be a single symbol, got {scanned_text!r}")
        scanned = syms(scanned_text, "scanned")[0]
        right = tuple(reversed(syms(x.components[3 + 3 * h], "tape")))
        tapes.append(TapeState(left, scanned, right))
    pad = x.components[-1]
    if any(ch != "1" for ch in pad):
        raise MachineError("malformed padding component")
    if len(pad) < input_size:
        raise MachineError("padding shorter than the declared input size")
    return Configuration(state, tuple(tapes)), len(pad) - input_size


@dataclass(frozen=True)
class CompiledStep:
    """An initial program performing one machine step on encoded data."""

    symbol: str
    apply: Callable[[Datum], Datum]


def compile_step(machine: TuringMachine, symbol: str = "n") -> CompiledStep:
    """Bind an initial symbol to one encoded machine transition.

    The bound function decodes, steps the machine, and re-encodes with
    the padding extended by one, so the datum length always grows by
    exactly one per application.
    """
    def apply(x: Datum) -> Datum:
        cfg, pad_len = decode_config(x, machine)
        if max(len(c) for c in x.components[:-1]) > pad_len:
            raise MachineError("padding does not dominate the datum length")
        stepped = tm_step(machine, cfg)
        return encode_config(stepped, pad_len + 1, 0)

    return CompiledStep(symbol, apply)


@dataclass(frozen=True)
class SimulationResult:
    config: Configuration
    steps_simulated: int
    trace: Trace


def simulate_via_language(machine: TuringMachine, alpha: Ordinal,
                          start: Configuration, *, fuel: int = 10 ** 6,
                          symbol: str = "n") -> SimulationResult:
    """Run the canonical program of ordinal alpha over the compiled step.

    The program applies the step symbol some number of times fixed by
    alpha and the encoded input length; the decoded result must agree
    with running the machine directly for that many steps.
    """
    compiled = compile_step(machine, symbol)
    program: Program = synthesize(alpha, symbol)
    size = config_width(start)
    if size < 2:
        raise RewriteError("input configuration must have width >= 2")
    x0 = encode_config(start, 0, size)
    trace = run(program, x0, semantics={symbol: compiled.apply},
                fuel=fuel, max_recorded=0, with_ordinals=False)
    cfg, _ = decode_config(trace.final_datum, machine, input_size=size)
    return SimulationResult(cfg, trace.applications, trace)


# -- JSON interchange -------------------------------------------------------

def machine_from_dict(data: dict) -> TuringMachine:
    """Build a machine from {"q", "d", "k", "table": [{state, scan, next, actions}]}."""
    try:
        q, d, k = int(data["q"]), int(data["d"]), int(data["k"])
        entries = data["table"]
    except (KeyError, TypeError, ValueError) as exc:
        raise MachineError(f"malformed machine description: {exc}") from None
    table: dict = {}
    for entry in entries:
        key = (int(entry["state"]), tuple(int(v) for v in entry["scan"]))
        if key in table:
            raise MachineError(f"duplicate table entry for {key}")
        table[key] = (int(entry["next"]), tuple(int(v) for v in entry["actions"]))
    return TuringMachine(q, d, k, table)


def machine_to_dict(machine: TuringMachine) -> dict:
    return {
        "q": machine.states,
        "d": machine.tapes,
        "k": machine.symbols,
        "table": [
            {"state": state, "scan": list(scan), "next": nxt, "actions": list(actions)}
            for (state, scan), (nxt, actions) in sorted(machine.table.items())
        ],
    }


def load_machine(path: str | Path) -> TuringMachine:
    return machine_from_dict(json.loads(Path(path).read_text("utf-8")))


def config_from_dict(data: dict) -> Configuration:
    tapes = tuple(
        TapeState(tuple(int(v) for v in t.get("left", ())),
                  int(t["scanned"]),
                  tuple(int(v) for v in t.get("right", ())))
        for t in data["tapes"]
    )
    return Configuration(int(data["state"]), tapes)


def config_to_dict(cfg: Configuration) -> dict:
    return {
        "state": cfg.state,
        "tapes": [
            {"left": list(t.left), "scanned": t.scanned, "right": list(t.right)}
            for t in cfg.tapes
        ],
    }
