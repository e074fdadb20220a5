"""Operational semantics: the four deterministic rewrite rules.

An instantaneous description pairs the remaining program with the current
datum.  With l = current datum length + 1, the rules are

  unfold-copy  (R):   <^c<AQ>U : x  ->  <^c<Q>^l U : x     (Q nonempty)
  unfold-base  (w):   <^c<A>U  : x  ->  <^c A^l U  : x
  apply        (A):   A T : x  ->  T : A(x)                (depth T != 1)
  postpone     (P):   A T : x  ->  T A : x                 (depth T  = 1)

Rule selection is total and deterministic on nonempty programs.  Every
step strictly decreases the program's ordinal, so every run terminates.

Step costs: apply and unfold steps cost 1, postpone steps cost 0.  The
counter is calibrated so the analysis module's recurrence bound dominates
it on canonical programs; postponement bookkeeping rides along with the
copy pass in the machine model the counter abstracts.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Mapping

from .language import Atom, Initial, Program, Repetition, atom_depth, ordinal_of
from .ordinal import Ordinal, render_ordinal

__all__ = [
    "Datum",
    "bar_datum",
    "default_semantics",
    "Semantics",
    "StepRecord",
    "StepEvent",
    "Trace",
    "LengthRun",
    "FuelExhausted",
    "RewriteError",
    "step_once",
    "run",
    "length_run",
    "trace_to_dict",
]

Semantics = Mapping[str, Callable[["Datum"], "Datum"]]


class RewriteError(ValueError):
    pass


class FuelExhausted(RuntimeError):
    """Raised when a run exceeds its step budget; carries partial counters."""

    def __init__(self, steps: int, cost: int, applications: int):
        super().__init__(f"fuel exhausted after {steps} steps")
        self.steps = steps
        self.cost = cost
        self.applications = applications


@dataclass(frozen=True)
class Datum:
    """An element of the data domain: a nonempty tuple of strings."""

    components: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.components:
            raise ValueError("datum must have at least one component")

    def length(self) -> int:
        return max(len(c) for c in self.components)


def bar_datum(n: int) -> Datum:
    """The default single-component datum of length n over {'|'}."""
    return Datum(("|" * n,))


def _append_bar(x: Datum) -> Datum:
    longest = max(range(len(x.components)), key=lambda i: len(x.components[i]))
    parts = list(x.components)
    parts[longest] += "|"
    return Datum(tuple(parts))


class _DefaultSemantics(dict):
    def __missing__(self, key: str) -> Callable[[Datum], Datum]:
        return _append_bar


def default_semantics(symbols: set[str] | None = None) -> Semantics:
    """Bind symbols to the default length+1 bar appender."""
    if symbols is None:
        return _DefaultSemantics()
    return {s: _append_bar for s in symbols}


@dataclass(frozen=True)
class StepEvent:
    """Local description of one rule firing, for observers."""

    rule: str                       # "R", "omega", "A" or "P"
    l: int | None                   # replication count, unfold steps only
    cost: int
    symbol: str | None              # applied or postponed initial symbol
    removed: Atom | None            # leading repetition, unfold steps only
    inserted: tuple[Atom, ...] | None


@dataclass(frozen=True)
class StepRecord:
    rule: str
    l_used: int | None
    cost: int
    symbol: str | None
    ord_before: Ordinal | None
    ord_after: Ordinal | None


@dataclass
class Trace:
    steps: list[StepRecord]
    steps_total: int
    final_datum: Datum
    total_cost: int
    applications: int

    @property
    def final_length(self) -> int:
        return self.final_datum.length()


@dataclass(frozen=True)
class LengthRun:
    final_length: int
    applications: int
    total_cost: int
    steps_total: int


def _rewrite_repetition(head: Repetition, l: int) -> tuple[str, tuple[Atom, ...]]:
    """Rewrite the leftmost repetition atom; returns (rule, replacement).

    Descends the leftmost spine to the innermost repetition whose body
    starts with an initial symbol, then replaces <A> by A^l (unfold-base)
    or <AQ> by <Q>^l (unfold-copy), in place inside the spine.
    """
    spine: list[Repetition] = [head]
    while isinstance(spine[-1].body[0], Repetition):
        spine.append(spine[-1].body[0])
    inner = spine[-1]
    first = inner.body[0]
    assert isinstance(first, Initial)
    if len(inner.body) == 1:
        rule = "omega"
        replacement: tuple[Atom, ...] = (first,) * l
    else:
        rule = "R"
        copy = Repetition(inner.body[1:])
        replacement = (copy,) * l
    for rep in reversed(spine[:-1]):
        replacement = (Repetition(replacement + rep.body[1:]),)
    return rule, replacement


class _Engine:
    """Mutable run state shared by the concrete and abstract executors."""

    def __init__(self, program: Program, state, apply_symbol, measure):
        self.dq: deque[Atom] = deque(program)
        self.state = state
        self.apply_symbol = apply_symbol
        self.measure = measure
        self.n_deep = sum(1 for a in program if atom_depth(a) >= 2)
        self.n_rep1 = sum(1 for a in program if atom_depth(a) == 1)
        self.steps = 0
        self.cost = 0
        self.applications = 0

    def _count(self, d: int, k: int) -> None:
        if d >= 2:
            self.n_deep += k
        elif d == 1:
            self.n_rep1 += k

    def step(self) -> StepEvent:
        dq = self.dq
        if not dq:
            raise RewriteError("computation finished: empty program")
        head = dq[0]
        if isinstance(head, Initial):
            if len(dq) >= 2 and self.n_deep == 0 and self.n_rep1 >= 1:
                dq.popleft()
                dq.append(head)
                event = StepEvent("P", None, 0, head.symbol, None, None)
            else:
                dq.popleft()
                self.state = self.apply_symbol(self.state, head.symbol)
                self.cost += 1
                self.applications += 1
                event = StepEvent("A", None, 1, head.symbol, None, None)
        else:
            l = self.measure(self.state) + 1
            rule, replacement = _rewrite_repetition(head, l)
            dq.popleft()
            self._count(atom_depth(head), -1)
            dq.extendleft(reversed(replacement))
            if replacement:
                self._count(atom_depth(replacement[0]), len(replacement))
            self.cost += 1
            event = StepEvent(rule, l, 1, None, head, replacement)
        self.steps += 1
        return event


def _checked_apply(semantics: Semantics):
    def apply_symbol(x: Datum, symbol: str) -> Datum:
        try:
            fn = semantics[symbol]
        except KeyError:
            raise RewriteError(f"no semantics bound for symbol {symbol!r}") from None
        y = fn(x)
        if y.length() != x.length() + 1:
            raise RewriteError(
                f"initial program {symbol!r} grew length {x.length()} to {y.length()}, expected +1")
        return y
    return apply_symbol


def _drain(engine: _Engine, fuel: int,
           observer: Callable[[StepEvent, deque], None] | None = None):
    while engine.dq:
        if engine.steps >= fuel:
            raise FuelExhausted(engine.steps, engine.cost, engine.applications)
        event = engine.step()
        if observer is not None:
            observer(event, engine.dq)


def step_once(program: Program, datum: Datum,
              semantics: Semantics | None = None) -> tuple[Program, Datum, StepRecord]:
    """One rewrite step; raises on the empty program."""
    sem = semantics if semantics is not None else default_semantics()
    engine = _Engine(program, datum, _checked_apply(sem), lambda d: d.length())
    before = ordinal_of(program)
    event = engine.step()
    after = tuple(engine.dq)
    record = StepRecord(event.rule, event.l, event.cost, event.symbol,
                        before, ordinal_of(after))
    return after, engine.state, record


def run(program: Program, datum: Datum, *, semantics: Semantics | None = None,
        fuel: int = 10 ** 6, max_recorded: int = 10_000,
        with_ordinals: bool = True) -> Trace:
    """Full computation down to the empty program; returns the trace.

    Step records beyond ``max_recorded`` are elided (counters still
    accumulate).  Ordinals are computed for recorded steps only; pass
    ``with_ordinals=False`` to skip them on large runs.
    """
    if datum.length() < 2:
        raise RewriteError("datum length must be >= 2 at computation start")
    sem = semantics if semantics is not None else default_semantics()
    engine = _Engine(program, datum, _checked_apply(sem), lambda d: d.length())
    records: list[StepRecord] = []
    prev_ord = ordinal_of(program) if with_ordinals else None

    def observer(event: StepEvent, dq: deque) -> None:
        nonlocal prev_ord
        if len(records) >= max_recorded:
            return
        ord_after = ordinal_of(tuple(dq)) if with_ordinals else None
        records.append(StepRecord(event.rule, event.l, event.cost, event.symbol,
                                  prev_ord, ord_after))
        prev_ord = ord_after

    _drain(engine, fuel, observer if max_recorded > 0 else None)
    return Trace(records, engine.steps, engine.state, engine.cost, engine.applications)


def length_run(program: Program, n: int, *, fuel: int = 10 ** 6,
               observer: Callable[[StepEvent, deque], None] | None = None) -> LengthRun:
    """Execute with the datum abstracted to its length.

    Sound because every initial program adds exactly one to the length, so
    the final length does not depend on which symbols occur.
    """
    if n < 2:
        raise RewriteError("length must be >= 2 at computation start")
    engine = _Engine(program, n, lambda m, _s: m + 1, lambda m: m)
    _drain(engine, fuel, observer)
    return LengthRun(engine.state, engine.applications, engine.cost, engine.steps)


def trace_to_dict(trace: Trace) -> dict:
    """JSON form: {steps: [{rule, l, cost, ordBefore, ordAfter}], ...}."""
    return {
        "steps": [
            {
                "rule": r.rule,
                "l": r.l_used,
                "cost": r.cost,
                "ordBefore": None if r.ord_before is None else render_ordinal(r.ord_before),
                "ordAfter": None if r.ord_after is None else render_ordinal(r.ord_after),
            }
            for r in trace.steps
        ],
        "stepsTotal": trace.steps_total,
        "finalLength": trace.final_length,
        "applications": trace.applications,
        "totalCost": trace.total_cost,
    }
