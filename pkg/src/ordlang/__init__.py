"""Workbench for an ordinal-indexed repetition language.

Programs are compositions of length-increasing base operations and a
single loop constructor; each program carries a tree ordinal below
epsilon-zero that bounds its growth and places it in a time hierarchy.
The package provides the syntax, the small-step rewriting engine, a
Turing machine compiler, growth and cost analysis, a classifier, an HTTP
service and a command-line client.
"""

from .analysis import (
    BoundedValue,
    CapExceeded,
    elem_bound,
    grz_bounds,
    runtime_bound,
    size_fn,
    tower_num,
    wainer,
)
from .classifier import ClassReport, classify, classify_program
from .language import (
    Initial,
    ParseError,
    Program,
    Repetition,
    depth,
    is_safe,
    length,
    normal_parse,
    ordinal_of,
    parse,
    render,
    synthesize,
)
from .machine import (
    Configuration,
    TapeState,
    TuringMachine,
    compile_step,
    decode_config,
    encode_config,
    simulate_via_language,
    tm_run,
    tm_step,
)
from .ordinal import (
    OMEGA,
    ONE,
    ZERO,
    Ordinal,
    add,
    compare,
    fund_seq,
    mul_nat,
    omega_pow,
    ord_size,
    parse_ordinal,
    render_ordinal,
    tower_omega,
)
from .rewriter import (
    Datum,
    FuelExhausted,
    Trace,
    bar_datum,
    length_run,
    run,
    step_once,
)

__version__ = "0.1.0"
