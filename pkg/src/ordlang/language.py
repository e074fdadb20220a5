"""Program syntax for the repetition language.

A program is a finite sequence of atoms; an atom is either an initial
symbol (a constant-time base operation that grows its input length by
exactly one) or a repetition ``<body>`` wrapping a nonempty program.
The concrete grammar is

    program := item*
    item    := digit | letter | '<' program '>'

where a digit d in 1..9 abbreviates d copies of the default initial
symbol.  Whitespace is ignored.  ASTs are immutable tuples and safe to
share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Union

from .ordinal import ZERO, Ordinal, add, omega_pow

__all__ = [
    "Initial",
    "Repetition",
    "Atom",
    "Program",
    "DEFAULT_SYMBOL",
    "ParseError",
    "parse",
    "render",
    "length",
    "depth",
    "atom_depth",
    "ordinal_of",
    "atom_ordinal",
    "normal_parse",
    "AcyclicParse",
    "SpineParse",
    "is_safe",
    "symbols_of",
    "synthesize",
]

DEFAULT_SYMBOL = "a"


@dataclass(frozen=True)
class Initial:
    """Reference to an initial program by its one-character name."""

    symbol: str


@dataclass(frozen=True)
class Repetition:
    """A loop atom; the body must be a nonempty program."""

    body: tuple["Atom", ...]
    _depth: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not self.body:
            raise ValueError("repetition body must be nonempty")
        object.__setattr__(self, "_depth", 1 + max(atom_depth(a) for a in self.body))


Atom = Union[Initial, Repetition]
Program = tuple[Atom, ...]


def atom_depth(atom: Atom) -> int:
    return atom._depth if isinstance(atom, Repetition) else 0


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


def parse(text: str, alphabet: Iterable[str] | None = None,
          default_symbol: str = DEFAULT_SYMBOL) -> Program:
    """Parse program text into an AST.

    ``alphabet`` optionally restricts the accepted initial-symbol letters;
    the default symbol is always accepted for digit expansion.
    """
    allowed = set(alphabet) if alphabet is not None else None
    stack: list[list[Atom]] = [[]]
    opens: list[int] = []
    for pos, ch in enumerate(text):
        if ch.isspace():
            continue
        if ch == "<":
            stack.append([])
            opens.append(pos)
        elif ch == ">":
            if len(stack) == 1:
                raise ParseError("unbalanced '>'", pos)
            body = stack.pop()
            opens.pop()
            if not body:
                raise ParseError("empty repetition body", pos)
            stack[-1].append(Repetition(tuple(body)))
        elif ch.isdigit():
            if ch == "0":
                raise ParseError("digit must be 1-9", pos)
            stack[-1].extend(Initial(default_symbol) for _ in range(int(ch)))
        elif ch.isalpha():
            if allowed is not None and ch not in allowed:
                raise ParseError(f"unknown symbol {ch!r}", pos)
            stack[-1].append(Initial(ch))
        else:
            raise ParseError(f"unexpected character {ch!r}", pos)
    if opens:
        raise ParseError("unbalanced '<'", opens[-1])
    return tuple(stack[0])


def render(program: Program, default_symbol: str = DEFAULT_SYMBOL) -> str:
    """Inverse of parse; runs of the default symbol compress to digits."""
    out: list[str] = []
    run = 0

    def flush() -> None:
        nonlocal run
        while run > 9:
            out.append("9")
            run -= 9
        if run:
            out.append(str(run))
        run = 0

    for atom in program:
        if isinstance(atom, Initial) and atom.symbol == default_symbol:
            run += 1
            continue
        flush()
        if isinstance(atom, Initial):
            out.append(atom.symbol)
        else:
            out.append(f"<{render(atom.body, default_symbol)}>")
    flush()
    return "".join(out)


def length(program: Program) -> int:
    """Overall number of initial symbols and repetitions, recursively."""
    return sum(1 if isinstance(a, Initial) else 1 + length(a.body) for a in program)


def depth(program: Program) -> int:
    """Nesting depth of repetitions; 0 for acyclic programs."""
    return max((atom_depth(a) for a in program), default=0)


def atom_ordinal(atom: Atom) -> Ordinal:
    from .ordinal import ONE
    if isinstance(atom, Initial):
        return ONE
    return omega_pow(ordinal_of(atom.body))


def ordinal_of(program: Program) -> Ordinal:
    """Tree ordinal of a program.

    The empty program is 0, an initial symbol is 1, a repetition of body Q
    is w^(ordinal of Q), and the atoms of a composition sum right-to-left,
    so the leftmost atom is the smallest addend.
    """
    out = ZERO
    for atom in reversed(program):
        out = add(out, atom_ordinal(atom))
    return out


def is_safe(program: Program) -> bool:
    """True when no repetition occurs inside another (depth <= 1)."""
    return depth(program) <= 1


def symbols_of(program: Program) -> set[str]:
    syms: set[str] = set()
    for atom in program:
        if isinstance(atom, Initial):
            syms.add(atom.symbol)
        else:
            syms |= symbols_of(atom.body)
    return syms


@dataclass(frozen=True)
class AcyclicParse:
    """Normal parse of a loop-free program: just its symbol sequence."""

    symbols: tuple[str, ...]


@dataclass(frozen=True)
class SpineParse:
    """Normal parse of a program containing a repetition.

    ``leading`` initial atoms precede the leftmost repetition; ``opens``
    counts the extra loop openings on the leftmost spine above the
    innermost body, which starts with initial ``head`` followed by
    ``rest``.  ``tail`` holds the raw remaining tokens, which need not be
    a well-formed program by themselves.
    """

    leading: int
    opens: int
    head: str
    rest: Program
    tail: str


def normal_parse(program: Program) -> AcyclicParse | SpineParse:
    """Decompose a nonempty program for rule selection."""
    if not program:
        raise ValueError("cannot normal-parse the empty program")
    d = 0
    while d < len(program) and isinstance(program[d], Initial):
        d += 1
    if d == len(program):
        return AcyclicParse(tuple(a.symbol for a in program))  # type: ignore[union-attr]
    spine: list[Repetition] = [program[d]]  # type: ignore[list-item]
    while isinstance(spine[-1].body[0], Repetition):
        spine.append(spine[-1].body[0])
    inner = spine[-1]
    head = inner.body[0]
    assert isinstance(head, Initial)
    tail_parts = []
    for rep in reversed(spine[:-1]):
        tail_parts.append(render(rep.body[1:]) + ">")
    tail_parts.append(render(program[d + 1:]))
    return SpineParse(
        leading=d,
        opens=len(spine) - 1,
        head=head.symbol,
        rest=inner.body[1:],
        tail="".join(tail_parts),
    )


def synthesize(alpha: Ordinal, symbol: str = DEFAULT_SYMBOL) -> Program:
    """The canonical program of ordinal alpha over a single initial symbol.

    CNF terms are emitted smallest-first left to right, which avoids
    absorption and keeps the program length equal to ord_size(alpha).
    """
    atoms: list[Atom] = []
    for exp, coeff in reversed(alpha.terms):
        atom: Atom = Initial(symbol) if exp.is_zero() else Repetition(synthesize(exp, symbol))
        atoms.extend([atom] * coeff)
    return tuple(atoms)
