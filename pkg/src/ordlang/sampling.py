"""Deterministic random generators for property and acceptance suites.

The program generator is deliberately calibrated: depth-2 atoms are
restricted to the shape <<a>a^k>, whose ordinal is w^w, because any
nested atom with ordinal beyond w^w (for example <a<a>> at w^(w+1))
already outgrows every practical step budget on inputs of length 2.
"""

from __future__ import annotations

import random

from .language import Atom, Initial, Program, Repetition
from .machine import Configuration, TapeState, TuringMachine
from .ordinal import Ordinal, from_int

__all__ = [
    "random_ordinal",
    "random_limit_ordinal",
    "random_program",
    "random_safe_program",
    "random_configuration",
]


def random_ordinal(rng: random.Random, depth: int = 3, max_coeff: int = 3,
                   max_terms: int = 3) -> Ordinal:
    """A random CNF ordinal with exponent nesting up to ``depth``."""
    if depth <= 0 or rng.random() < 0.2:
        return from_int(rng.randint(0, max_coeff))
    exponents: set[Ordinal] = set()
    for _ in range(rng.randint(1, max_terms)):
        exponents.add(random_ordinal(rng, depth - 1, max_coeff, max_terms))
    terms = tuple(sorted(exponents, reverse=True))
    return Ordinal(tuple((e, rng.randint(1, max_coeff)) for e in terms))


def random_limit_ordinal(rng: random.Random, depth: int = 3,
                         max_coeff: int = 3) -> Ordinal:
    """A random limit ordinal (nonzero, last exponent nonzero)."""
    while True:
        alpha = random_ordinal(rng, depth, max_coeff)
        while alpha.terms and alpha.terms[-1][0].is_zero():
            alpha = Ordinal(alpha.terms[:-1])
        if alpha.is_limit():
            return alpha


def _deep_atom(rng: random.Random, symbol: str, extra: int) -> Repetition:
    # <<a> a^extra>: ordinal w^w regardless of extra (the trailing units absorb)
    inner: tuple[Atom, ...] = (Repetition((Initial(symbol),)),)
    inner += tuple(Initial(symbol) for _ in range(extra))
    return Repetition(inner)


def random_safe_program(rng: random.Random, max_len: int = 12,
                        symbol: str = "a", max_power: int = 3) -> Program:
    """A random program of depth <= 1 within the length budget."""
    atoms: list[Atom] = []
    budget = rng.randint(1, max_len)
    while budget > 0:
        if rng.random() < 0.45:
            atoms.append(Initial(symbol))
            budget -= 1
        else:
            c = rng.randint(1, min(max_power, max(1, budget - 1)))
            atoms.append(Repetition(tuple(Initial(symbol) for _ in range(c))))
            budget -= c + 1
    return tuple(atoms)


def random_program(rng: random.Random, max_len: int = 12, symbol: str = "a",
                   allow_deep: bool = True) -> Program:
    """A random program of depth <= 2 whose run at n = 2 stays small.

    When a depth-2 atom is included it comes first (anything unsafe after
    grown data explodes), optionally preceded by one plain symbol, and
    the tail holds only unit-cost symbols and single loops.
    """
    if allow_deep and rng.random() < 0.15:
        atoms: list[Atom] = []
        if rng.random() < 0.3:
            atoms.append(Initial(symbol))
        atoms.append(_deep_atom(rng, symbol, rng.choice([0, 0, 0, 1])))
        for _ in range(rng.randint(0, 3)):
            if rng.random() < 0.5:
                atoms.append(Initial(symbol))
            else:
                atoms.append(Repetition((Initial(symbol),)))
        return tuple(atoms)
    prog = random_safe_program(rng, max_len, symbol)
    return prog if prog else (Initial(symbol),)


def random_configuration(rng: random.Random, machine: TuringMachine,
                         max_width: int = 4) -> Configuration:
    def tape() -> TapeState:
        left = tuple(rng.randint(1, machine.symbols) for _ in range(rng.randint(0, max_width)))
        right = tuple(rng.randint(1, machine.symbols) for _ in range(rng.randint(0, max_width)))
        return TapeState(left, rng.randint(1, machine.symbols), right)

    return Configuration(rng.randint(1, machine.states),
                         tuple(tape() for _ in range(machine.tapes)))
