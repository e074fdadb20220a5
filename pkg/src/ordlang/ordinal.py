"""Cantor normal form arithmetic for tree ordinals below epsilon-zero.

An ordinal is a finite sum ``w^e1*c1 + ... + w^ek*ck`` with strictly
decreasing exponents (themselves ordinals) and integer coefficients >= 1;
the empty sum denotes 0.  Because the form is canonical, ordinal equality
is structural equality.  Values are immutable and hashable, so they are
safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

__all__ = [
    "Ordinal",
    "ZERO",
    "ONE",
    "OMEGA",
    "from_int",
    "to_int",
    "compare",
    "add",
    "omega_pow",
    "mul_nat",
    "pred",
    "fund_seq",
    "tower_omega",
    "ord_size",
    "parse_ordinal",
    "render_ordinal",
]


@dataclass(frozen=True)
class Ordinal:
    """A tree ordinal below epsilon-zero in Cantor normal form."""

    terms: tuple[tuple["Ordinal", int], ...] = ()

    def __post_init__(self) -> None:
        for i, (exp, coeff) in enumerate(self.terms):
            if coeff < 1:
                raise ValueError(f"coefficient must be >= 1, got {coeff}")
            if i > 0 and compare(self.terms[i - 1][0], exp) <= 0:
                raise ValueError("exponents must be strictly decreasing")

    # -- structural predicates -------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero())

    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0].is_zero()

    def is_limit(self) -> bool:
        return bool(self.terms) and not self.terms[-1][0].is_zero()

    def leading_exponent(self) -> "Ordinal":
        if not self.terms:
            raise ValueError("0 has no leading exponent")
        return self.terms[0][0]

    # -- operators --------------------------------------------------------

    def __lt__(self, other: "Ordinal") -> bool:
        return compare(self, other) < 0

    def __le__(self, other: "Ordinal") -> bool:
        return compare(self, other) <= 0

    def __gt__(self, other: "Ordinal") -> bool:
        return compare(self, other) > 0

    def __ge__(self, other: "Ordinal") -> bool:
        return compare(self, other) >= 0

    def __add__(self, other: "Ordinal") -> "Ordinal":
        return add(self, other)

    def __mul__(self, m: int) -> "Ordinal":
        return mul_nat(self, m)

    def __repr__(self) -> str:
        return f"Ordinal[{render_ordinal(self)}]"


ZERO = Ordinal()


def from_int(m: int) -> Ordinal:
    """The finite ordinal m (m >= 0)."""
    if m < 0:
        raise ValueError("ordinals are non-negative")
    return ZERO if m == 0 else Ordinal(((ZERO, m),))


def to_int(a: Ordinal) -> int:
    """Inverse of from_int; raises on infinite ordinals."""
    if a.is_zero():
        return 0
    if not a.is_finite():
        raise ValueError(f"{a!r} is not finite")
    return a.terms[0][1]


ONE = from_int(1)


def compare(a: Ordinal, b: Ordinal) -> int:
    """Total order on ordinals: -1, 0 or +1, lexicographic on CNF terms."""
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = compare(ea, eb)
        if c != 0:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    if len(a.terms) != len(b.terms):
        return -1 if len(a.terms) < len(b.terms) else 1
    return 0


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal sum a + b.

    Non-commutative: trailing terms of ``a`` with exponent below the
    leading exponent of ``b`` are absorbed.
    """
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    lead = b.terms[0][0]
    keep = []
    for exp, coeff in a.terms:
        if compare(exp, lead) <= 0:
            break
        keep.append((exp, coeff))
    i = len(keep)
    if i < len(a.terms) and compare(a.terms[i][0], lead) == 0:
        merged = (lead, a.terms[i][1] + b.terms[0][1])
        return Ordinal(tuple(keep) + (merged,) + b.terms[1:])
    return Ordinal(tuple(keep) + b.terms)


def omega_pow(a: Ordinal) -> Ordinal:
    """The single-term power w^a; omega_pow(0) = 1."""
    return Ordinal(((a, 1),))


OMEGA = omega_pow(ONE)


def mul_nat(a: Ordinal, m: int) -> Ordinal:
    """a * m by iterated addition; m = 0 yields 0."""
    if m < 0:
        raise ValueError("multiplier must be >= 0")
    out = ZERO
    for _ in range(m):
        out = add(out, a)
    return out


def pred(a: Ordinal) -> Ordinal:
    """The predecessor of a successor ordinal."""
    if not a.is_successor():
        raise ValueError("not a successor")
    exp, coeff = a.terms[-1]
    if coeff > 1:
        return Ordinal(a.terms[:-1] + ((exp, coeff - 1),))
    return Ordinal(a.terms[:-1])


def fund_seq(lam: Ordinal, m: int) -> Ordinal:
    """The m-th fundamental-sequence element lam[m] of a limit ordinal.

    A last term with coefficient > 1 peels exactly one copy first; a last
    term w^(g+1) becomes w^g*m; a last term w^mu with mu a limit becomes
    w^(mu[m]).  Always fund_seq(lam, m) < lam.
    """
    if m < 1:
        raise ValueError("index must be >= 1")
    if not lam.is_limit():
        raise ValueError("not a limit")
    front = lam.terms[:-1]
    exp, coeff = lam.terms[-1]
    if coeff > 1:
        front = front + ((exp, coeff - 1),)
    if exp.is_successor():
        elem = ((pred(exp), m),)
    else:
        elem = ((fund_seq(exp, m), 1),)
    return Ordinal(front + elem)


def tower_omega(c: int, base: Ordinal = OMEGA) -> Ordinal:
    """Height-c power tower over base: tower_omega(0, b) = b, then w^(...)."""
    if c < 0:
        raise ValueError("height must be >= 0")
    out = base
    for _ in range(c):
        out = omega_pow(out)
    return out


@lru_cache(maxsize=None)
def ord_size(a: Ordinal) -> int:
    """Length of the canonical program denoting a.

    A finite term contributes one symbol per unit; a term w^e (e != 0)
    contributes one loop plus the size of e, per coefficient.
    """
    return sum(c * (1 if e.is_zero() else ord_size(e) + 1) for e, c in a.terms)


# -- text form ------------------------------------------------------------
#
# ord    := "0" | term ("+" term)*
# term   := factor ("*" nat)?
# factor := nat | "w" | "w^" atom
# atom   := nat | "w" | "(" ord ")"
#
# Whitespace is insignificant.  The printer emits terms in decreasing
# order; the parser accepts any order and normalizes by ordinal addition.


class OrdinalParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class _OrdScanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> None:
        if self.peek() != ch:
            raise OrdinalParseError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def nat(self) -> int:
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise OrdinalParseError("expected a number", start)
        return int(self.text[start:self.pos])


def parse_ordinal(text: str) -> Ordinal:
    """Parse the ordinal grammar above; raises OrdinalParseError."""
    sc = _OrdScanner(text)
    value = _parse_sum(sc)
    if sc.peek():
        raise OrdinalParseError(f"unexpected {sc.peek()!r}", sc.pos)
    return value


def _parse_sum(sc: _OrdScanner) -> Ordinal:
    out = _parse_term(sc)
    while sc.peek() == "+":
        sc.take("+")
        out = add(out, _parse_term(sc))
    return out


def _parse_term(sc: _OrdScanner) -> Ordinal:
    factor = _parse_factor(sc)
    if sc.peek() == "*":
        sc.take("*")
        return mul_nat(factor, sc.nat())
    return factor


def _parse_factor(sc: _OrdScanner) -> Ordinal:
    ch = sc.peek()
    if ch.isdigit():
        return from_int(sc.nat())
    if ch == "w":
        sc.take("w")
        if sc.peek() == "^":
            sc.take("^")
            return omega_pow(_parse_atom(sc))
        return OMEGA
    raise OrdinalParseError(f"expected a term, got {ch!r}" if ch else "unexpected end of input", sc.pos)


def _parse_atom(sc: _OrdScanner) -> Ordinal:
    ch = sc.peek()
    if ch.isdigit():
        return from_int(sc.nat())
    if ch == "w":
        sc.take("w")
        return OMEGA
    if ch == "(":
        sc.take("(")
        out = _parse_sum(sc)
        sc.take(")")
        return out
    raise OrdinalParseError(f"expected an exponent, got {ch!r}" if ch else "unexpected end of input", sc.pos)


def render_ordinal(a: Ordinal) -> str:
    """Print a in the grammar above, terms in decreasing order."""
    if a.is_zero():
        return "0"
    parts = []
    for exp, coeff in a.terms:
        if exp.is_zero():
            parts.append(str(coeff))
            continue
        if exp == ONE:
            factor = "w"
        elif exp.is_finite():
            factor = f"w^{to_int(exp)}"
        elif exp == OMEGA:
            factor = "w^w"
        else:
            factor = f"w^({render_ordinal(exp)})"
        parts.append(factor if coeff == 1 else f"{factor}*{coeff}")
    return "+".join(parts)
