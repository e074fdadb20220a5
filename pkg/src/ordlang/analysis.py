"""Growth and cost analysis over program ordinals.

``size_fn`` computes the exact length added by the canonical program of a
given ordinal, by recurrences that mirror the rewrite rules: a loop over
exponent g+1 unfolds into l = n+1 copies of the g-atom, composed
additively while the remainder stays below w^w (postponement keeps the
datum fixed) and sequentially above it (applications grow the datum, so
later parts see a longer input).  ``runtime_bound`` composes the
published step-count recurrences into an upper bound on the rewriting
cost counter.  The fast-growing reference scale and the elementary-level
tower bounds live here too.

All arithmetic is exact big-integer arithmetic guarded by a magnitude
cap (default 1,000,000 bits, env ORDLANG_CAP_BITS); exceeding it raises
CapExceeded carrying a certified lower bound on the result's bit length.
"""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass

from .ordinal import (
    OMEGA,
    ONE,
    Ordinal,
    add,
    compare,
    from_int,
    fund_seq,
    mul_nat,
    omega_pow,
    ord_size,
    pred,
    render_ordinal,
    to_int,
)

__all__ = [
    "DEFAULT_CAP_BITS",
    "CapExceeded",
    "BoundedValue",
    "resolve_cap",
    "size_fn",
    "bounded_size_fn",
    "runtime_bound",
    "wainer",
    "tower_num",
    "elem_bound",
    "WainerBound",
    "TowerBound",
    "render_bound",
    "grz_bounds",
]

DEFAULT_CAP_BITS = 1_000_000

W_W = omega_pow(OMEGA)  # the threshold between additive and sequential composition


def format_nat(value: int) -> str:
    """Decimal form of an arbitrarily large natural.

    Lifts the interpreter's int-to-str conversion limit just long enough,
    since exact values near the cap run to hundreds of thousands of digits.
    """
    needed = value.bit_length() // 3 + 10
    old = sys.get_int_max_str_digits()
    if needed <= old:
        return str(value)
    sys.set_int_max_str_digits(needed)
    try:
        return str(value)
    finally:
        sys.set_int_max_str_digits(old)


class CapExceeded(ArithmeticError):
    """A value's bit length passed the cap; carries a certified lower bound."""

    def __init__(self, bits_lower_bound: int):
        # the bound itself can be astronomical; keep the message printable
        if bits_lower_bound.bit_length() > 64:
            shown = f"about 2^{bits_lower_bound.bit_length() - 1}"
        else:
            shown = str(bits_lower_bound)
        super().__init__(f"magnitude cap exceeded (result has >= {shown} bits)")
        self.bits_lower_bound = bits_lower_bound


@dataclass(frozen=True)
class BoundedValue:
    """Either an exact big integer or an overflow with a bit-length floor."""

    value: int | None
    overflow_bits: int | None

    @classmethod
    def exact(cls, value: int) -> "BoundedValue":
        return cls(value, None)

    @classmethod
    def overflow(cls, bits: int) -> "BoundedValue":
        return cls(None, bits)

    def is_exact(self) -> bool:
        return self.value is not None

    def __str__(self) -> str:
        if self.value is not None:
            return format_nat(self.value)
        return f"overflow(>= {format_nat(self.overflow_bits)} bits)"


def resolve_cap(cap_bits: int | None) -> int:
    if cap_bits is not None:
        return cap_bits
    env = os.environ.get("ORDLANG_CAP_BITS")
    return int(env) if env else DEFAULT_CAP_BITS


def _checked(value: int, cap: int) -> int:
    if value.bit_length() > cap:
        raise CapExceeded(value.bit_length())
    return value


def _guarded_pow(base: int, exp: int, cap: int) -> int:
    """base ** exp with an early certified overflow check."""
    if base <= 1 or exp == 0:
        return 1 if exp == 0 else base
    floor_bits = (base.bit_length() - 1) * exp + 1  # base >= 2^(bits-1)
    if floor_bits > cap:
        raise CapExceeded(floor_bits)
    return _checked(base ** exp, cap)


# -- size ------------------------------------------------------------------

def size_fn(alpha: Ordinal, n: int, cap_bits: int | None = None) -> int:
    """Length added by the canonical program of alpha on input length n.

    Computed compositionally: each atom is charged its standalone size,
    and atoms after a remainder at or above w^w see the grown length.
    This matches the engine exactly on every program whose atoms in front
    of an unsafe remainder are plain loops or symbols (in particular
    everywhere below w^w, on single loop atoms, and on w^w + w*k + m);
    beyond that the flat rules let a nested loop's early applications
    feed its own remaining copies, which the compositional charge does
    not model (and which no engine can execute at reachable sizes).
    """
    if n < 2:
        raise ValueError("input length must be >= 2")
    cap = resolve_cap(cap_bits)
    atom_memo: dict = {}
    total_memo: dict = {}

    def atom(gamma: Ordinal, m: int) -> int:
        # length added by one atom w^gamma at datum length m
        if gamma.is_zero():
            return 1
        key = (gamma, m)
        hit = atom_memo.get(key)
        if hit is not None:
            return hit
        if gamma.is_finite():
            out = _guarded_pow(m + 1, to_int(gamma), cap)
        elif gamma.is_limit():
            out = atom(fund_seq(gamma, m + 1), m)
        else:
            # infinite successor: l copies of the predecessor atom, each
            # seeing the length grown by the ones before it
            g = pred(gamma)
            cur = m
            for _ in range(m + 1):
                cur = _checked(cur + atom(g, cur), cap)
            out = cur - m
        atom_memo[key] = out
        return out

    def total(al: Ordinal, m: int) -> int:
        if al.is_zero():
            return 0
        key = (al, m)
        hit = total_memo.get(key)
        if hit is not None:
            return hit
        if compare(al, W_W) < 0:
            # everything below w^w is additive at the same length
            l = m + 1
            out = sum(c * _guarded_pow(l, to_int(e), cap) for e, c in al.terms)
            out = _checked(out, cap)
        else:
            exp, coeff = al.terms[-1]
            rest_terms = al.terms[:-1] + (((exp, coeff - 1),) if coeff > 1 else ())
            rest = Ordinal(rest_terms)
            s = atom(exp, m)
            if rest.is_zero():
                out = s
            elif compare(rest, W_W) < 0:
                out = _checked(s + total(rest, m), cap)
            else:
                out = _checked(s + total(rest, m + s), cap)
        total_memo[key] = out
        return out

    return total(alpha, n)


def bounded_size_fn(alpha: Ordinal, n: int, cap_bits: int | None = None) -> BoundedValue:
    try:
        return BoundedValue.exact(size_fn(alpha, n, cap_bits))
    except CapExceeded as exc:
        return BoundedValue.overflow(exc.bits_lower_bound)


# -- runtime bound -----------------------------------------------------------

def runtime_bound(alpha: Ordinal, n: int, cap_bits: int | None = None) -> int:
    """Upper bound on the rewriting cost counter for the canonical program.

    Composed from the published recurrences: a finite tail of m symbols
    adds m; a loop atom of finite exponent c adds l^c + c^2*l; a loop
    atom of infinite exponent unfolds once for l*(its size - 1); parts
    after a remainder at or above w^w are charged at the grown length.
    Guaranteed (and tested) to dominate the engine's total cost.
    """
    if n < 2:
        raise ValueError("input length must be >= 2")
    cap = resolve_cap(cap_bits)
    memo: dict = {}

    def rb(al: Ordinal, m: int) -> int:
        if al.is_zero():
            return 0
        key = (al, m)
        hit = memo.get(key)
        if hit is not None:
            return hit
        l = m + 1
        exp, coeff = al.terms[-1]
        if exp.is_zero():
            rest = Ordinal(al.terms[:-1])
            if compare(rest, W_W) < 0:
                out = rb(rest, m) + coeff
            else:
                out = rb(rest, m + coeff) + coeff
        elif exp.is_finite():
            c = to_int(exp)
            rest = Ordinal(al.terms[:-1] + (((exp, coeff - 1),) if coeff > 1 else ()))
            s = _guarded_pow(l, c, cap)
            base = rb(rest, m) if compare(rest, W_W) < 0 else rb(rest, m + s)
            out = base + s + c * c * l
        else:
            # one unfold step on the atom w^exp
            atom = omega_pow(exp)
            rest = Ordinal(al.terms[:-1] + (((exp, coeff - 1),) if coeff > 1 else ()))
            stepped = add(rest, fund_seq(atom, l))
            out = rb(stepped, m) + l * (ord_size(atom) - 1)
        out = _checked(out, cap)
        memo[key] = out
        return out

    return rb(alpha, n)


# -- fast-growing reference scale --------------------------------------------

class _Overflow(Exception):
    def __init__(self, bits: int):
        self.bits = bits


def wainer(alpha: Ordinal, n: int, cap_bits: int | None = None) -> BoundedValue:
    """The fast-growing function F_alpha(n), exact below the cap.

    F_1(n) = 2n+1, F_(a+1)(n) iterates F_a for n+1 times starting at n,
    and a limit unfolds through its fundamental sequence at index n.
    """
    if alpha.is_zero():
        raise ValueError("index must be >= 1")
    if n < 1:
        raise ValueError("argument must be >= 1")
    cap = resolve_cap(cap_bits)

    def f(al: Ordinal, m: int) -> int:
        if al == ONE:
            return 2 * m + 1
        if al.is_successor():
            g = pred(al)
            cur = m
            for remaining in range(m + 1, 0, -1):
                # each iteration at least doubles, so the result has at
                # least remaining + bits(cur) - 1 bits
                if remaining + cur.bit_length() - 1 > cap:
                    raise _Overflow(remaining + cur.bit_length() - 1)
                cur = f(g, cur)
            return cur
        return f(fund_seq(al, m), m)

    try:
        value = f(alpha, n)
        if value.bit_length() > cap:
            return BoundedValue.overflow(value.bit_length())
        return BoundedValue.exact(value)
    except _Overflow as exc:
        return BoundedValue.overflow(exc.bits)


def tower_num(base: int, height: int, top: int, cap_bits: int | None = None) -> int:
    """Numeric power tower: height 0 is top, then base ** (...)."""
    if height < 0:
        raise ValueError("height must be >= 0")
    cap = resolve_cap(cap_bits)
    out = top
    for _ in range(height):
        out = _guarded_pow(base, out, cap)
    return out


def elem_bound(c: int, l: int, cap_bits: int | None = None) -> int:
    """The elementary-level majorant H_c(l).

    H_0 = l, H_1 = l^(1+l), H_2 = l^(2+l); above that a height-three
    tower of l capped by q, where q starts at 2+l and each further level
    replaces q by 1 + l^q.
    """
    if c < 0:
        raise ValueError("level must be >= 0")
    if l < 3:
        raise ValueError("l must be >= 3")
    cap = resolve_cap(cap_bits)
    if c == 0:
        return l
    if c == 1:
        return _guarded_pow(l, 1 + l, cap)
    if c == 2:
        return _guarded_pow(l, 2 + l, cap)
    q = 2 + l
    for _ in range(c - 3):
        q = 1 + _guarded_pow(l, q, cap)
    return tower_num(l, 3, q, cap)


# -- symbolic sandwich bounds --------------------------------------------

@dataclass(frozen=True)
class WainerBound:
    """F_index(n + offset) as a symbolic bound."""

    index: Ordinal
    offset: int


@dataclass(frozen=True)
class TowerBound:
    """(l + base_offset) tower of the given height, as a symbolic bound."""

    base_offset: int
    height: int


def render_bound(bound: WainerBound | TowerBound) -> str:
    if isinstance(bound, TowerBound):
        base = "l" if bound.base_offset == 0 else f"(l+{bound.base_offset})"
        return f"{base}_{bound.height}"
    idx = render_ordinal(bound.index)
    if not bound.index.is_finite():
        idx = f"({idx})"
    if bound.offset == 0:
        arg = "n"
    elif bound.offset > 0:
        arg = f"n+{bound.offset}"
    else:
        arg = f"n-{-bound.offset}"
    return f"F_{idx}({arg})"


def _superexp_multiple(alpha: Ordinal) -> int | None:
    """c when alpha == w^w * c (the height-c tower milestones), else None."""
    if len(alpha.terms) == 1 and alpha.terms[0][0] == OMEGA:
        return alpha.terms[0][1]
    return None


def _single_power_exponent(alpha: Ordinal) -> Ordinal | None:
    if len(alpha.terms) == 1 and alpha.terms[0][1] == 1 and not alpha.terms[0][0].is_zero():
        return alpha.terms[0][0]
    return None


def grz_bounds(alpha: Ordinal) -> tuple[WainerBound | TowerBound, WainerBound | TowerBound]:
    """Symbolic (lower, upper) sandwich for the size added at ordinal alpha.

    Multiples w^w*c (whose canonical programs stack c sequential
    length-powering loops) get numeric tower bounds of height c; single
    powers w^e get fast-growing bounds whose index and argument offsets
    depend on where e sits: w+c, w*(c+1)+d, or at and above w^2.
    """
    if compare(alpha, W_W) < 0:
        raise ValueError("use polynomial bound: ordinal is below w^w")
    height = _superexp_multiple(alpha)
    if height is not None:
        return TowerBound(0, height), TowerBound(2, height)
    exponent = _single_power_exponent(alpha)
    if exponent is None:
        raise ValueError(
            "no direct sandwich for this ordinal; classify() rounds up to a milestone")
    omega_sq = omega_pow(from_int(2))
    if compare(exponent, omega_sq) >= 0:
        return WainerBound(exponent, -1), WainerBound(exponent, 1)
    # exponent < w^2: write it as w*k + d with finite k >= 1, d >= 0
    k = d = 0
    for e, c in exponent.terms:
        if e == ONE:
            k = c
        elif e.is_zero():
            d = c
        else:
            raise ValueError("unreachable: exponent below w^2 has only w and unit terms")
    if k == 1:
        if d < 1:
            raise ValueError("unreachable: w^w is handled as a tower")
        return WainerBound(from_int(d + 2), 0), WainerBound(from_int(d + 2), 1)
    index = add(mul_nat(OMEGA, k - 1), from_int(d))
    return WainerBound(index, 0), WainerBound(index, 2)
