"""Placement of programs in the time hierarchy by their ordinal.

Each infinite ordinal is rounded up to the least milestone across five
families: polynomial powers w^c, towers of omega, w^(w+c), w^(w*(c+1)+d)
and general single powers w^b with b >= w^2.  Ties between families at
the same milestone resolve to the earlier family.  Only the polynomial
family is an exact class equality; the others hold up to a small shift
of the argument, reported through the sandwich bound expressions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .analysis import W_W, grz_bounds, render_bound
from .language import Program, depth, is_safe, ordinal_of, render
from .ordinal import (
    OMEGA,
    ONE,
    Ordinal,
    add,
    compare,
    from_int,
    mul_nat,
    omega_pow,
    render_ordinal,
    to_int,
)

__all__ = ["ClassReport", "ProgramReport", "classify", "classify_program"]

FAMILY_ORDER = ("constant", "polytime", "superexponential", "grzegorczyk",
                "two-nested", "large")


@dataclass(frozen=True)
class ClassReport:
    ordinal: Ordinal
    milestone: Ordinal
    family: str
    label: str
    params: dict
    sandwich_lower: str
    sandwich_upper: str
    exact: bool

    def to_dict(self) -> dict:
        return {
            "ordinal": render_ordinal(self.ordinal),
            "milestone": render_ordinal(self.milestone),
            "family": self.family,
            "label": self.label,
            "params": self.params,
            "sandwichLower": self.sandwich_lower,
            "sandwichUpper": self.sandwich_upper,
            "exact": self.exact,
        }


@dataclass(frozen=True)
class ProgramReport:
    program: str
    depth: int
    safe: bool
    report: ClassReport

    def to_dict(self) -> dict:
        out = self.report.to_dict()
        out.update({"program": self.program, "depth": self.depth, "safe": self.safe})
        return out


def _least_power_exponent(alpha: Ordinal) -> Ordinal:
    """The least e with w^e >= alpha, for alpha >= 1."""
    lead = alpha.leading_exponent()
    if alpha == omega_pow(lead):
        return lead
    return add(lead, ONE)


def _candidates(alpha: Ordinal):
    """(milestone, family rank, family, params) candidates for alpha >= w."""
    out = []
    e_star = _least_power_exponent(alpha)
    omega_sq = omega_pow(from_int(2))
    # polytime: w^c for finite c >= 1
    if compare(alpha, W_W) < 0:
        c = to_int(e_star)
        out.append((omega_pow(e_star), 1, "polytime", {"c": c}))
    # superexponential: w^w * c, the height-c tower milestones
    if compare(alpha, omega_pow(add(OMEGA, ONE))) < 0:
        if compare(alpha, W_W) <= 0:
            height = 1
        else:
            lead_coeff = alpha.terms[0][1]
            exact = len(alpha.terms) == 1 and alpha.terms[0][0] == OMEGA
            height = lead_coeff if exact else lead_coeff + 1
        out.append((mul_nat(W_W, height), 2, "superexponential", {"c": height}))
    # w^(w+c), c >= 1
    if compare(e_star, mul_nat(OMEGA, 2)) < 0:
        c = 1
        if compare(e_star, add(OMEGA, ONE)) > 0:
            c = to_int(Ordinal(e_star.terms[1:]))  # the finite part of w + c
        out.append((omega_pow(add(OMEGA, from_int(c))), 3, "grzegorczyk", {"c": c}))
    # w^(w*(c+1)+d), c >= 1, d >= 0; least such exponent is w*2
    if compare(e_star, omega_sq) < 0:
        k = d = 0
        for exp, coeff in e_star.terms:
            if exp == ONE:
                k = coeff
            elif exp.is_zero():
                d = coeff
        if k < 2:
            c, d = 1, 0
        else:
            c = k - 1
        milestone = omega_pow(add(mul_nat(OMEGA, c + 1), from_int(d)))
        out.append((milestone, 4, "two-nested", {"c": c, "d": d}))
    # general single power, exponent at least w^2
    beta = e_star if compare(e_star, omega_sq) >= 0 else omega_sq
    out.append((omega_pow(beta), 5, "large", {"beta": render_ordinal(beta)}))
    return out


def classify(alpha: Ordinal) -> ClassReport:
    """Report the minimal hierarchy milestone at or above alpha."""
    if alpha.is_finite():
        m = to_int(alpha)
        return ClassReport(
            ordinal=alpha,
            milestone=alpha,
            family="constant",
            label=f"constant time (acyclic, adds {m})",
            params={"m": m},
            sandwich_lower=f"n+{m}",
            sandwich_upper=f"n+{m}",
            exact=False,
        )
    candidates = _candidates(alpha)
    milestone, _, family, params = min(
        candidates, key=lambda c: (c[0], c[1]))
    if family == "polytime":
        c = params["c"]
        return ClassReport(alpha, milestone, family, f"TIMEF(n^{c})", params,
                           f"n^{c}", f"n^{c}", exact=True)
    lower, upper = grz_bounds(milestone)
    if family == "superexponential":
        label = f"~TIMEF(n_{params['c']})"
    elif family == "grzegorczyk":
        label = f"~TIMEF(F_{params['c'] + 2}(n))"
    elif family == "two-nested":
        idx = render_ordinal(add(mul_nat(OMEGA, params["c"]), from_int(params["d"])))
        label = f"~TIMEF(F_({idx})(n))"
    else:
        label = f"~TIMEF(F_({params['beta']})(n))"
    return ClassReport(alpha, milestone, family, label, params,
                       render_bound(lower), render_bound(upper), exact=False)


def classify_program(program: Program) -> ProgramReport:
    """Classify by the program's ordinal; also report depth and safety."""
    report = classify(ordinal_of(program))
    return ProgramReport(render(program), depth(program), is_safe(program), report)
