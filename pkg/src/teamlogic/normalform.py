"""Normal forms and expressive-completeness synthesis.

``defining_formula`` builds the tensor-style and double-negation-style
formulas true exactly on the subteams of a team; ``alpha_card`` bounds team
size; ``xi`` says "this team is not a subteam".  ``synthesize`` turns any
nonempty downward-closed family into a formula of the requested style.

Ordering: inside a defining formula the members of the team are listed
from the all-true valuation downwards (descending code), and conjunctions
run over ascending variable indices.  Families are walked in canonical
team order.
"""
from __future__ import annotations

import enum
from typing import Iterable

from .errors import BadDomain, EmptyY, NotDownwardClosed
from .formula import BOT, Dep, Formula, Impl, Tensor, Var, conj, disj, literal, tensor, vars_of
from .semantics import denotation
from .team import TEAM_GUARD, Team, TeamFamily, index_set, is_downward_closed

__all__ = ["NormalFormStyle", "member_conjunction", "defining_formula", "alpha_card",
           "xi", "synthesize", "normalize"]


class NormalFormStyle(enum.Enum):
    TENSOR_DNF = "tensor-dnf"
    NEGNEG_DNF = "negneg-dnf"
    DEP_CNF = "dep-cnf"

    @classmethod
    def from_name(cls, name: "str | NormalFormStyle") -> "NormalFormStyle":
        if isinstance(name, NormalFormStyle):
            return name
        key = name.strip().lower().replace("_", "-")
        for member in cls:
            if member.value == key or member.name.lower().replace("_", "-") == key:
                return member
        raise ValueError(f"unknown normal-form style {name!r}")


def member_conjunction(code: int, domain: tuple[int, ...], negation: str = "literal") -> Formula:
    """Conjunction of the literals fixing one valuation.

    ``negation="literal"`` writes negative literals as ``~p``;
    ``negation="implication"`` writes them as ``p -> bot`` (for fragments
    without negated literals).
    """
    if not domain:
        raise BadDomain("a valuation on no variables has no literal conjunction")
    n = len(domain)
    lits = []
    for pos, var in enumerate(domain):
        bit = (code >> (n - 1 - pos)) & 1
        if bit or negation == "literal":
            lits.append(literal(var, bit))
        else:
            lits.append(Impl(Var(var), BOT))
    return conj(lits)


def display_codes(team: Team) -> list[int]:
    """Member codes in the order used inside defining formulas."""
    return sorted(team.codes(), reverse=True)


def defining_formula(team: Team, domain: Iterable[int] | None = None, style: str = "theta") -> Formula:
    dom = team.domain if domain is None else index_set(domain)
    if dom != team.domain:
        raise BadDomain("team domain differs from the requested index set")
    if not team.mask:
        return BOT
    codes = display_codes(team)
    if style == "theta":
        return tensor(member_conjunction(c, dom) for c in codes)
    if style == "psi":
        if not dom:
            top = Impl(BOT, BOT)
            return Impl(Impl(top, BOT), BOT)
        body = disj(member_conjunction(c, dom, "implication") for c in codes)
        return Impl(Impl(body, BOT), BOT)
    raise ValueError(f"unknown defining-formula style {style!r}")


def alpha_card(m: int, domain: Iterable[int]) -> Formula:
    """Formula true exactly on teams with at most ``m`` members."""
    dom = index_set(domain)
    if m < 0:
        raise ValueError("cardinality bound must be a natural number")
    if m == 0:
        return BOT
    if not dom:
        raise BadDomain("no formula of the dependence fragment is valid over no variables")
    one = conj(Dep((), i) for i in dom)
    return tensor([one] * m)


def xi(team: Team, domain: Iterable[int] | None = None) -> Formula:
    """Formula true exactly on the teams that do not include ``team``."""
    dom = team.domain if domain is None else index_set(domain)
    if dom != team.domain:
        raise BadDomain("team domain differs from the requested index set")
    if not team.mask:
        raise EmptyY("the excluded team must be nonempty")
    return Tensor(alpha_card(len(team) - 1, dom), defining_formula(team.complement(), dom))


def synthesize(family: TeamFamily, domain: Iterable[int] | None = None,
               style: "str | NormalFormStyle" = NormalFormStyle.TENSOR_DNF,
               maximal: bool = False) -> Formula:
    """A formula of the given style whose denotation on the domain is ``family``."""
    style = NormalFormStyle.from_name(style)
    dom = family.domain if domain is None else index_set(domain)
    if dom != family.domain:
        raise BadDomain("family domain differs from the requested index set")
    if not is_downward_closed(family):
        raise NotDownwardClosed("the family is empty or not closed under subteams")
    if family.masks == {0}:
        return BOT
    if style is NormalFormStyle.DEP_CNF:
        missing = [Team(dom, m) for m in range(1 << (1 << len(dom))) if m not in family.masks]
        if not missing:
            return alpha_card(1 << len(dom), dom)
        return conj(xi(y, dom) for y in missing)
    teams = family.maximal() if maximal else family.teams
    kind = "theta" if style is NormalFormStyle.TENSOR_DNF else "psi"
    return disj(defining_formula(t, dom, kind) for t in teams)


def normalize(f: Formula, style: "str | NormalFormStyle" = NormalFormStyle.TENSOR_DNF,
              maximal: bool = False, guard: int = TEAM_GUARD) -> Formula:
    dom = index_set(vars_of(f))
    family = denotation(f, dom, guard)
    if not dom and len(family) == 2:
        # valid and variable-free: any valid formula will do, so borrow p1
        dom = (1,)
        family = TeamFamily(dom, frozenset(range(4)))
    return synthesize(family, dom, style, maximal)
