"""Decision procedures by exhaustive team enumeration.

Locality means only the variables of the inputs matter, and downward
closure means validity reduces to the single full team.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .formula import Formula, render, vars_of
from .semantics import denotation_mask
from .team import TEAM_GUARD, IndexSet, Valuation, index_set, valuations

__all__ = ["is_valid", "is_satisfiable", "entails", "equivalent", "truth_table", "TruthTable"]


def _full(n: int) -> int:
    return (1 << (1 << n)) - 1


def is_valid(f: Formula, guard: int = TEAM_GUARD) -> bool:
    dom = index_set(vars_of(f))
    full_team = (1 << (1 << len(dom))) - 1
    return bool(denotation_mask(f, dom, guard) >> full_team & 1)


def is_satisfiable(f: Formula, guard: int = TEAM_GUARD) -> bool:
    """True iff some nonempty team satisfies ``f`` (singletons suffice)."""
    dom = index_set(vars_of(f))
    table = denotation_mask(f, dom, guard)
    return any(table >> (1 << c) & 1 for c in range(1 << len(dom)))


def entails(premises: Iterable[Formula], f: Formula, guard: int = TEAM_GUARD) -> bool:
    premises = list(premises)
    dom = index_set(set(vars_of(f)).union(*(vars_of(p) for p in premises)))
    both = (1 << (1 << (1 << len(dom)))) - 1  # one bit per team on dom
    for p in premises:
        both &= denotation_mask(p, dom, guard)
    return both & ~denotation_mask(f, dom, guard) == 0


def equivalent(f: Formula, g: Formula, guard: int = TEAM_GUARD) -> bool:
    dom = index_set(vars_of(f) | vars_of(g))
    return denotation_mask(f, dom, guard) == denotation_mask(g, dom, guard)


@dataclass(frozen=True)
class TruthTable:
    """Membership of each valuation in each team, plus the formula's value per team."""

    formula: Formula
    domain: IndexSet
    rows: tuple[Valuation, ...]
    values: tuple[int, ...]

    @property
    def columns(self) -> range:
        return range(len(self.values))

    def member(self, row: int, team: int) -> int:
        return team >> row & 1

    def to_ascii(self) -> str:
        n = len(self.domain)
        var_cells = [f"p{i}" for i in self.domain]
        var_width = [len(c) for c in var_cells]
        teams = [f"X{t}" for t in self.columns]
        width = [len(t) for t in teams]
        lines = []
        left = (" ".join(var_cells) if n else "(no vars)").ljust(len("value"))
        lines.append(f"{left} | " + " ".join(teams))
        lines.append("-" * len(lines[0]))
        for r, v in enumerate(self.rows):
            cells = " ".join(str(b).rjust(w) for b, w in zip(v.bits, var_width)) if n else "".ljust(len(left))
            cells = cells.ljust(len(left))
            lines.append(f"{cells} | " + " ".join(str(self.member(r, t)).rjust(w) for t, w in zip(self.columns, width)))
        lines.append("-" * len(lines[0]))
        label = render(self.formula)
        lines.append(f"{'value'.ljust(len(left))} | " + " ".join(str(x).rjust(w) for x, w in zip(self.values, width)))
        lines.append(f"formula: {label}")
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        lines = [f"# formula: {render(self.formula)}",
                 "# valuation legend (bit r of member_bitmask is valuation v<r>):"]
        for r, v in enumerate(self.rows):
            assignment = ",".join(f"p{i}={b}" for i, b in zip(self.domain, v.bits))
            lines.append(f"# v{r}: {assignment}")
        lines.append("team_id,member_bitmask,value")
        for t, value in zip(self.columns, self.values):
            lines.append(f"{t},{t:0{len(self.rows)}b},{value}")
        return "\n".join(lines) + "\n"


def truth_table(f: Formula, domain: Iterable[int] | None = None, guard: int = TEAM_GUARD) -> TruthTable:
    dom = index_set(vars_of(f) if domain is None else domain)
    table = denotation_mask(f, dom, guard)
    values = tuple(table >> t & 1 for t in range(1 << (1 << len(dom))))
    return TruthTable(f, dom, tuple(valuations(dom)), values)
