"""Team semantics: evaluation, denotations, flatness and support.

Two evaluators are provided.  ``fast`` compiles the formula into a small
program and lets the kernel compute, bottom-up, which subteams of the
(restricted) team satisfy each node.  ``oracle`` follows the satisfaction
clauses literally on sets of valuations, enumerating every cover for the
tensor and every subteam for implication.  It shares no code with the fast
path and exists to cross-check it.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from . import _kernel
from .errors import DomainError, EmptyTeam, SizeGuard
from .formula import And, Bot, Dep, Formula, IDisj, Impl, NegVar, Tensor, Var, vars_of
from .team import TEAM_GUARD, Team, TeamFamily, bit_of, index_set, restrict

__all__ = ["eval_formula", "evaluate", "denotation", "denotation_mask", "is_flat",
           "support", "support_set", "probability", "MAX_MEMBERS"]

#: largest number of distinct members (after restriction) the fast path accepts
MAX_MEMBERS = 16

_OPCODE = {And: 3, Tensor: 4, IDisj: 5, Impl: 6}


def compile_program(f: Formula, domain: tuple[int, ...], codes: list[int]):
    """Lower ``f`` to kernel arrays for the team whose members have ``codes``."""
    n = len(domain)
    k = len(codes)
    pos = {v: p for p, v in enumerate(domain)}
    ops: list[int] = []
    a0: list[int] = []
    a1: list[int] = []
    lits: list[int] = []
    compat: list[int] = []
    seen: dict[Formula, int] = {}

    def value(code: int, var: int) -> int:
        return bit_of(code, n, pos[var])

    def emit(op, x=0, y=0, lit=0, row=None):
        ops.append(op)
        a0.append(x)
        a1.append(y)
        lits.append(lit)
        compat.extend(row if row is not None else [0] * k)
        return len(ops) - 1

    def go(g: Formula) -> int:
        if g in seen:
            return seen[g]
        t = type(g)
        if t is Var or t is NegVar:
            want = 1 if t is Var else 0
            mask = 0
            for m, c in enumerate(codes):
                if value(c, g.index) == want:
                    mask |= 1 << m
            idx = emit(0, lit=mask)
        elif t is Bot:
            idx = emit(1)
        elif t is Dep:
            row = []
            for c in codes:
                ok = 0
                for m2, c2 in enumerate(codes):
                    if (value(c, g.target) == value(c2, g.target)
                            or any(value(c, a) != value(c2, a) for a in g.args)):
                        ok |= 1 << m2
                row.append(ok)
            idx = emit(2, row=row)
        else:
            x = go(g.left)
            y = go(g.right)
            idx = emit(_OPCODE[t], x, y)
        seen[g] = idx
        return idx

    go(f)
    return ops, a0, a1, lits, compat


def _run(f: Formula, domain, codes, backend=None) -> int:
    k = len(codes)
    if k > MAX_MEMBERS:
        raise SizeGuard(f"team has {k} distinct members on the formula's variables; the bound is {MAX_MEMBERS}")
    program = compile_program(f, domain, codes)
    run = backend or _kernel.denote_program
    return run(*program, k)


def _check_domain(f: Formula, team: Team) -> None:
    missing = vars_of(f) - set(team.domain)
    if missing:
        raise DomainError(f"variables {sorted(missing)} are not in the team's domain {list(team.domain)}")


def eval_formula(f: Formula, team: Team, mode: str = "fast") -> bool:
    """Does ``team`` satisfy ``f``?  ``mode`` is ``"fast"`` or ``"oracle"``."""
    _check_domain(f, team)
    if mode == "oracle":
        return _oracle_eval(f, team)
    if mode != "fast":
        raise ValueError(f"unknown evaluation mode {mode!r}")
    local = restrict(team, vars_of(f))
    codes = local.codes()
    table = _run(f, local.domain, codes)
    return bool(table >> ((1 << len(codes)) - 1) & 1)


evaluate = eval_formula


@lru_cache(maxsize=65536)
def _denotation_mask(f: Formula, domain: tuple[int, ...]) -> int:
    return _run(f, domain, list(range(1 << len(domain))))


def denotation_mask(f: Formula, domain: Iterable[int], guard: int = TEAM_GUARD) -> int:
    """Bitset over team masks on ``domain``: bit ``X`` set iff team ``X`` satisfies ``f``."""
    dom = index_set(domain)
    missing = vars_of(f) - set(dom)
    if missing:
        raise DomainError(f"variables {sorted(missing)} are not in {list(dom)}")
    if len(dom) > guard:
        raise SizeGuard(f"{len(dom)} variables exceed the enumeration bound {guard}")
    return _denotation_mask(f, dom)


def denotation(f: Formula, domain: Iterable[int], guard: int = TEAM_GUARD) -> TeamFamily:
    dom = index_set(domain)
    table = denotation_mask(f, dom, guard)
    masks = []
    x = 0
    while table:
        if table & 1:
            masks.append(x)
        table >>= 1
        x += 1
    return TeamFamily(dom, frozenset(masks))


def _subset_indicator(mask: int, k: int) -> int:
    t = 1
    for i in range(k):
        if mask >> i & 1:
            t |= t << (1 << i)
    return t


def is_flat(f: Formula, guard: int = TEAM_GUARD) -> bool:
    """Exhaustively decide whether truth on a team is truth on each member."""
    dom = index_set(vars_of(f))
    table = denotation_mask(f, dom, guard)
    k = 1 << len(dom)
    singles = 0
    for c in range(k):
        if table >> (1 << c) & 1:
            singles |= 1 << c
    return table == _subset_indicator(singles, k)


def support_set(f: Formula, team: Team) -> Team:
    """The members whose singleton team satisfies ``f``."""
    _check_domain(f, team)
    mask = 0
    for c in team.codes():
        if eval_formula(f, Team(team.domain, 1 << c)):
            mask |= 1 << c
    return Team(team.domain, mask)


def probability(f: Formula, team: Team) -> Fraction:
    if not team.mask:
        raise EmptyTeam("probability is undefined on the empty team")
    return Fraction(len(support_set(f, team)), len(team))


def support(f: Formula, team: Team) -> tuple[Team, Fraction]:
    """Support set and its share of the team (raises EmptyTeam on the empty team)."""
    return support_set(f, team), probability(f, team)


# ---------------------------------------------------------------- oracle

def _subsets(items: frozenset) -> list[frozenset]:
    items = sorted(items)
    return [frozenset(c) for r in range(len(items) + 1) for c in combinations(items, r)]


def _oracle_eval(f: Formula, team: Team) -> bool:
    members = frozenset(v.bits for v in team.members)
    where = {v: p for p, v in enumerate(team.domain)}
    memo: dict = {}

    def sat(g: Formula, X: frozenset) -> bool:
        key = (g, X)
        if key in memo:
            return memo[key]
        if isinstance(g, Var):
            out = all(s[where[g.index]] == 1 for s in X)
        elif isinstance(g, NegVar):
            out = all(s[where[g.index]] == 0 for s in X)
        elif isinstance(g, Bot):
            out = not X
        elif isinstance(g, Dep):
            out = all(
                s[where[g.target]] == t[where[g.target]]
                for s in X for t in X
                if all(s[where[a]] == t[where[a]] for a in g.args)
            )
        elif isinstance(g, And):
            out = sat(g.left, X) and sat(g.right, X)
        elif isinstance(g, IDisj):
            out = sat(g.left, X) or sat(g.right, X)
        elif isinstance(g, Tensor):
            out = False
            for Y in _subsets(X):
                rest = X - Y
                # every Z with Y | Z = X is rest plus some part of Y
                if sat(g.left, Y) and any(sat(g.right, rest | W) for W in _subsets(Y)):
                    out = True
                    break
        elif isinstance(g, Impl):
            out = all(sat(g.right, Y) for Y in _subsets(X) if sat(g.left, Y))
        else:  # pragma: no cover
            raise TypeError(g)
        memo[key] = out
        return out

    return sat(f, members)
