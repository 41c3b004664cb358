"""A deliberately naive team-semantics evaluator used as a cross-check.

Teams are frozensets of valuation tuples (one bit per variable of a fixed
domain).  Nothing here shares code with the package beyond the AST classes.
"""
from itertools import chain, combinations, product

from teamlogic.formula import And, Bot, Dep, IDisj, Impl, NegVar, Tensor, Var


def all_rows(n):
    return list(product((0, 1), repeat=n))


def powerset(items):
    items = list(items)
    return [frozenset(c) for c in chain.from_iterable(combinations(items, k) for k in range(len(items) + 1))]


def holds(f, team, dom):
    """``team`` is a frozenset of tuples aligned with ``dom`` (a tuple of indices)."""
    pos = {v: k for k, v in enumerate(dom)}
    if isinstance(f, Var):
        return all(s[pos[f.index]] == 1 for s in team)
    if isinstance(f, NegVar):
        return all(s[pos[f.index]] == 0 for s in team)
    if isinstance(f, Bot):
        return not team
    if isinstance(f, Dep):
        for s in team:
            for t in team:
                if all(s[pos[a]] == t[pos[a]] for a in f.args) and s[pos[f.target]] != t[pos[f.target]]:
                    return False
        return True
    if isinstance(f, And):
        return holds(f.left, team, dom) and holds(f.right, team, dom)
    if isinstance(f, IDisj):
        return holds(f.left, team, dom) or holds(f.right, team, dom)
    if isinstance(f, Tensor):
        # every cover, overlapping parts included
        for y in powerset(team):
            for z in powerset(team):
                if y | z == team and holds(f.left, y, dom) and holds(f.right, z, dom):
                    return True
        return False
    if isinstance(f, Impl):
        return all(not holds(f.left, y, dom) or holds(f.right, y, dom) for y in powerset(team))
    raise TypeError(f)


def classical_value(f, s, dom):
    """Truth at a single valuation, read the usual way.

    Dependence atoms are true at one valuation; both disjunctions are ``or``.
    """
    pos = {v: k for k, v in enumerate(dom)}
    if isinstance(f, Var):
        return s[pos[f.index]] == 1
    if isinstance(f, NegVar):
        return s[pos[f.index]] == 0
    if isinstance(f, Bot):
        return False
    if isinstance(f, And):
        return classical_value(f.left, s, dom) and classical_value(f.right, s, dom)
    if isinstance(f, Dep):
        return True
    if isinstance(f, (Tensor, IDisj)):
        return classical_value(f.left, s, dom) or classical_value(f.right, s, dom)
    if isinstance(f, Impl):
        return not classical_value(f.left, s, dom) or classical_value(f.right, s, dom)
    raise TypeError(f)


def denotation(f, dom):
    """Set of satisfying teams, each a frozenset of row tuples."""
    return {t for t in powerset(all_rows(len(dom))) if holds(f, t, dom)}


def entails(premises, goal, dom):
    for t in powerset(all_rows(len(dom))):
        if all(holds(p, t, dom) for p in premises) and not holds(goal, t, dom):
            return False
    return True


def to_mask(team):
    """Package bitmask of a frozenset of rows (first variable is the high bit)."""
    mask = 0
    for s in team:
        code = 0
        for b in s:
            code = code << 1 | b
        mask |= 1 << code
    return mask


class TeamAlgebra:
    """Denotations as sets of row-frozensets, built bottom-up by cover enumeration.

    Results are memoized per connective and operand denotations, which keeps
    exhaustive sweeps over small domains cheap while staying naive per step.
    """

    def __init__(self, dom):
        self.dom = tuple(dom)
        self.teams = powerset(all_rows(len(self.dom)))
        self._subs = {x: powerset(x) for x in self.teams}
        self._atoms = {}
        self._ops = {}
        self._nodes = {}

    def of(self, f):
        hit = self._nodes.get(f)
        if hit is not None:
            return hit
        if isinstance(f, (Var, NegVar, Bot, Dep)):
            den = frozenset(x for x in self.teams if holds(f, x, self.dom))
        else:
            den = self.combine(type(f), self.of(f.left), self.of(f.right))
        self._nodes[f] = den
        return den

    def combine(self, kind, left, right):
        key = (kind, left, right)
        hit = self._ops.get(key)
        if hit is not None:
            return hit
        if kind is And:
            den = left & right
        elif kind is IDisj:
            den = left | right
        elif kind is Tensor:
            den = frozenset(x for x in self.teams
                            if any(y | z == x for y in self._subs[x] if y in left
                                   for z in self._subs[x] if z in right))
        elif kind is Impl:
            den = frozenset(x for x in self.teams
                            if all(y in right for y in self._subs[x] if y in left))
        else:
            raise TypeError(kind)
        self._ops[key] = den
        return den

    def mask(self, f):
        """Bitset over team masks, in the package's layout."""
        out = 0
        for x in self.of(f):
            out |= 1 << to_mask(x)
        return out
