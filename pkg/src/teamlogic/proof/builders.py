"""Derivation-building blocks shared by the named library and the synthesizers.

Every constructor returns a :class:`Node` or :class:`Hyp`; nothing here checks
the result, that is left to :func:`check_nd`.  Hypothesis labels are derived
from the formula they name (``kind_<digest>``) so that one label never stands
for two different formulas.

Rules that discharge a hypothesis need it to be open in the designated
premise.  When a subderivation happens not to use its hypothesis, the
constructors "touch" it: ``∧E_l(∧I(d, hyp))`` keeps the conclusion of ``d``
while making the hypothesis occur.
"""
from __future__ import annotations

import hashlib
from typing import Callable, Sequence

from ..errors import BadParams
from ..formula import (And, Bot, Dep, Formula, IDisj, NegVar, Tensor, Var, conj, disj,
                       literal, render, tensor)
from ..normalform import defining_formula
from ..semantics import denotation_mask
from ..team import Team, TeamFamily, bit_of
from ..translate import realization, realizing_functions
from .derivation import Derivation, Hyp, Node

__all__ = ["label", "hyp", "touch", "em0", "and_i", "and_l", "and_r", "or_il", "or_ir", "or_e",
           "t_il", "t_ir", "tens_e", "tens_sub", "com", "ass", "bot_i", "bot_e", "dstr",
           "dep_i0", "dep_ik", "dep_e0", "dep_ek", "se", "ex_falso", "inject_disj",
           "cases_disj", "tensor_map", "dist_right", "conj_proj", "Builder"]


_LABELS: dict[tuple[str, Formula], str] = {}


def label(kind: str, f: Formula) -> str:
    hit = _LABELS.get((kind, f))
    if hit is not None:
        return hit
    if len(_LABELS) > 500_000:
        _LABELS.clear()
    digest = hashlib.sha1(render(f).encode("utf-8")).hexdigest()[:10]
    out = _LABELS[(kind, f)] = f"{kind}_{digest}"
    return out


def hyp(kind: str, f: Formula) -> Hyp:
    return Hyp(label(kind, f), f)


# ---------------------------------------------------------------- single rules

def touch(d: Derivation, h: Hyp) -> Derivation:
    return Node("∧E_l", [Node("∧I", [d, h])])


def _use(d: Derivation, h: Hyp) -> Derivation:
    return d if h.label in d.open_labels else touch(d, h)


def em0(i: int) -> Node:
    return Node("EM0", side=Var(i))


def and_i(a: Derivation, b: Derivation) -> Node:
    return Node("∧I", [a, b])


def and_l(d: Derivation) -> Node:
    return Node("∧E_l", [d])


def and_r(d: Derivation) -> Node:
    return Node("∧E_r", [d])


def or_il(d: Derivation, right: Formula) -> Node:
    return Node("∨I_l", [d], side=right)


def or_ir(d: Derivation, left: Formula) -> Node:
    return Node("∨I_r", [d], side=left)


def t_il(d: Derivation, right: Formula) -> Node:
    return Node("⊗I_l", [d], side=right)


def t_ir(d: Derivation, left: Formula) -> Node:
    return Node("⊗I_r", [d], side=left)


def com(d: Derivation) -> Node:
    return Node("Com⊗", [d])


def ass(d: Derivation) -> Node:
    return Node("Ass⊗", [d])


def bot_i(d: Derivation) -> Node:
    return Node("⊥I", [d])


def bot_e(d: Derivation) -> Node:
    return Node("⊥E", [d])


def dstr(d: Derivation) -> Node:
    return Node("Dstr⊗∨", [d])


def dep_i0(d: Derivation) -> Node:
    return Node("DepI0", [d])


def dep_ek(atom: Derivation, consts: Sequence[Derivation]) -> Node:
    return Node("DepEk", [atom, *consts])


def _two_cases(rule: str, major, hl: Hyp, dl, hr: Hyp, dr, **extra) -> Node:
    return Node(rule, [major, _use(dl, hl), _use(dr, hr)], [hl.label, hr.label], **extra)


def or_e(major, hl, dl, hr, dr) -> Node:
    return _two_cases("∨E", major, hl, dl, hr, dr)


def tens_e(major, hl, dl, hr, dr) -> Node:
    return _two_cases("⊗E⁻", major, hl, dl, hr, dr)


def dep_e0(major, hl, dl, hr, dr) -> Node:
    return _two_cases("DepE0", major, hl, dl, hr, dr)


def se(major, addr: int, hp, dp, hn, dn) -> Node:
    return _two_cases("SE", major, hp, dp, hn, dn, addr=addr)


def tens_sub(major: Derivation, h: Hyp, d: Derivation) -> Node:
    return Node("⊗Sub", [major, _use(d, h)], [h.label])


def dep_ik(d: Derivation, atom: Dep, hyps: Sequence[Hyp]) -> Node:
    for h in hyps:
        d = _use(d, h)
    return Node("DepIk", [d], [h.label for h in hyps], side=atom)


def ex_falso(d: Derivation, target: Formula) -> Node:
    """From a derivation of bot, a derivation of ``target``."""
    return bot_e(t_ir(d, target))


# ---------------------------------------------------------------- left-nested lists

def inject_disj(d: Derivation, idx: int, parts: Sequence[Formula]) -> Derivation:
    """From a proof of ``parts[idx]``, a proof of the left-nested disjunction of ``parts``."""
    if len(parts) == 1:
        return d
    if idx == len(parts) - 1:
        return or_ir(d, disj(parts[:-1]))
    return or_il(inject_disj(d, idx, parts[:-1]), parts[-1])


def cases_disj(d: Derivation, parts: Sequence[Formula],
               fn: Callable[[int, Derivation], Derivation], kind: str = "or") -> Derivation:
    """Case analysis on a left-nested disjunction; ``fn(i, hyp_i)`` handles one disjunct."""
    if len(parts) == 1:
        return fn(0, d)
    prefix = disj(parts[:-1])
    hl, hr = hyp(kind, prefix), hyp(kind, parts[-1])
    left = cases_disj(hl, parts[:-1], fn, kind)
    right = fn(len(parts) - 1, hr)
    return or_e(d, hl, left, hr, right)


def tensor_map(d: Derivation, parts: Sequence[Formula],
               fn: Callable[[int, Derivation], Derivation], kind: str = "tm") -> Derivation:
    """Rewrite each component of a left-nested tensor independently.

    ``fn(i, hyp_i)`` turns a hypothesis of ``parts[i]`` into a proof of the
    new component; the result proves the left-nested tensor of the new
    components.  Components whose ``fn`` returns the hypothesis itself are
    left alone.
    """
    if len(parts) == 1:
        return fn(0, d)
    h = hyp(kind, parts[-1])
    last = fn(len(parts) - 1, h)
    if last is not h:
        d = tens_sub(d, h, last)
    h = hyp(kind, tensor(parts[:-1]))
    rest = tensor_map(h, parts[:-1], fn, kind)
    if rest is h:
        return d
    return com(tens_sub(com(d), h, rest))


def dist_right(d: Derivation, front: Formula, parts: Sequence[Formula],
               fn: Callable[[int, Derivation], Derivation], kind: str = "ds") -> Derivation:
    """Case analysis on ``front ⊗ (left-nested disjunction of parts)``.

    ``fn(i, hyp)`` receives a hypothesis of ``front ⊗ parts[i]``.
    """
    if len(parts) == 1:
        return fn(0, d)
    hl = hyp(kind, Tensor(front, disj(parts[:-1])))
    hr = hyp(kind, Tensor(front, parts[-1]))
    left = dist_right(hl, front, parts[:-1], fn, kind)
    return or_e(dstr(d), hl, left, hr, fn(len(parts) - 1, hr))


def cut_or(d: Derivation, h: Hyp, body: Derivation, other: Derivation, spare: Hyp) -> Derivation:
    """Use ``d`` (proving ``h.formula``) in place of ``h`` in ``body``, without copying ``body``.

    ``∨I_l`` adds the disjunct ``spare.formula`` and ``∨E`` splits again;
    ``other`` must derive the same conclusion from ``spare``.
    """
    return or_e(or_il(d, spare.formula), h, body, spare, other)


def conj_proj(d: Derivation, idx: int, n: int) -> Derivation:
    """Component ``idx`` of a left-nested conjunction with ``n`` components."""
    for _ in range(n - 1 - idx):
        d = and_l(d)
    return d if idx == 0 else and_r(d)


# ---------------------------------------------------------------- completeness builders

class Builder:
    """Derivations over a fixed variable domain, with per-instance memo tables.

    ``domain`` is the sorted tuple of variable indices the normal forms range
    over.  All results are deterministic: every "pick one" step takes the
    first candidate in canonical order.
    """

    def __init__(self, domain: Sequence[int]):
        self.domain = tuple(domain)
        self.n = len(self.domain)
        self._den: dict[Formula, int] = {}
        self._classical: dict = {}
        self._fwd: dict = {}
        self._derive: dict = {}
        self._theta: dict[int, Formula] = {}

    # ---- semantics over the domain

    def den(self, f: Formula) -> int:
        try:
            return self._den[f]
        except KeyError:
            m = self._den[f] = denotation_mask(f, self.domain)
            return m

    def entails(self, premises: Sequence[Formula], goal: Formula) -> bool:
        both = (1 << (1 << (1 << self.n))) - 1
        for p in premises:
            both &= self.den(p)
        return both & ~self.den(goal) == 0

    def team_of(self, f: Formula) -> int:
        """Largest team satisfying a flat formula: the members of its satisfying singletons."""
        m = self.den(f)
        return sum(1 << c for c in range(1 << self.n) if m >> (1 << c) & 1)

    def maximal(self, f: Formula) -> list[int]:
        m = self.den(f)
        fam = TeamFamily(self.domain, frozenset(t for t in range(1 << (1 << self.n)) if m >> t & 1))
        return [t.mask for t in fam.maximal()]

    def theta(self, team: int) -> Formula:
        try:
            return self._theta[team]
        except KeyError:
            f = self._theta[team] = defining_formula(Team(self.domain, team), self.domain)
            return f

    # ---- classical reasoning by splitting on excluded middle

    def _value(self, s: dict[int, int], f: Formula) -> bool:
        t = type(f)
        if t is Var:
            return s[f.index] == 1
        if t is NegVar:
            return s[f.index] == 0
        if t is Bot:
            return False
        if t is And:
            return self._value(s, f.left) and self._value(s, f.right)
        if t is Tensor:
            return self._value(s, f.left) or self._value(s, f.right)
        raise BadParams(f"{render(f)} is not a classical formula without implication")

    def _lit(self, var: int, bit: int) -> Hyp:
        return hyp("lit", literal(var, bit))

    def _verify(self, s: dict[int, int], f: Formula) -> Derivation:
        """Proof of ``f`` from the literal hypotheses of ``s`` (``s`` satisfies ``f``)."""
        t = type(f)
        if t is Var or t is NegVar:
            return self._lit(f.index, s[f.index])
        if t is And:
            return and_i(self._verify(s, f.left), self._verify(s, f.right))
        if self._value(s, f.left):
            return t_il(self._verify(s, f.left), f.right)
        return t_ir(self._verify(s, f.right), f.left)

    def _refute(self, s: dict[int, int], d: Derivation, f: Formula) -> Derivation:
        """Proof of bot from ``d`` (proving ``f``) and the literals of ``s`` (which falsify ``f``)."""
        t = type(f)
        if t is Bot:
            return d
        if t is Var or t is NegVar:
            other = self._lit(f.index, s[f.index])
            pair = and_i(d, other) if t is Var else and_i(other, d)
            return bot_i(pair)
        if t is And:
            if not self._value(s, f.left):
                return self._refute(s, and_l(d), f.left)
            return self._refute(s, and_r(d), f.right)
        hl, hr = hyp("rf", f.left), hyp("rf", f.right)
        return tens_e(d, hl, self._refute(s, hl, f.left), hr, self._refute(s, hr, f.right))

    def classical(self, d: Derivation | None, source: Formula | None, target: Formula) -> Derivation:
        """Derive the classical ``target`` from ``d`` (a proof of the classical ``source``).

        Every valuation satisfying ``source`` must satisfy ``target``; with
        ``d=None`` the target must be valid.  The proof splits on excluded
        middle for each variable involved and closes every branch either
        directly or by refuting the source.
        """
        if d is not None and source == target:
            return d
        if d is not None and isinstance(source, Bot):
            return ex_falso(d, target)
        key = (d, source, target)
        hit = self._classical.get(key)
        if hit is not None:
            return hit
        names = set()
        for f in (source, target):
            if f is not None:
                names |= _vars(f)
        order = sorted(names)

        def go(k: int, s: dict[int, int]) -> Derivation:
            if k == len(order):
                if d is None or self._value(s, source):
                    if not self._value(s, target):
                        raise BadParams(f"{render(target)} does not follow classically")
                    return self._verify(s, target)
                return ex_falso(self._refute(s, d, source), target)
            v = order[k]
            pos = go(k + 1, {**s, v: 1})
            neg = go(k + 1, {**s, v: 0})
            return tens_e(em0(v), self._lit(v, 1), pos, self._lit(v, 0), neg)

        out = go(0, {})
        self._classical[key] = out
        return out

    # ---- from a classical description of a team to an arbitrary consequence

    def derive(self, d: Derivation, source: Formula, goal: Formula) -> Derivation:
        """Derive ``goal`` from ``d``, a proof of the classical ``source`` with ``source ⊨ goal``."""
        key = (d, source, goal)
        hit = self._derive.get(key)
        if hit is None:
            hit = self._derive[key] = self._derive_at(d, source, self.team_of(source), goal)
        return hit

    def _derive_at(self, d: Derivation, source: Formula, team: int, goal: Formula) -> Derivation:
        if _is_classical(goal):
            return self.classical(d, source, goal)
        if team == 0:
            return ex_falso(self.classical(d, source, Bot()), goal)
        t = type(goal)
        if t is IDisj:
            if self.den(goal.left) >> team & 1:
                return or_il(self.derive(d, source, goal.left), goal.right)
            return or_ir(self.derive(d, source, goal.right), goal.left)
        if t is And:
            return and_i(self.derive(d, source, goal.left), self.derive(d, source, goal.right))
        if t is Tensor:
            return self._derive_tensor(d, source, team, goal)
        if t is Dep:
            return self._derive_dep(d, source, team, goal)
        raise BadParams(f"cannot derive {render(goal)}")

    def _derive_tensor(self, d, source, team, goal):
        left_den, right_den = self.den(goal.left), self.den(goal.right)
        choice = None
        # canonical order: ascending submask values
        for y in sorted(_submasks(team)):
            if left_den >> y & 1 and right_den >> (team & ~y) & 1:
                choice = y
                break
        if choice is None:
            raise BadParams(f"{render(source)} does not entail {render(goal)}")
        y, z = choice, team & ~choice
        if z == 0:
            return t_il(self.derive(d, source, goal.left), goal.right)
        if y == 0:
            return t_ir(self.derive(d, source, goal.right), goal.left)
        ty, tz = self.theta(y), self.theta(z)
        split = self.classical(d, source, Tensor(ty, tz))

        def fn(i, h):
            return self.derive(h, (ty, tz)[i], (goal.left, goal.right)[i])
        return tensor_map(split, [ty, tz], fn)

    def _derive_dep(self, d, source, team, atom: Dep):
        if not atom.args:
            bit = 1 if self.den(Var(atom.target)) >> team & 1 else 0
            return dep_i0(self.classical(d, source, literal(atom.target, bit)))
        real = None
        for fn in realizing_functions(atom.args):
            cand = realization(atom, fn)
            if self.den(cand) >> team & 1:
                real = (fn, cand)
                break
        if real is None:
            raise BadParams(f"{render(source)} does not entail {render(atom)}")
        fn, cand = real
        d_real = self.classical(d, source, cand)
        args = sorted(set(atom.args))
        k = len(args)
        consts = {a: hyp("dk", Dep((), a)) for a in args}

        def split(p: int, bits: list[int]) -> Derivation:
            if p == k:
                lits = [self._dl(args[q], bits[q]) for q in range(k)]
                code = 0
                for b in bits:
                    code = (code << 1) | b
                value = fn(code)
                src = And(cand, conj(h.formula for h in lits))
                both = and_i(d_real, _conj_derivation(lits))
                return dep_i0(self.classical(both, src, literal(atom.target, value)))
            a = args[p]
            hp, hn = self._dl(a, 1), self._dl(a, 0)
            return dep_e0(consts[a], hp, split(p + 1, bits + [1]), hn, split(p + 1, bits + [0]))

        body = split(0, [])
        return dep_ik(body, atom, [consts[a] for a in atom.args])

    def _dl(self, var: int, bit: int) -> Hyp:
        return hyp("dl", literal(var, bit))

    def via_or(self, d: Derivation, source: Formula, goal: Formula) -> Derivation:
        """Like :meth:`derive`, but the bulk of the proof is shared by every ``d``.

        The goal is derived once from a hypothesis of ``source`` and joined to
        ``d`` by :func:`cut_or`; only the two joining steps are new.
        """
        if isinstance(d, Hyp):
            return self.derive(d, source, goal)
        h = hyp("nf", source)
        body = self.derive(h, source, goal)
        if body is h:
            return d
        spare = hyp("ef", Bot())
        return cut_or(d, h, body, self.derive(spare, Bot(), goal), spare)

    # ---- forward normal form for the PD∨ fragment

    def fwd(self, d: Derivation, f: Formula) -> tuple[Derivation, list[Formula]]:
        """Derive, from ``d`` proving ``f``, the disjunction of the defining formulas of
        the maximal teams of ``f``; returns the derivation and the disjuncts."""
        key = (d, f)
        hit = self._fwd.get(key)
        if hit is None:
            hit = self._fwd[key] = self._fwd_at(d, f)
        return hit

    def _fwd_at(self, d, f):
        tops = self.maximal(f)
        parts = [self.theta(m) for m in tops]
        if _is_classical(f):
            return self.classical(d, f, parts[0]), parts

        def lift(dx: Derivation, x: int) -> Derivation:
            idx = next(i for i, m in enumerate(tops) if x & ~m == 0)
            return inject_disj(self.classical(dx, self.theta(x), parts[idx]), idx, parts)

        t = type(f)
        if t is IDisj:
            hl, hr = hyp("or", f.left), hyp("or", f.right)
            branches = []
            for h in (hl, hr):
                dh, sub = self.fwd(h, h.formula)
                subtops = self.maximal(h.formula)
                branches.append(cases_disj(dh, sub, lambda i, hi, st=subtops: lift(hi, st[i])))
            return or_e(d, hl, branches[0], hr, branches[1]), parts
        if t is And:
            dl, la = self.fwd(and_l(d), f.left)
            dr, lb = self.fwd(and_r(d), f.right)
            ta, tb = self.maximal(f.left), self.maximal(f.right)

            def outer(i, hi):
                def inner(j, hj):
                    return self._lift_pair(and_i(hi, hj), And(la[i], lb[j]),
                                           ta[i] & tb[j], tops, parts)
                return cases_disj(dr, lb, inner, "cb")
            return cases_disj(dl, la, outer, "ca"), parts
        if t is Tensor:
            hb = hyp("tr", f.right)
            db, lb = self.fwd(hb, f.right)
            step = d if db is hb else tens_sub(d, hb, db)
            ha = hyp("tl", f.left)
            da, la = self.fwd(ha, f.left)
            # step proves f.left ⊗ ⋁lb; flip it and rewrite the other side
            flipped = com(step)
            both = flipped if da is ha else tens_sub(flipped, ha, da)
            # both proves ⋁lb ⊗ ⋁la
            ta, tb = self.maximal(f.left), self.maximal(f.right)

            def over_a(i, hi):
                def over_b(j, hj):
                    src = Tensor(la[i], lb[j])
                    return self._lift_pair(hj, src, ta[i] | tb[j], tops, parts)
                return dist_right(com(hi), la[i], lb, over_b, "db")
            return dist_right(both, disj(lb), la, over_a, "da"), parts
        raise BadParams(f"{render(f)} is outside the PD∨ fragment")

    def _lift_pair(self, d, src, team, tops, parts):
        idx = next(i for i, m in enumerate(tops) if team & ~m == 0)
        return inject_disj(self.classical(d, src, parts[idx]), idx, parts)

    # ---- star translation and strong elimination for PD

    def star(self, d: Derivation, f: Formula) -> Derivation:
        """From ``d`` proving ``f``, a proof of ``f`` with every dependence atom of
        positive arity replaced by its case split over constancy atoms."""
        if not _has_dep_args(f):
            return d
        t = type(f)
        if t is Dep:
            return self._star_atom(d, f)
        if t is And:
            return and_i(self.star(and_l(d), f.left), self.star(and_r(d), f.right))
        if t is Tensor:
            hb, ha = hyp("sr", f.right), hyp("sl", f.left)
            step = tens_sub(d, hb, self.star(hb, f.right)) if _has_dep_args(f.right) else d
            if not _has_dep_args(f.left):
                return step
            return com(tens_sub(com(step), ha, self.star(ha, f.left)))
        return d

    def _star_atom(self, d: Derivation, atom: Dep) -> Derivation:
        args = sorted(set(atom.args))
        k = len(args)
        rows = []
        for code in range((1 << k) - 1, -1, -1):
            rows.append(conj(literal(i, bit_of(code, k, args.index(i))) for i in atom.args))
        split = self.classical(None, None, tensor(rows))
        m = len(atom.args)

        def fn(i, h):
            consts = [dep_i0(conj_proj(h, p, m)) for p in range(m)]
            return and_i(h, dep_ek(d, consts))
        return tensor_map(split, rows, fn, "st")

    def se_chain(self, d: Derivation, f: Formula, leaf: Callable[[Derivation, Formula], Derivation]) -> Derivation:
        """Strong elimination on every constancy atom of ``f``, leftmost first."""
        from ..formula import occurrences
        from .checker import se_branches
        addr = next((a for a, g in occurrences(f) if isinstance(g, Dep)), None)
        if addr is None:
            return leaf(d, f)
        pos, neg, _ = se_branches(f, addr)
        hp, hn = hyp("se", pos), hyp("se", neg)
        return se(d, addr, hp, self.se_chain(hp, pos, leaf), hn, self.se_chain(hn, neg, leaf))


def _conj_derivation(parts: Sequence[Derivation]) -> Derivation:
    out = parts[0]
    for p in parts[1:]:
        out = and_i(out, p)
    return out


def _submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _vars(f: Formula) -> set[int]:
    from ..formula import vars_of
    return set(vars_of(f))


def _is_classical(f: Formula) -> bool:
    from ..formula import Fragment, in_fragment
    return in_fragment(f, Fragment.CPL)


def _has_dep_args(f: Formula) -> bool:
    if isinstance(f, Dep):
        return bool(f.args)
    return any(_has_dep_args(c) for c in f.children)

