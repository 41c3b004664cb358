"""Derivation synthesis for valid entailments in the PD∨ and PD systems.

Both synthesizers first confirm the entailment semantically, then build a
derivation by the normal-form route:

* PD∨: rewrite the premise into a disjunction of defining formulas of its
  maximal teams, then derive the goal separately from each of them.
* PD: conjoin the premises, replace every dependence atom of positive arity
  by its case split over constancy atoms, eliminate the constancy atoms by
  strong elimination, and derive the goal from each classical leaf.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from ..errors import NotEntailed, SizeGuard
from ..formula import Formula, Fragment, check_fragment, conj, render, vars_of
from ..team import TEAM_GUARD, index_set
from .builders import Builder, and_i, cases_disj, em0, touch
from .checker import ProofSystem
from .derivation import Derivation, Hyp

__all__ = ["synth_entailment_pdv", "synth_entailment_pd", "prove", "premise_label"]


def premise_label(i: int) -> str:
    return f"g{i}"


def _domain(formulas: Iterable[Formula], guard: int) -> tuple[int, ...]:
    names: set[int] = set()
    for f in formulas:
        names |= vars_of(f)
    dom = index_set(names)
    if len(dom) > guard:
        raise SizeGuard(f"{len(dom)} variables exceed the guard of {guard}")
    # with no variables at all, the normal forms borrow p1
    return dom or (1,)


def _listing(premises: Sequence[Formula]) -> str:
    return "{" + ", ".join(render(p) for p in premises) + "}"


def _ensure_used(d: Derivation, hyps: Sequence[Hyp]) -> Derivation:
    for h in hyps:
        if h.label not in d.open_labels:
            d = touch(d, h)
    return d


_BUILDERS: dict[tuple[int, ...], Builder] = {}


def _builder(dom: tuple[int, ...]) -> Builder:
    # builders only cache pure functions of their inputs, so they are shared
    b = _BUILDERS.get(dom)
    if b is None:
        b = _BUILDERS[dom] = Builder(dom)
    return b


def clear_caches() -> None:
    _BUILDERS.clear()


def _conjoined(hyps: Sequence[Hyp], dom: tuple[int, ...]) -> tuple[Derivation, Formula]:
    """A proof of the conjunction of the hypotheses (excluded middle on p1 if there are none)."""
    if not hyps:
        d = em0(dom[0])
        return d, d.conclusion
    d: Derivation = hyps[0]
    for h in hyps[1:]:
        d = and_i(d, h)
    return d, conj(h.formula for h in hyps)


def _pdv(premises: Sequence[Formula], goal: Formula, guard: int) -> Derivation:
    for f in (*premises, goal):
        check_fragment(f, Fragment.PDv)
    dom = _domain([*premises, goal], guard)
    b = _builder(dom)
    if not b.entails(premises, goal):
        raise NotEntailed(f"{_listing(premises)} does not entail {render(goal)}")
    hyps = [Hyp(premise_label(i), f) for i, f in enumerate(premises)]
    for h in hyps:
        if h.formula == goal:
            return _ensure_used(h, hyps)
    d, whole = _conjoined(hyps, dom)
    d, parts = b.fwd(d, whole)
    if len(parts) == 1:
        out = b.via_or(d, parts[0], goal)
    else:
        out = cases_disj(d, parts, lambda i, h: b.derive(h, parts[i], goal), "nf")
    return _ensure_used(out, hyps)


def synth_entailment_pdv(premise: Formula, goal: Formula, guard: int = TEAM_GUARD) -> Derivation:
    """A derivation of ``goal`` from the single open hypothesis ``premise`` (label ``g0``)."""
    return _pdv([premise], goal, guard)


def synth_entailment_pd(premises: Sequence[Formula], goal: Formula, guard: int = TEAM_GUARD) -> Derivation:
    """A derivation of ``goal`` whose open hypotheses are exactly ``premises`` (labels ``g0``, ``g1``, ...)."""
    premises = list(premises)
    for f in premises:
        check_fragment(f, Fragment.PD)
    check_fragment(goal, Fragment.PD)
    dom = _domain([*premises, goal], guard)
    b = _builder(dom)
    if not b.entails(premises, goal):
        raise NotEntailed(f"{_listing(premises)} does not entail {render(goal)}")
    hyps = [Hyp(premise_label(i), f) for i, f in enumerate(premises)]
    for h in hyps:
        if h.formula == goal:
            return _ensure_used(h, hyps)
    d, whole = _conjoined(hyps, dom)
    starred = b.star(d, whole)
    out = b.se_chain(starred, starred.conclusion, lambda dc, c: b.derive(dc, c, goal))
    return _ensure_used(out, hyps)


def prove(system: "str | ProofSystem", premises: Sequence[Formula], goal: Formula,
          guard: int = TEAM_GUARD) -> Derivation:
    """Synthesize a derivation in ``system`` (``pdv`` or ``pd``)."""
    system = ProofSystem.from_name(system)
    premises = list(premises)
    if system is ProofSystem.ND_PDv:
        return _pdv(premises, goal, guard)
    if system is ProofSystem.ND_PD:
        return synth_entailment_pd(premises, goal, guard)
    raise ValueError(f"no synthesis for {system.name}")
