"""Rule checking for the natural-deduction systems."""
from __future__ import annotations

import enum

from ..errors import BadAddress, BadDischarge, RuleViolation, SideConditionViolated
from ..formula import (And, Bot, Dep, Formula, Fragment, IDisj, NegVar, Tensor, Var,
                       _occurrences_with_paths, check_fragment, in_fragment,
                       render, replace_path)
from .derivation import RULES, Derivation, Hyp, Judgment, Node, walk

__all__ = ["ProofSystem", "check_nd", "infer_conclusion", "se_branches"]


class ProofSystem(enum.Enum):
    H_InqL = "inql"
    H_PID = "pid"
    ND_PDv = "pdv"
    ND_PD = "pd"

    @classmethod
    def from_name(cls, name: "str | ProofSystem") -> "ProofSystem":
        if type(name) is ProofSystem:
            return name
        hit = _BY_NAME.get(name)
        if hit is not None:
            return hit
        key = name.strip().lower()
        for member in cls:
            if key in (member.value, member.name.lower()):
                return member
        raise ValueError(f"unknown proof system {name!r}")

    @property
    def fragment(self) -> Fragment:
        return _FRAGMENT[self.value]


_FRAGMENT = {
    "inql": Fragment.InqL,
    "pid": Fragment.PID,
    "pdv": Fragment.PDv,
    "pd": Fragment.PD,
}

_BY_NAME = {m.value: m for m in ProofSystem}

_SHARED = {"EM0", "∧I", "∧E_l", "∧E_r", "⊗I_l", "⊗I_r", "⊗E⁻", "⊗Sub", "Com⊗", "Ass⊗", "⊥I", "⊥E"}
_ALLOWED = {
    "pdv": frozenset(_SHARED | {"∨I_l", "∨I_r", "∨E", "Dstr⊗∨"}),
    "pd": frozenset(_SHARED | {"DepI0", "DepIk", "DepE0", "DepEk", "SE"}),
}


def _want(node, ok: bool, reason, cls=RuleViolation):
    """Raise unless ``ok``; ``reason`` may be a callable so messages are only built on failure."""
    if not ok:
        raise cls(node, reason() if callable(reason) else reason)


def se_branches(phi: Formula, addr: int) -> tuple[Formula, Formula, int]:
    """The two case formulas of strong elimination at the constancy atom at ``addr``."""
    for a, g, path in _occurrences_with_paths(phi):
        if a == addr and isinstance(g, Dep):
            if g.args:
                raise BadAddress(f"symbol {addr} of {render(phi)} starts {render(g)}, "
                                 "which is not a constancy atom")
            return (replace_path(phi, path, Var(g.target)),
                    replace_path(phi, path, NegVar(g.target)), g.target)
    raise BadAddress(f"no dependence atom starts at symbol {addr} of {render(phi)}")


def _step(node: Node, c: list[Formula]) -> tuple[Formula, list[tuple[str, int, Formula]]]:
    """Conclusion of ``node`` from its premises' conclusions, plus what it discharges.

    The second component lists ``(label, premise index, formula)`` for every
    discharged label.  Shape errors raise :class:`RuleViolation`.
    """
    r = node.rule
    spec = RULES[r]
    if spec.arity is not None and len(c) != spec.arity:
        raise RuleViolation(node, f"{r} takes {spec.arity} premise(s), got {len(c)}")
    if (node.side is not None) != spec.side:
        raise RuleViolation(node, f"{r} {'needs' if spec.side else 'takes no'} side formula")
    if (node.addr is not None) != spec.addr:
        raise RuleViolation(node, f"{r} {'needs' if spec.addr else 'takes no'} address")
    if r != "DepIk" and len(node.discharges) != len(spec.discharges):
        raise BadDischarge(node, f"{r} discharges {len(spec.discharges)} label(s), "
                                 f"got {len(node.discharges)}")

    def shape(f: Formula, cls, what: str):
        if not isinstance(f, cls):
            raise RuleViolation(node, f"{r} needs {what}, got {render(f)}")

    def agree(a: Formula, b: Formula):
        if a != b:
            raise RuleViolation(node, f"{r} needs matching minor conclusions, got {render(a)} and {render(b)}")

    d = node.discharges
    if r == "EM0":
        _want(node, isinstance(node.side, Var), lambda: f"EM0 applies to variables only, not {render(node.side)}")
        i = node.side.index
        return Tensor(Var(i), NegVar(i)), []
    if r == "∧I":
        return And(c[0], c[1]), []
    if r in ("∧E_l", "∧E_r"):
        shape(c[0], And, "a conjunction")
        return (c[0].left if r == "∧E_l" else c[0].right), []
    if r == "∨I_l":
        return IDisj(c[0], node.side), []
    if r == "∨I_r":
        return IDisj(node.side, c[0]), []
    if r == "⊗I_l":
        return Tensor(c[0], node.side), []
    if r == "⊗I_r":
        return Tensor(node.side, c[0]), []
    if r in ("∨E", "⊗E⁻"):
        shape(c[0], IDisj if r == "∨E" else Tensor, "a disjunction" if r == "∨E" else "a tensor")
        agree(c[1], c[2])
        if r == "⊗E⁻" and not in_fragment(c[1], Fragment.CPL):
            raise SideConditionViolated(node, f"⊗E⁻ concludes {render(c[1])}, which is not classical")
        return c[1], [(d[0], 1, c[0].left), (d[1], 2, c[0].right)]
    if r == "⊗Sub":
        shape(c[0], Tensor, "a tensor")
        return Tensor(c[0].left, c[1]), [(d[0], 1, c[0].right)]
    if r == "Com⊗":
        shape(c[0], Tensor, "a tensor")
        return Tensor(c[0].right, c[0].left), []
    if r == "Ass⊗":
        _want(node, isinstance(c[0], Tensor) and isinstance(c[0].right, Tensor),
              lambda: f"Ass⊗ needs a tensor whose right part is a tensor, got {render(c[0])}")
        a, (b, e) = c[0].left, (c[0].right.left, c[0].right.right)
        return Tensor(Tensor(a, b), e), []
    if r == "⊥I":
        f = c[0]
        _want(node, isinstance(f, And) and isinstance(f.left, Var) and isinstance(f.right, NegVar)
              and f.left.index == f.right.index,
              lambda: f"⊥I needs p & ~p for one variable, got {render(f)}")
        return Bot(), []
    if r == "⊥E":
        _want(node, isinstance(c[0], Tensor) and isinstance(c[0].right, Bot),
              lambda: f"⊥E needs a tensor with bot on the right, got {render(c[0])}")
        return c[0].left, []
    if r == "Dstr⊗∨":
        _want(node, isinstance(c[0], Tensor) and isinstance(c[0].right, IDisj),
              lambda: f"Dstr⊗∨ needs a tensor with a disjunction on the right, got {render(c[0])}")
        a, b, e = c[0].left, c[0].right.left, c[0].right.right
        return IDisj(Tensor(a, b), Tensor(a, e)), []
    if r == "DepI0":
        _want(node, isinstance(c[0], (Var, NegVar)), lambda: f"DepI0 needs a literal, got {render(c[0])}")
        return Dep((), c[0].index), []
    if r == "DepIk":
        atom = node.side
        _want(node, isinstance(atom, Dep) and len(atom.args) >= 1,
              "DepIk needs a dependence atom with at least one argument as side formula")
        _want(node, c[0] == Dep((), atom.target),
              lambda: f"DepIk needs a proof of =(p{atom.target}), got {render(c[0])}")
        _want(node, len(d) == len(atom.args),
              f"DepIk discharges one label per argument ({len(atom.args)}), got {len(d)}", BadDischarge)
        return atom, [(lab, 0, Dep((), a)) for lab, a in zip(d, atom.args)]
    if r == "DepE0":
        shape(c[0], Dep, "a constancy atom")
        _want(node, not c[0].args, lambda: f"DepE0 needs a constancy atom, got {render(c[0])}")
        agree(c[1], c[2])
        i = c[0].target
        return c[1], [(d[0], 1, Var(i)), (d[1], 2, NegVar(i))]
    if r == "DepEk":
        _want(node, len(c) >= 2, "DepEk needs the atom and its constancy premises")
        atom = c[0]
        _want(node, isinstance(atom, Dep) and len(atom.args) == len(c) - 1,
              lambda: f"DepEk needs an atom with {len(c) - 1} argument(s) first, got {render(atom)}")
        for a, prem in zip(atom.args, c[1:]):
            _want(node, prem == Dep((), a), lambda: f"DepEk needs =(p{a}) for argument p{a}, got {render(prem)}")
        return Dep((), atom.target), []
    if r == "SE":
        pos, neg, _ = se_branches(c[0], node.addr)
        agree(c[1], c[2])
        return c[1], [(d[0], 1, pos), (d[1], 2, neg)]
    raise RuleViolation(node, f"unknown rule {r}")  # pragma: no cover


def infer_conclusion(d: Derivation) -> Formula:
    """Conclusion of ``d`` computed from rule shapes only (no discharge checks)."""
    for node in walk(d, lambda n: n._concl is not None):
        if isinstance(node, Hyp):
            node._concl = node.formula
        else:
            node._concl = _step(node, [p._concl for p in node.premises])[0]
    return d._concl


def _merge(node, target: dict, extra: dict) -> None:
    for lab, f in extra.items():
        have = target.get(lab)
        if have is None:
            target[lab] = f
        elif have != f:
            raise BadDischarge(node, f"label {lab} names both {render(have)} and {render(f)}")


def check_nd(d: Derivation, system: "str | ProofSystem" = ProofSystem.ND_PDv) -> Judgment:
    """Check every node of ``d`` and return its judgment (open hypotheses, conclusion)."""
    system = ProofSystem.from_name(system)
    key = system.value  # memo key: plain strings hash faster than enum members
    allowed = _ALLOWED.get(key)
    if allowed is None:
        raise ValueError(f"{system.name} is not a natural-deduction system")
    fragment = system.fragment
    for node in walk(d, lambda n: n._checked is not None and key in n._checked):
        if isinstance(node, Hyp):
            check_fragment(node.formula, fragment)
            result = ({node.label: node.formula}, node.formula)
        else:
            if node.rule not in allowed:
                raise RuleViolation(node, f"{node.rule} is not a rule of {system.name}")
            kids = [p._checked[key] for p in node.premises]
            concl, discharged = _step(node, [k[1] for k in kids])
            if node.side is not None:
                check_fragment(node.side, fragment)
            check_fragment(concl, fragment)
            opened = [k[0] for k in kids]
            for lab, idx, want in discharged:
                have = opened[idx].get(lab)
                if have is None:
                    if kids[idx][0].get(lab) == want:
                        continue  # same label listed twice for one premise
                    raise BadDischarge(node, f"label {lab} is not an open hypothesis of premise {idx + 1}")
                if have != want:
                    raise BadDischarge(node, f"label {lab} is {render(have)}, but {node.rule} "
                                             f"discharges {render(want)}")
                if opened[idx] is kids[idx][0]:
                    opened[idx] = dict(opened[idx])  # copy before the first deletion
                del opened[idx][lab]
            out: dict = {}
            for m in opened:
                if not out:
                    out = dict(m)
                elif m:
                    _merge(node, out, m)
            result = (out, concl)
            node._concl = concl
        if node._checked is None:
            node._checked = {}
        node._checked[key] = result
    opened, concl = d._checked[key]
    return Judgment(frozenset(opened.values()), concl)
