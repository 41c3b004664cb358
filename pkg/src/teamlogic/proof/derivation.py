"""Natural-deduction derivation trees and their text format.

A derivation is a tree whose leaves are labelled hypotheses and whose
inner nodes name a rule.  Rules that close hypotheses list the labels they
discharge positionally (see ``RULES``).  Extra data a rule needs is carried
as ``side`` (a formula) or ``addr`` (a symbol position, for ``SE``).

Text format::

    (hyp <label> "<formula>")
    (<rule> <child>... [discharges: <label>...] [addr: <int>] [side: "<formula>"])
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from ..errors import FormulaSyntaxError, ProofFormatError
from ..formula import Formula, parse, render

__all__ = ["Hyp", "Node", "Derivation", "RuleSpec", "RULES", "ALIASES", "rule_token",
           "render_proof", "parse_proof", "graft", "Judgment", "walk"]


@dataclass(frozen=True)
class RuleSpec:
    name: str
    arity: int | None          # None: depends on the rule's data
    discharges: tuple[int, ...]  # premise index receiving each discharged label
    side: bool = False
    addr: bool = False


RULES: dict[str, RuleSpec] = {s.name: s for s in [
    RuleSpec("EM0", 0, (), side=True),
    RuleSpec("∧I", 2, ()),
    RuleSpec("∧E_l", 1, ()),
    RuleSpec("∧E_r", 1, ()),
    RuleSpec("∨I_l", 1, (), side=True),
    RuleSpec("∨I_r", 1, (), side=True),
    RuleSpec("∨E", 3, (1, 2)),
    RuleSpec("⊗I_l", 1, (), side=True),
    RuleSpec("⊗I_r", 1, (), side=True),
    RuleSpec("⊗E⁻", 3, (1, 2)),
    RuleSpec("⊗Sub", 2, (1,)),
    RuleSpec("Com⊗", 1, ()),
    RuleSpec("Ass⊗", 1, ()),
    RuleSpec("⊥I", 1, ()),
    RuleSpec("⊥E", 1, ()),
    RuleSpec("Dstr⊗∨", 1, ()),
    RuleSpec("DepI0", 1, ()),
    RuleSpec("DepIk", 1, (), side=True),   # discharges one label per argument, all in premise 0
    RuleSpec("DepE0", 3, (1, 2)),
    RuleSpec("DepEk", None, ()),
    RuleSpec("SE", 3, (1, 2), addr=True),
]}

#: ASCII spellings accepted when reading derivations
ALIASES = {
    "AndI": "∧I", "AndE_l": "∧E_l", "AndE_r": "∧E_r",
    "OrI_l": "∨I_l", "OrI_r": "∨I_r", "OrE": "∨E",
    "TensorI_l": "⊗I_l", "TensorI_r": "⊗I_r", "TensorE": "⊗E⁻", "TensorE-": "⊗E⁻",
    "TensorSub": "⊗Sub", "ComTensor": "Com⊗", "AssTensor": "Ass⊗",
    "BotI": "⊥I", "BotE": "⊥E", "DstrTensorOr": "Dstr⊗∨",
}


def rule_token(name: str) -> str:
    name = ALIASES.get(name, name)
    if name not in RULES:
        raise ProofFormatError(f"unknown rule {name!r}")
    return name


_LABEL = re.compile(r"[^\s()\[\]\"]+")


class Derivation:
    __slots__ = ("_open", "_concl", "_checked", "__weakref__")

    def _init_cache(self):
        self._open = None
        self._concl = None
        self._checked = None

    @property
    def premises(self) -> tuple["Derivation", ...]:
        return ()

    @property
    def open_labels(self) -> frozenset[str]:
        """Labels of hypotheses not discharged within this derivation."""
        if self._open is None:
            self._open = self._compute_open()
        return self._open

    @property
    def conclusion(self) -> Formula:
        if self._concl is None:
            from .checker import infer_conclusion
            self._concl = infer_conclusion(self)
        return self._concl

    def __str__(self):
        return render_proof(self)


class Hyp(Derivation):
    __slots__ = ("label", "formula")

    def __init__(self, label: str, formula: Formula):
        if not isinstance(label, str) or not _LABEL.fullmatch(label):
            raise ProofFormatError(f"bad hypothesis label {label!r}")
        self.label = label
        self.formula = formula
        self._init_cache()

    def _compute_open(self):
        return frozenset((self.label,))

    def __eq__(self, other):
        return isinstance(other, Hyp) and self.label == other.label and self.formula == other.formula

    def __hash__(self):
        return hash(("hyp", self.label, self.formula))

    def __repr__(self):
        return f"Hyp({self.label!r}, {render(self.formula)!r})"


class Node(Derivation):
    __slots__ = ("rule", "_premises", "discharges", "addr", "side", "_hash")

    def __init__(self, rule: str, premises: Iterable[Derivation] = (),
                 discharges: Iterable[str] = (), addr: int | None = None,
                 side: Formula | None = None):
        self.rule = rule_token(rule)
        self._premises = tuple(premises)
        self.discharges = tuple(discharges)
        for lab in self.discharges:
            if not isinstance(lab, str) or not _LABEL.fullmatch(lab):
                raise ProofFormatError(f"bad discharge label {lab!r}")
        self.addr = addr
        self.side = side
        self._hash = None
        self._init_cache()

    @property
    def premises(self):
        return self._premises

    def discharge_targets(self) -> list[tuple[str, int]]:
        """(label, premise index) for every discharged label."""
        if self.rule == "DepIk":
            return [(lab, 0) for lab in self.discharges]
        slots = RULES[self.rule].discharges
        return list(zip(self.discharges, slots))

    def _compute_open(self):
        bound: dict[int, set[str]] = {}
        for lab, idx in self.discharge_targets():
            bound.setdefault(idx, set()).add(lab)
        out: set[str] = set()
        for i, p in enumerate(self._premises):
            labels = p.open_labels
            if i in bound:
                labels = labels - bound[i]
            out |= labels
        return frozenset(out)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Node):
            return False
        if (self.rule, self.discharges, self.addr, self.side) != (other.rule, other.discharges, other.addr, other.side):
            return False
        return len(self._premises) == len(other._premises) and all(
            a == b for a, b in zip(self._premises, other._premises))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rule, self.discharges, self.addr, self.side,
                               tuple(hash(p) for p in self._premises)))
        return self._hash

    def __repr__(self):
        return f"Node({self.rule!r}, {len(self._premises)} premises)"


@dataclass(frozen=True)
class Judgment:
    context: frozenset
    conclusion: Formula

    def __str__(self):
        ctx = ", ".join(sorted(render(f) for f in self.context))
        return f"{{{ctx}}} ⊢ {render(self.conclusion)}"


def walk(d: Derivation, skip=None) -> Iterator[Derivation]:
    """Distinct nodes of ``d`` (shared subtrees visited once), children first.

    Nodes for which ``skip(node)`` is true are neither yielded nor entered.
    """
    seen: set[int] = set()
    stack: list[tuple[Derivation, bool]] = [(d, False)]
    while stack:
        node, done = stack.pop()
        if done:
            yield node
            continue
        if id(node) in seen or (skip is not None and skip(node)):
            continue
        seen.add(id(node))
        stack.append((node, True))
        for p in reversed(node.premises):
            if id(p) not in seen:
                stack.append((p, False))


def graft(d: Derivation, label: str, replacement: Derivation) -> Derivation:
    """Put ``replacement`` in place of every open hypothesis ``label`` of ``d``."""
    incoming = replacement.open_labels
    memo: dict[int, Derivation] = {}

    def go(node: Derivation) -> Derivation:
        if label not in node.open_labels:
            return node
        if isinstance(node, Hyp):
            if node.formula != replacement.conclusion:
                raise ValueError(f"cannot graft a proof of {render(replacement.conclusion)} "
                                 f"onto hypothesis {label} of {render(node.formula)}")
            return replacement
        key = id(node)
        if key in memo:
            return memo[key]
        bound: dict[int, set[str]] = {}
        for lab, idx in node.discharge_targets():
            bound.setdefault(idx, set()).add(lab)
        kids = []
        for i, p in enumerate(node.premises):
            closed = bound.get(i, set())
            if label in closed or label not in p.open_labels:
                kids.append(p)
                continue
            if closed & incoming:
                raise ValueError(f"grafting would capture hypotheses {sorted(closed & incoming)}")
            kids.append(go(p))
        out = Node(node.rule, kids, node.discharges, node.addr, node.side)
        memo[key] = out
        return out

    return go(d)


# ---------------------------------------------------------------- text format

def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def render_proof(d: Derivation) -> str:
    lines: list[str] = []
    _render(d, 0, lines)
    return "\n".join(lines) + "\n"


def _options(node: Node) -> str:
    parts = []
    if node.discharges:
        parts.append("[discharges: " + " ".join(node.discharges) + "]")
    if node.addr is not None:
        parts.append(f"[addr: {node.addr}]")
    if node.side is not None:
        parts.append(f"[side: {_quote(render(node.side))}]")
    return " ".join(parts)


def _render(d: Derivation, indent: int, lines: list[str]) -> None:
    pad = "  " * indent
    if isinstance(d, Hyp):
        lines.append(f"{pad}(hyp {d.label} {_quote(render(d.formula))})")
        return
    opts = _options(d)
    if not d.premises:
        lines.append(f"{pad}({d.rule}{' ' + opts if opts else ''})")
        return
    lines.append(f"{pad}({d.rule}")
    for p in d.premises:
        _render(p, indent + 1, lines)
    if opts:
        lines[-1] += "\n" + "  " * (indent + 1) + opts + ")"
    else:
        lines[-1] += ")"


_TOK = re.compile(r'\s*(?:(\()|(\))|(\[)|(\])|("(?:[^"\\]|\\.)*")|([^\s()\[\]"]+))')


def _tokens(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOK.match(text, pos)
        if m is None or m.end() == pos:
            raise ProofFormatError(f"cannot read derivation text at offset {pos}")
        kinds = ["(", ")", "[", "]", "str", "word"]
        for kind, grp in zip(kinds, m.groups()):
            if grp is not None:
                value = grp
                if kind == "str":
                    value = re.sub(r"\\(.)", r"\1", grp[1:-1])
                out.append((kind, value, m.start(m.lastindex)))
                break
        pos = m.end()
    return out


def parse_proof(text: str) -> Derivation:
    toks = _tokens(text)
    i = 0

    def expect(kind):
        nonlocal i
        if i >= len(toks) or toks[i][0] != kind:
            where = toks[i][2] if i < len(toks) else len(text)
            raise ProofFormatError(f"expected {kind!r} at offset {where}")
        i += 1
        return toks[i - 1][1]

    def formula(raw: str) -> Formula:
        try:
            return parse(raw)
        except FormulaSyntaxError as exc:
            raise ProofFormatError(f"bad formula {raw!r}: {exc}") from None

    def node() -> Derivation:
        nonlocal i
        expect("(")
        head = expect("word")
        if head == "hyp":
            label = expect("word")
            f = formula(expect("str"))
            expect(")")
            return Hyp(label, f)
        rule = rule_token(head)
        kids = []
        discharges: list[str] = []
        addr = None
        side = None
        while i < len(toks) and toks[i][0] == "(":
            kids.append(node())
        while i < len(toks) and toks[i][0] == "[":
            i += 1
            key = expect("word")
            if key == "discharges:":
                while i < len(toks) and toks[i][0] == "word":
                    discharges.append(toks[i][1])
                    i += 1
            elif key == "addr:":
                raw = expect("word")
                if not raw.isdigit():
                    raise ProofFormatError(f"address must be a positive integer, got {raw!r}")
                addr = int(raw)
            elif key == "side:":
                side = formula(expect("str"))
            else:
                raise ProofFormatError(f"unknown annotation {key!r}")
            expect("]")
        expect(")")
        return Node(rule, kids, discharges, addr, side)

    d = node()
    if i != len(toks):
        raise ProofFormatError(f"trailing text at offset {toks[i][2]}")
    return d
