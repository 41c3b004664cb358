"""Line-based proofs for the Hilbert systems of InqL and PID.

Intuitionistic axioms are matched against a fixed list of nine schemas::

    K      A -> (B -> A)
    S      (A -> (B -> C)) -> ((A -> B) -> (A -> C))
    AND-L  A & B -> A
    AND-R  A & B -> B
    AND-I  A -> (B -> A & B)
    OR-L   A -> A | B
    OR-R   B -> A | B
    OR-E   (A -> C) -> ((B -> C) -> (A | B -> C))
    EFQ    bot -> A

``AX-ND`` accepts any instance of ``(~A -> D) -> E`` where ``D`` is a
disjunction tree of negations ``~B_i`` and ``E`` is the same tree with each
leaf replaced by ``~A -> ~B_i``.  ``AX-DNE`` accepts ``~~p -> p`` for a
variable ``p`` only.  ``AX-PID4``/``AX-PID5`` accept the dependence axioms in
literal form, either as a biconditional (a conjunction of both implications)
or as one of the two directions.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import FormulaSyntaxError, ProofFormatError, RuleViolation
from ..formula import (And, Bot, Dep, Formula, Fragment, IDisj, Impl, Var, check_fragment,
                       flatten, parse, render)
from .checker import ProofSystem
from .derivation import Judgment

__all__ = ["HilbertLine", "HilbertProof", "IPL_SCHEMAS", "check_hilbert", "parse_hilbert",
           "render_hilbert", "match_schema"]

TAGS = ("HYP", "AX-IPL", "AX-ND", "AX-DNE", "AX-PID4", "AX-PID5", "MP")


@dataclass(frozen=True)
class HilbertLine:
    formula: Formula
    tag: str
    refs: tuple[int, ...] = ()

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ProofFormatError(f"unknown justification {self.tag!r}")
        if (self.tag == "MP") != (len(self.refs) == 2):
            raise ProofFormatError("MP cites exactly two earlier lines; other tags cite none")


@dataclass(frozen=True)
class HilbertProof:
    lines: tuple[HilbertLine, ...]

    def __str__(self):
        return render_hilbert(self)


# ---------------------------------------------------------------- schema matching

def _s(op, a, b):
    return (op, a, b)


IPL_SCHEMAS: dict[str, tuple] = {
    "K": _s("->", "A", _s("->", "B", "A")),
    "S": _s("->", _s("->", "A", _s("->", "B", "C")),
            _s("->", _s("->", "A", "B"), _s("->", "A", "C"))),
    "AND-L": _s("->", _s("&", "A", "B"), "A"),
    "AND-R": _s("->", _s("&", "A", "B"), "B"),
    "AND-I": _s("->", "A", _s("->", "B", _s("&", "A", "B"))),
    "OR-L": _s("->", "A", _s("|", "A", "B")),
    "OR-R": _s("->", "B", _s("|", "A", "B")),
    "OR-E": _s("->", _s("->", "A", "C"),
               _s("->", _s("->", "B", "C"), _s("->", _s("|", "A", "B"), "C"))),
    "EFQ": _s("->", "bot", "A"),
}

_OPS = {"->": Impl, "&": And, "|": IDisj}


def match_schema(pattern, f: Formula, binding: dict | None = None) -> dict | None:
    """Bind the metavariables of ``pattern`` so that it becomes ``f``, or return None."""
    binding = {} if binding is None else binding
    if pattern == "bot":
        return binding if isinstance(f, Bot) else None
    if isinstance(pattern, str):
        have = binding.get(pattern)
        if have is None:
            binding[pattern] = f
            return binding
        return binding if have == f else None
    op, left, right = pattern
    if type(f) is not _OPS[op]:
        return None
    if match_schema(left, f.left, binding) is None:
        return None
    return match_schema(right, f.right, binding)


def _ipl_instance(f: Formula) -> str | None:
    for name, pattern in IPL_SCHEMAS.items():
        if match_schema(pattern, f) is not None:
            return name
    return None


def _negation_of(f: Formula) -> Formula | None:
    if isinstance(f, Impl) and isinstance(f.right, Bot):
        return f.left
    return None


def _nd_instance(f: Formula) -> bool:
    if not isinstance(f, Impl) or not isinstance(f.left, Impl):
        return False
    neg_a, tree = f.left.left, f.left.right
    if _negation_of(neg_a) is None:
        return False

    def same(d1: Formula, d2: Formula) -> bool:
        if isinstance(d1, IDisj):
            return isinstance(d2, IDisj) and same(d1.left, d2.left) and same(d1.right, d2.right)
        if _negation_of(d1) is None:
            return False
        return d2 == Impl(neg_a, d1)

    return same(tree, f.right)


def _dne_instance(f: Formula) -> bool:
    if not isinstance(f, Impl) or not isinstance(f.right, Var):
        return False
    inner = _negation_of(f.left)
    return inner is not None and _negation_of(inner) == f.right


def _directions(f: Formula, left: Formula, right: Formula) -> bool:
    there, back = Impl(left, right), Impl(right, left)
    return f in (there, back, And(there, back), And(back, there))


def _subterms(f: Formula):
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(g.children)


def _pid4_instance(f: Formula) -> bool:
    for atom in _subterms(f):
        if isinstance(atom, Dep) and not atom.args:
            i = atom.target
            if _directions(f, atom, IDisj(Var(i), Impl(Var(i), Bot()))):
                return True
    return False


def _pid5_instance(f: Formula) -> bool:
    terms = list(_subterms(f))
    for atom in terms:
        if not (isinstance(atom, Dep) and atom.args):
            continue
        for rhs in terms:
            if (isinstance(rhs, Impl) and rhs.right == Dep((), atom.target)
                    and flatten(rhs.left, And) == [Dep((), a) for a in atom.args]
                    and _directions(f, atom, rhs)):
                return True
    return False


_AXIOM = {
    "AX-ND": _nd_instance,
    "AX-DNE": _dne_instance,
    "AX-PID4": _pid4_instance,
    "AX-PID5": _pid5_instance,
}


def check_hilbert(proof: HilbertProof, system: "str | ProofSystem" = ProofSystem.H_InqL) -> Judgment:
    system = ProofSystem.from_name(system)
    if system not in (ProofSystem.H_InqL, ProofSystem.H_PID):
        raise ValueError(f"{system.name} is not a Hilbert system")
    if not proof.lines:
        raise RuleViolation(None, "a proof needs at least one line")
    hyps = set()
    for n, line in enumerate(proof.lines, start=1):
        f = line.formula
        check_fragment(f, system.fragment)
        tag = line.tag
        if tag == "HYP":
            hyps.add(f)
        elif tag == "AX-IPL":
            if _ipl_instance(f) is None:
                raise RuleViolation(n, f"line {n}: {render(f)} is not an instance of an intuitionistic axiom")
        elif tag == "MP":
            i, j = line.refs
            if not (1 <= i < n and 1 <= j < n):
                raise RuleViolation(n, f"line {n}: MP may only cite earlier lines")
            a, b = proof.lines[i - 1].formula, proof.lines[j - 1].formula
            if not (b == Impl(a, f) or a == Impl(b, f)):
                raise RuleViolation(n, f"line {n}: lines {i} and {j} do not yield {render(f)} by MP")
        else:
            if tag in ("AX-PID4", "AX-PID5") and system is not ProofSystem.H_PID:
                raise RuleViolation(n, f"line {n}: {tag} is only an axiom of the PID system")
            if not _AXIOM[tag](f):
                raise RuleViolation(n, f"line {n}: {render(f)} is not an {tag} axiom")
    return Judgment(frozenset(hyps), proof.lines[-1].formula)


# ---------------------------------------------------------------- text format

_LINE = re.compile(r'\s*(\d+)\.\s+"((?:[^"\\]|\\.)*)"\s+(HYP|AX-IPL|AX-ND|AX-DNE|AX-PID4|AX-PID5|MP\s+(\d+)\s+(\d+))\s*$')


def render_hilbert(proof: HilbertProof) -> str:
    out = []
    for n, line in enumerate(proof.lines, start=1):
        text = render(line.formula).replace("\\", "\\\\").replace('"', '\\"')
        tag = line.tag if line.tag != "MP" else f"MP {line.refs[0]} {line.refs[1]}"
        out.append(f'{n}. "{text}" {tag}')
    return "\n".join(out) + "\n"


def parse_hilbert(text: str, system: "str | ProofSystem | None" = None) -> HilbertProof:
    """Read numbered proof lines; ``~p`` is read as ``p -> bot``."""
    fragment = ProofSystem.from_name(system).fragment if system is not None else Fragment.PID
    lines = []
    for raw in text.splitlines():
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        m = _LINE.match(raw)
        if m is None:
            raise ProofFormatError(f"cannot read proof line {raw.strip()!r}")
        if int(m.group(1)) != len(lines) + 1:
            raise ProofFormatError(f"expected line number {len(lines) + 1}, got {m.group(1)}")
        src = re.sub(r"\\(.)", r"\1", m.group(2))
        try:
            f = parse(src, fragment)
        except FormulaSyntaxError as exc:
            raise ProofFormatError(f"line {m.group(1)}: {exc}") from None
        if m.group(4) is not None:
            lines.append(HilbertLine(f, "MP", (int(m.group(4)), int(m.group(5)))))
        else:
            lines.append(HilbertLine(f, m.group(3)))
    return HilbertProof(tuple(lines))
