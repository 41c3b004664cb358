"""Formula syntax: AST, language fragments, parsing, printing and occurrence
addressing.

Formulas are immutable and hash-consed: building the same tree twice yields
the same object, so equality is usually an identity check and formulas are
cheap dictionary keys.

Concrete syntax (whitespace-insensitive)::

    formula := impl ("<->" impl)?
    impl    := idisj ("->" impl)?          right associative
    idisj   := tensor ("|" tensor)*        intuitionistic disjunction
    tensor  := conj ("+" conj)*            tensor (split) disjunction
    conj    := unary ("&" unary)*
    unary   := "~" unary | atom
    atom    := var | "bot" | "=(" var ("," var)* ")" | "(" formula ")"
    var     := "p" digits

``a <-> b`` is shorthand for ``(a -> b) & (b -> a)``; it is never printed.
"""
from __future__ import annotations

import enum
import re
import weakref
from typing import Iterable, Iterator

from .errors import BadAddress, FormulaSyntaxError, FragmentViolation

__all__ = [
    "Formula", "Var", "NegVar", "Bot", "Dep", "And", "Tensor", "IDisj", "Impl",
    "BOT", "Fragment", "parse", "render", "in_fragment", "check_fragment",
    "vars_of", "occurrences", "subformula_at", "replace_at", "depth", "size",
    "neg", "literal", "conj", "tensor", "disj", "flatten",
]


_TABLE: "weakref.WeakValueDictionary[tuple, Formula]" = weakref.WeakValueDictionary()


class Formula:
    __slots__ = ("_hash", "__weakref__")
    _tag = 0

    def __new__(cls, *args):
        key = (cls, args)
        obj = _TABLE.get(key)
        if obj is None:
            obj = object.__new__(cls)
            obj._setup(*args)
            obj._hash = hash((cls._tag, args))
            _TABLE[key] = obj
        return obj

    def _setup(self, *args):  # pragma: no cover - overridden
        raise NotImplementedError

    def _fields(self) -> tuple:
        raise NotImplementedError

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if type(self) is not type(other) or self._hash != other._hash:
            return False
        return self._fields() == other._fields()

    def __ne__(self, other):
        return not self == other

    def __reduce__(self):
        return (type(self), self._fields())

    def __setattr__(self, name, value):
        if hasattr(self, "_hash"):
            raise AttributeError("formulas are immutable")
        object.__setattr__(self, name, value)

    def __repr__(self):
        return f"{type(self).__name__}({', '.join(map(repr, self._fields()))})"

    def __str__(self):
        return render(self)

    @property
    def children(self) -> tuple["Formula", ...]:
        return ()


class Var(Formula):
    __slots__ = ("index",)
    _tag = 1
    __match_args__ = ("index",)

    def __new__(cls, index: int):
        if not isinstance(index, int) or index < 0:
            raise ValueError(f"variable index must be a natural number, got {index!r}")
        return super().__new__(cls, index)

    def _setup(self, index):
        self.index = index

    def _fields(self):
        return (self.index,)


class NegVar(Formula):
    __slots__ = ("index",)
    _tag = 2
    __match_args__ = ("index",)

    def __new__(cls, index: int):
        if not isinstance(index, int) or index < 0:
            raise ValueError(f"variable index must be a natural number, got {index!r}")
        return super().__new__(cls, index)

    def _setup(self, index):
        self.index = index

    def _fields(self):
        return (self.index,)


class Bot(Formula):
    __slots__ = ()
    _tag = 3

    def __new__(cls):
        return super().__new__(cls)

    def _setup(self):
        pass

    def _fields(self):
        return ()


class Dep(Formula):
    """Dependence atom; ``args`` may be empty (constancy) and may repeat."""

    __slots__ = ("args", "target")
    _tag = 4
    __match_args__ = ("args", "target")

    def __new__(cls, args: Iterable[int], target: int):
        args = tuple(args)
        for i in args + (target,):
            if not isinstance(i, int) or i < 0:
                raise ValueError(f"variable index must be a natural number, got {i!r}")
        return super().__new__(cls, args, target)

    def _setup(self, args, target):
        self.args = args
        self.target = target

    def _fields(self):
        return (self.args, self.target)

    @property
    def is_constancy(self) -> bool:
        return not self.args


class _Binary(Formula):
    __slots__ = ("left", "right")
    __match_args__ = ("left", "right")

    def __new__(cls, left: Formula, right: Formula):
        if not isinstance(left, Formula) or not isinstance(right, Formula):
            raise TypeError("binary connectives take two formulas")
        return super().__new__(cls, left, right)

    def _setup(self, left, right):
        self.left = left
        self.right = right

    def _fields(self):
        return (self.left, self.right)

    @property
    def children(self):
        return (self.left, self.right)


class And(_Binary):
    __slots__ = ()
    _tag = 5


class Tensor(_Binary):
    __slots__ = ()
    _tag = 6


class IDisj(_Binary):
    __slots__ = ()
    _tag = 7


class Impl(_Binary):
    __slots__ = ()
    _tag = 8


BOT = Bot()


# ---------------------------------------------------------------- helpers

def neg(f: Formula) -> Formula:
    """Negation: a negated literal for variables, ``f -> bot`` otherwise."""
    if isinstance(f, Var):
        return NegVar(f.index)
    return Impl(f, BOT)


def literal(index: int, value: int) -> Formula:
    return Var(index) if value else NegVar(index)


def _fold(cls, items: Iterable[Formula], empty: Formula | None) -> Formula:
    items = list(items)
    if not items:
        if empty is None:
            raise ValueError(f"empty {cls.__name__} has no formula")
        return empty
    out = items[0]
    for item in items[1:]:
        out = cls(out, item)
    return out


def conj(items: Iterable[Formula], empty: Formula | None = None) -> Formula:
    """Left-nested conjunction."""
    return _fold(And, items, empty)


def tensor(items: Iterable[Formula], empty: Formula | None = None) -> Formula:
    """Left-nested tensor."""
    return _fold(Tensor, items, empty)


def disj(items: Iterable[Formula], empty: Formula | None = None) -> Formula:
    """Left-nested intuitionistic disjunction."""
    return _fold(IDisj, items, empty)


def flatten(f: Formula, cls: type) -> list[Formula]:
    """Operands of a maximal ``cls``-tree rooted at ``f``, left to right."""
    out: list[Formula] = []
    stack = [f]
    while stack:
        g = stack.pop()
        if type(g) is cls:
            stack.append(g.right)
            stack.append(g.left)
        else:
            out.append(g)
    return out


_VARS_CACHE: "weakref.WeakKeyDictionary[Formula, frozenset]" = weakref.WeakKeyDictionary()


def vars_of(f: Formula) -> frozenset[int]:
    """Indices of all variables occurring in ``f`` (dependence atoms included)."""
    try:
        return _VARS_CACHE[f]
    except KeyError:
        pass
    if isinstance(f, (Var, NegVar)):
        out = frozenset((f.index,))
    elif isinstance(f, Bot):
        out = frozenset()
    elif isinstance(f, Dep):
        out = frozenset(f.args + (f.target,))
    else:
        out = vars_of(f.left) | vars_of(f.right)
    _VARS_CACHE[f] = out
    return out


def depth(f: Formula) -> int:
    """Nesting depth of binary connectives; atoms and literals have depth 0."""
    if isinstance(f, _Binary):
        return 1 + max(depth(f.left), depth(f.right))
    return 0


def size(f: Formula) -> int:
    if isinstance(f, _Binary):
        return 1 + size(f.left) + size(f.right)
    return 1


# ---------------------------------------------------------------- fragments

class Fragment(enum.Enum):
    CPL = "cpl"
    PT0 = "pt0"
    PD = "pd"
    PDv = "pdv"
    PID = "pid"
    InqL = "inql"

    @classmethod
    def from_name(cls, name: "str | Fragment") -> "Fragment":
        if isinstance(name, Fragment):
            return name
        key = name.strip().lower()
        for member in cls:
            if member.value == key:
                return member
        raise ValueError(f"unknown fragment {name!r}")


_ALLOWED = {
    Fragment.PT0: {Var, NegVar, Bot, Dep, And, Tensor, IDisj, Impl},
    Fragment.CPL: {Var, NegVar, Bot, And, Tensor, Impl},
    Fragment.PD: {Var, NegVar, Bot, Dep, And, Tensor},
    Fragment.PDv: {Var, NegVar, Bot, And, Tensor, IDisj},
    Fragment.PID: {Var, Bot, Dep, And, IDisj, Impl},
    Fragment.InqL: {Var, Bot, And, IDisj, Impl},
}

_NODE_NAMES = {
    Var: "variable", NegVar: "negated variable", Bot: "bot",
    Dep: "dependence atom", And: "conjunction (&)", Tensor: "tensor (+)",
    IDisj: "intuitionistic disjunction (|)", Impl: "implication (->)",
}

# keyed by the raw enum value: hashing enum members goes through Python code
_FRAG_CACHE: dict[str, dict[Formula, Formula | None]] = {fr.value: {} for fr in Fragment}
_ALLOWED_BY_VALUE = {fr.value: kinds for fr, kinds in _ALLOWED.items()}


def _offender(f: Formula, fragment: Fragment) -> Formula | None:
    key = fragment._value_
    cache = _FRAG_CACHE[key]
    try:
        return cache[f]
    except KeyError:
        pass
    allowed = _ALLOWED_BY_VALUE[key]
    bad = None
    stack = [f]
    while stack:
        g = stack.pop()
        if type(g) not in allowed:
            bad = g
            break
        stack.extend(g.children)
    if len(cache) > 200_000:
        cache.clear()
    cache[f] = bad
    return bad


def in_fragment(f: Formula, fragment: "Fragment | str") -> bool:
    if type(fragment) is not Fragment:
        fragment = Fragment.from_name(fragment)
    return _offender(f, fragment) is None


def check_fragment(f: Formula, fragment: "Fragment | str") -> Formula:
    if type(fragment) is not Fragment:
        fragment = Fragment.from_name(fragment)
    bad = _offender(f, fragment)
    if bad is not None:
        raise FragmentViolation(_NODE_NAMES[type(bad)], fragment.name)
    return f


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(<->|->|[|+&~(),=])|(bot)\b|p(\d+)|(\S))")


def _tokenize(text: str) -> list[tuple[str, object, int]]:
    tokens = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.end() - len(m.group(0).lstrip())
        if m.group(1):
            tokens.append((m.group(1), None, start))
        elif m.group(2):
            tokens.append(("bot", None, start))
        elif m.group(3) is not None:
            tokens.append(("var", int(m.group(3)), start))
        else:
            raise FormulaSyntaxError(f"unexpected character {m.group(4)!r}", start,
                                     ("p<digits>", "bot", "=(", "(", "~"))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, negvar: bool):
        self.tokens = _tokenize(text)
        self.i = 0
        self.negvar = negvar

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def take(self, kind: str, expected: tuple[str, ...]):
        tok = self.tokens[self.i]
        if tok[0] != kind:
            shown = "end of input" if tok[0] == "end" else repr(tok[0] if tok[1] is None else f"p{tok[1]}")
            raise FormulaSyntaxError(f"unexpected {shown}", tok[2], expected)
        self.i += 1
        return tok

    def formula(self) -> Formula:
        left = self.impl()
        if self.peek() == "<->":
            self.i += 1
            right = self.impl()
            return And(Impl(left, right), Impl(right, left))
        return left

    def impl(self) -> Formula:
        left = self.idisj()
        if self.peek() == "->":
            self.i += 1
            return Impl(left, self.impl())
        return left

    def _chain(self, op: str, cls, sub) -> Formula:
        out = sub()
        while self.peek() == op:
            self.i += 1
            out = cls(out, sub())
        return out

    def idisj(self):
        return self._chain("|", IDisj, self.tensor)

    def tensor(self):
        return self._chain("+", Tensor, self.conj)

    def conj(self):
        return self._chain("&", And, self.unary)

    def unary(self) -> Formula:
        if self.peek() == "~":
            self.i += 1
            inner = self.unary()
            if isinstance(inner, Var) and self.negvar:
                return NegVar(inner.index)
            return Impl(inner, BOT)
        return self.atom()

    _ATOM_START = ("p<digits>", "bot", "=(", "(", "~")

    def atom(self) -> Formula:
        kind, value, pos = self.tokens[self.i]
        if kind == "var":
            self.i += 1
            return Var(value)
        if kind == "bot":
            self.i += 1
            return BOT
        if kind == "=":
            self.i += 1
            self.take("(", ("(",))
            idx = [self.take("var", ("p<digits>",))[1]]
            while self.peek() == ",":
                self.i += 1
                idx.append(self.take("var", ("p<digits>",))[1])
            self.take(")", (",", ")"))
            return Dep(idx[:-1], idx[-1])
        if kind == "(":
            self.i += 1
            inner = self.formula()
            self.take(")", (")",))
            return inner
        shown = "end of input" if kind == "end" else repr(kind)
        raise FormulaSyntaxError(f"unexpected {shown}", pos, self._ATOM_START)


def parse(text: str, fragment: "Fragment | str" = Fragment.PT0) -> Formula:
    """Parse ``text`` and check the result lies in ``fragment``.

    In fragments without negated literals but with implication (PID, InqL),
    ``~p`` reads as ``p -> bot`` so the usual notation stays available.
    """
    fragment = Fragment.from_name(fragment)
    negvar = NegVar in _ALLOWED[fragment]
    p = _Parser(text, negvar)
    f = p.formula()
    if p.peek() != "end":
        _, _, pos = p.tokens[p.i]
        raise FormulaSyntaxError("trailing input", pos, ("->", "|", "+", "&", "end of input"))
    return check_fragment(f, fragment)


# ---------------------------------------------------------------- printing

_PREC = {Impl: 1, IDisj: 2, Tensor: 3, And: 4, NegVar: 5}
_OPS = {Impl: " -> ", IDisj: " | ", Tensor: " + ", And: " & "}


def _prec(f: Formula) -> int:
    return _PREC.get(type(f), 6)


def render(f: Formula) -> str:
    """Print with the fewest parentheses that still reparse to ``f``."""
    parts: list[str] = []
    _render(f, parts)
    return "".join(parts)


def _render(f: Formula, out: list[str]) -> None:
    t = type(f)
    if t is Var:
        out.append(f"p{f.index}")
    elif t is NegVar:
        out.append(f"~p{f.index}")
    elif t is Bot:
        out.append("bot")
    elif t is Dep:
        out.append("=(" + ",".join(f"p{i}" for i in f.args + (f.target,)) + ")")
    else:
        p = _PREC[t]
        if t is Impl:
            lparen = _prec(f.left) <= p
            rparen = False
        else:
            lparen = _prec(f.left) < p
            rparen = _prec(f.right) <= p
        _wrapped(f.left, lparen, out)
        out.append(_OPS[t])
        _wrapped(f.right, rparen, out)


def _wrapped(f: Formula, paren: bool, out: list[str]) -> None:
    if paren:
        out.append("(")
        _render(f, out)
        out.append(")")
    else:
        _render(f, out)


# ---------------------------------------------------------------- addressing
#
# Symbols are numbered left to right over the fully parenthesized string in
# which every binary subformula other than the whole formula carries its own
# pair of parentheses.  Counted symbols: a variable (1), bot (1), a negation
# sign (1), each binary connective (1), "=", "(" and ")".  Commas are not
# counted.  A subformula's address is the number of its first symbol, not of
# the parenthesis wrapped around it, so the whole formula and its leftmost
# descendants share address 1.

def _symbols(f: Formula) -> int:
    t = type(f)
    if t is Var or t is Bot:
        return 1
    if t is NegVar:
        return 2
    if t is Dep:
        return 3 + len(f.args) + 1
    return _wrapped_symbols(f.left) + 1 + _wrapped_symbols(f.right)


def _wrapped_symbols(f: Formula) -> int:
    return _symbols(f) + (2 if isinstance(f, _Binary) else 0)


def _walk(f: Formula, start: int, path: tuple[int, ...], out: list) -> None:
    out.append((start, f, path))
    if isinstance(f, _Binary):
        left_start = start + (1 if isinstance(f.left, _Binary) else 0)
        _walk(f.left, left_start, path + (0,), out)
        op_pos = start + _wrapped_symbols(f.left)
        right_start = op_pos + 1 + (1 if isinstance(f.right, _Binary) else 0)
        _walk(f.right, right_start, path + (1,), out)


def _occurrences_with_paths(f: Formula) -> list[tuple[int, Formula, tuple[int, ...]]]:
    out: list = []
    _walk(f, 1, (), out)
    return out


def occurrences(f: Formula) -> list[tuple[int, Formula]]:
    """All subformula occurrences with their addresses, in preorder.

    Addresses never decrease; equal addresses occur only along a left spine
    and are listed outermost first.
    """
    return [(a, g) for a, g, _ in _occurrences_with_paths(f)]


def _locate(f: Formula, address: int, expected: Formula | None) -> tuple[Formula, tuple[int, ...]]:
    hits = [(g, path) for a, g, path in _occurrences_with_paths(f) if a == address]
    if expected is not None:
        hits = [(g, path) for g, path in hits if g == expected]
    if not hits:
        what = f" holding {render(expected)}" if expected is not None else ""
        raise BadAddress(f"no subformula occurrence{what} starts at symbol {address} of {render(f)}")
    return hits[0]


def subformula_at(f: Formula, address: int, expected: Formula | None = None) -> Formula:
    """The occurrence at ``address``; the outermost one unless ``expected`` says which."""
    return _locate(f, address, expected)[0]


def replace_path(f: Formula, path: tuple[int, ...], new: Formula) -> Formula:
    if not path:
        return new
    if path[0] == 0:
        return type(f)(replace_path(f.left, path[1:], new), f.right)
    return type(f)(f.left, replace_path(f.right, path[1:], new))


def replace_at(f: Formula, address: int, new: Formula, expected: Formula | None = None) -> Formula:
    """Replace exactly one occurrence; see :func:`subformula_at` for ties."""
    _, path = _locate(f, address, expected)
    return replace_path(f, path, new)


def subformulas(f: Formula) -> Iterator[Formula]:
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(reversed(g.children))
