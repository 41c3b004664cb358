"""Translations that remove dependence atoms, and realizations.

For an atom ``=(p_i1,...,p_ik,p_j)`` let ``K`` be the set of its argument
variables.  Case splits over valuations ``s`` on ``K`` are emitted as a
left-nested tensor, listing ``s`` from the all-true valuation downwards; each
case is the conjunction of the argument literals fixed by ``s`` (one per
argument position, so repeated arguments repeat their literal) followed by
the case body.

A realizing function ``f: 2^K -> 2`` picks a value of the target for each
case.  Realizing functions are enumerated from the constant-1 function
downwards (descending truth-table mask).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Sequence

from .errors import MismatchedSequence
from .formula import (Dep, Formula, IDisj, Impl, NegVar, Var, conj, disj, literal,
                      occurrences, replace_path, tensor, _occurrences_with_paths)
from .team import IndexSet, index_set

__all__ = ["RealizingFunction", "realizing_functions", "translate_atom", "eliminate_dep",
           "realization", "star", "dep_occurrences", "realize", "star_translate",
           "complete_realizations"]


@dataclass(frozen=True)
class RealizingFunction:
    """``table[c]`` is the value on the valuation of ``args`` with code ``c``."""

    args: IndexSet
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != 1 << len(self.args) or any(b not in (0, 1) for b in self.table):
            raise ValueError("a realizing function needs one bit per valuation on its arguments")

    @classmethod
    def from_mask(cls, args: Iterable[int], mask: int) -> "RealizingFunction":
        args = index_set(args)
        return cls(args, tuple(mask >> c & 1 for c in range(1 << len(args))))

    @property
    def mask(self) -> int:
        return sum(b << c for c, b in enumerate(self.table))

    def __call__(self, code: int) -> int:
        return self.table[code]

    def __str__(self):
        return "".join(map(str, self.table))


def realizing_functions(args: Iterable[int]) -> list[RealizingFunction]:
    args = index_set(args)
    count = 1 << (1 << len(args))
    return [RealizingFunction.from_mask(args, m) for m in range(count - 1, -1, -1)]


def _argument_set(atom: Dep) -> IndexSet:
    return index_set(atom.args)


def _case_codes(k: int) -> list[int]:
    return list(range((1 << k) - 1, -1, -1))


def _split(atom: Dep, body) -> Formula:
    """Tensor over the cases of the atom's arguments, ``body(code)`` per case."""
    K = _argument_set(atom)
    n = len(K)
    cases = []
    for code in _case_codes(n):
        value = {v: (code >> (n - 1 - p)) & 1 for p, v in enumerate(K)}
        lits = [literal(i, value[i]) for i in atom.args]
        cases.append(conj(lits + [body(code)]))
    return tensor(cases)


def _lem(j: int) -> Formula:
    return IDisj(Var(j), NegVar(j))


def realization(atom: Dep, f: RealizingFunction) -> Formula:
    """The classical formula fixing the target by ``f`` in every case."""
    if f.args != _argument_set(atom):
        raise MismatchedSequence(f"function over {list(f.args)} does not fit {atom}")
    return _split(atom, lambda code: literal(atom.target, f(code)))


def star(atom: Dep) -> Formula:
    """Case split on the arguments with the constancy atom of the target in each case."""
    return _split(atom, lambda code: Dep((), atom.target))


def translate_atom(atom: Dep, style: str = "tensor_lem") -> Formula:
    style = style.replace("-", "_")
    if style in ("tensor_lem", "lem"):
        return _split(atom, lambda code: _lem(atom.target))
    if style in ("realization_disjunction", "realizations"):
        return disj(realization(atom, f) for f in realizing_functions(atom.args))
    if style == "implication":
        if not atom.args:
            return atom
        return Impl(conj(Dep((), i) for i in atom.args), Dep((), atom.target))
    raise ValueError(f"unknown translation style {style!r}")


def _map_atoms(f: Formula, fn) -> Formula:
    if isinstance(f, Dep):
        return fn(f)
    if f.children:
        left = _map_atoms(f.left, fn)
        right = _map_atoms(f.right, fn)
        if left is f.left and right is f.right:
            return f
        return type(f)(left, right)
    return f


def translate_all(f: Formula, style: str) -> Formula:
    """Apply :func:`translate_atom` to every dependence atom in ``f``."""
    return _map_atoms(f, lambda a: translate_atom(a, style))


def eliminate_dep(f: Formula) -> Formula:
    """Remove every dependence atom via the implication form and ``p | ~p``."""
    def rewrite(a: Dep) -> Formula:
        if not a.args:
            return _lem(a.target)
        return Impl(conj(_lem(i) for i in a.args), _lem(a.target))
    return _map_atoms(f, rewrite)


# ---------------------------------------------------------------- occurrence sequences

Occurrence = tuple[int, Dep]


def dep_occurrences(f: Formula) -> list[Occurrence]:
    """Every dependence-atom occurrence of ``f`` with its address."""
    return [(a, g) for a, g in occurrences(f) if isinstance(g, Dep)]


def _paths(f: Formula, occ: Sequence[Occurrence]) -> list[tuple[int, ...]]:
    table = {}
    for a, g, path in _occurrences_with_paths(f):
        if isinstance(g, Dep):
            table[a] = (g, path)
    paths = []
    for a, atom in occ:
        hit = table.get(a)
        if hit is None or hit[0] != atom:
            raise MismatchedSequence(f"no occurrence of {atom} at address {a}")
        paths.append(hit[1])
    if len(set(paths)) != len(paths):
        raise MismatchedSequence("occurrence sequence lists an occurrence twice")
    return paths


def realize(f: Formula, occ: Sequence[Occurrence], functions: Sequence[RealizingFunction]) -> Formula:
    """Replace each listed occurrence by its realization under the matching function."""
    if len(occ) != len(functions):
        raise MismatchedSequence(f"{len(occ)} occurrences but {len(functions)} functions")
    paths = _paths(f, occ)
    out = f
    for (a, atom), fn, path in zip(occ, functions, paths):
        if fn.args != _argument_set(atom):
            raise MismatchedSequence(f"function over {list(fn.args)} does not fit {atom} at {a}")
        out = replace_path(out, path, realization(atom, fn))
    return out


def star_translate(f: Formula, occ: Sequence[Occurrence]) -> Formula:
    paths = _paths(f, occ)
    out = f
    for (_, atom), path in zip(occ, paths):
        out = replace_path(out, path, star(atom))
    return out


def complete_realizations(f: Formula) -> Iterator[tuple[tuple[RealizingFunction, ...], Formula]]:
    """All realizations over every atom occurrence, in enumeration order."""
    occ = dep_occurrences(f)
    choices = [realizing_functions(atom.args) for _, atom in occ]
    for functions in product(*choices):
        yield functions, realize(f, occ, functions)
