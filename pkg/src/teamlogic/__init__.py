"""Propositional logics of dependence under team semantics.

The top level re-exports the everyday entry points; the submodules hold
the rest (``formula``, ``team``, ``semantics``, ``decide``, ``normalform``,
``translate`` and ``proof``).
"""
from .decide import entails, equivalent, is_satisfiable, is_valid, truth_table
from .errors import TeamLogicError
from .formula import (BOT, And, Bot, Dep, Formula, Fragment, IDisj, Impl, NegVar, Tensor, Var,
                      parse, render)
from .normalform import NormalFormStyle, normalize, synthesize
from .semantics import denotation, eval_formula, is_flat
from .team import Team, TeamFamily, Valuation
from .translate import eliminate_dep, translate_atom

__version__ = "0.1.0"

__all__ = [
    "entails", "equivalent", "is_satisfiable", "is_valid", "truth_table",
    "TeamLogicError",
    "BOT", "And", "Bot", "Dep", "Formula", "Fragment", "IDisj", "Impl", "NegVar", "Tensor", "Var",
    "parse", "render",
    "NormalFormStyle", "normalize", "synthesize",
    "denotation", "eval_formula", "is_flat",
    "Team", "TeamFamily", "Valuation",
    "eliminate_dep", "translate_atom",
]
