"""Command-line front end.

Exit codes: 0 success or "true", 1 "false" (or a rejected proof, or a
non-entailment handed to ``prove``), 2 usage and input errors, 3 when an
exhaustive enumeration would exceed its size bound.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .decide import entails, equivalent, is_satisfiable, is_valid, truth_table
from .errors import (FormulaSyntaxError, FragmentViolation, NotEntailed, RuleViolation,
                     SizeGuard, TeamLogicError)
from .formula import Fragment, parse, render
from .normalform import NormalFormStyle, normalize, synthesize
from .proof import (ProofSystem, check_hilbert, check_nd, parse_hilbert, parse_proof, prove,
                    render_proof)
from .semantics import eval_formula, is_flat
from .team import read_family_json, read_team_csv
from .translate import translate_all

EXIT_TRUE, EXIT_FALSE, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3

_TRANSLATIONS = {"lem": "tensor_lem", "realizations": "realizations", "implication": "implication"}


class _Usage(Exception):
    """Bad input detected after argument parsing."""


def _formula(text: str, fragment: str | Fragment = Fragment.PT0):
    try:
        return parse(text, fragment)
    except FormulaSyntaxError as exc:
        # point at the offending character
        raise _Usage(f"{exc}\n  {text}\n  {' ' * exc.position}^") from None


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise _Usage(f"cannot read {path}: {exc.strerror}") from None


def _answer(value: bool, out) -> int:
    print("true" if value else "false", file=out)
    return EXIT_TRUE if value else EXIT_FALSE


def _var_list(text: str) -> list[int]:
    out = []
    for item in text.replace(" ", "").split(","):
        if not item:
            continue
        digits = item[1:] if item[:1] in ("p", "P") else item
        if not digits.isdigit():
            raise _Usage(f"bad variable {item!r} in --vars; use p1,p2 or 1,2")
        out.append(int(digits))
    return out


# ---------------------------------------------------------------- subcommands

def _cmd_parse(args, out) -> int:
    print(render(_formula(args.formula, args.fragment)), file=out)
    return EXIT_TRUE


def _cmd_eval(args, out) -> int:
    team = read_team_csv(_read(args.team))
    f = _formula(args.formula)
    return _answer(eval_formula(f, team, "oracle" if args.oracle else "fast"), out)


def _cmd_valid(args, out) -> int:
    return _answer(is_valid(_formula(args.formula)), out)


def _cmd_sat(args, out) -> int:
    return _answer(is_satisfiable(_formula(args.formula)), out)


def _cmd_entails(args, out) -> int:
    premises = [_formula(p) for p in args.premise]
    return _answer(entails(premises, _formula(args.formula)), out)


def _cmd_equiv(args, out) -> int:
    return _answer(equivalent(_formula(args.left), _formula(args.right)), out)


def _cmd_table(args, out) -> int:
    f = _formula(args.formula)
    dom = _var_list(args.vars) if args.vars else None
    table = truth_table(f, dom)
    out.write(table.to_csv() if args.format == "csv" else table.to_ascii())
    return EXIT_TRUE


def _cmd_nf(args, out) -> int:
    print(render(normalize(_formula(args.formula), args.style, maximal=args.maximal)), file=out)
    return EXIT_TRUE


def _cmd_synth(args, out) -> int:
    family = read_family_json(_read(args.family))
    print(render(synthesize(family, style=args.style, maximal=args.maximal)), file=out)
    return EXIT_TRUE


def _cmd_translate(args, out) -> int:
    print(render(translate_all(_formula(args.formula), _TRANSLATIONS[args.style])), file=out)
    return EXIT_TRUE


def _cmd_flat(args, out) -> int:
    return _answer(is_flat(_formula(args.formula)), out)


def _cmd_prove(args, out) -> int:
    system = ProofSystem.from_name(args.system)
    premises = [_formula(p, system.fragment) for p in args.premise]
    goal = _formula(args.formula, system.fragment)
    try:
        d = prove(system, premises, goal)
    except NotEntailed as exc:
        print(f"not provable: {exc}", file=sys.stderr)
        return EXIT_FALSE
    text = render_proof(d)
    if args.output:
        Path(args.output).write_text(text)
        print(check_nd(d, system), file=out)
    else:
        out.write(text)
    return EXIT_TRUE


def _cmd_checkproof(args, out) -> int:
    system = ProofSystem.from_name(args.system)
    text = _read(args.file)
    try:
        if system in (ProofSystem.H_InqL, ProofSystem.H_PID):
            judgment = check_hilbert(parse_hilbert(text, system), system)
        else:
            judgment = check_nd(parse_proof(text), system)
    except (RuleViolation, FragmentViolation) as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_FALSE
    print(judgment, file=out)
    return EXIT_TRUE


# ---------------------------------------------------------------- argument parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="teamlogic",
                                 description="Propositional dependence logics under team semantics.")
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def cmd(name, fn, help_text, formula=True):
        p = sub.add_parser(name, help=help_text, description=help_text)
        if formula:
            p.add_argument("formula")
        p.set_defaults(run=fn)
        return p

    p = cmd("parse", _cmd_parse, "parse a formula and print its canonical form")
    p.add_argument("--fragment", default="pt0", choices=[f.value for f in Fragment])
    p = cmd("eval", _cmd_eval, "evaluate a formula on a team read from a CSV file")
    p.add_argument("--team", required=True, metavar="FILE")
    p.add_argument("--oracle", action="store_true", help="use the cover-enumerating reference evaluator")
    cmd("valid", _cmd_valid, "is the formula true on every team?")
    cmd("sat", _cmd_sat, "is the formula true on some nonempty team?")
    p = cmd("entails", _cmd_entails, "do the premises entail the formula?")
    p.add_argument("--premise", action="append", default=[], metavar="FORMULA")
    p = cmd("equiv", _cmd_equiv, "are two formulas equivalent?", formula=False)
    p.add_argument("left")
    p.add_argument("right")
    p = cmd("table", _cmd_table, "print the team truth table")
    p.add_argument("--vars", metavar="LIST", help="comma-separated variables, e.g. p1,p2")
    p.add_argument("--format", choices=("ascii", "csv"), default="ascii")
    p = cmd("nf", _cmd_nf, "print a normal form")
    p.add_argument("--style", choices=[s.value for s in NormalFormStyle], default="tensor-dnf")
    p.add_argument("--maximal", action="store_true", help="use only the maximal teams")
    p = cmd("synth", _cmd_synth, "build a formula defining a family read from a JSON file", formula=False)
    p.add_argument("--family", required=True, metavar="FILE")
    p.add_argument("--style", choices=[s.value for s in NormalFormStyle], default="tensor-dnf")
    p.add_argument("--maximal", action="store_true")
    p = cmd("translate", _cmd_translate, "rewrite every dependence atom")
    p.add_argument("--style", choices=sorted(_TRANSLATIONS), default="lem")
    cmd("flat", _cmd_flat, "is the formula flat?")
    p = cmd("prove", _cmd_prove, "synthesize a natural-deduction derivation")
    p.add_argument("--system", choices=("pdv", "pd"), required=True)
    p.add_argument("--premise", action="append", default=[], metavar="FORMULA")
    p.add_argument("-o", "--output", metavar="FILE")
    p = cmd("checkproof", _cmd_checkproof, "check a derivation file", formula=False)
    p.add_argument("--system", choices=("inql", "pid", "pdv", "pd"), required=True)
    p.add_argument("file")
    return ap


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with code 2
        return int(exc.code or 0)
    try:
        return args.run(args, out)
    except SizeGuard as exc:
        print(f"size guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except _Usage as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TeamLogicError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
