"""Named derivations: commutative, associative and distributive laws, ex falso,
Armstrong's axioms for dependence atoms, and the conjunction substitution macro.

``derive_named(name, **params)`` returns an unchecked derivation whose open
hypotheses carry the labels ``g0``, ``g1``, ...; ``NAMED[name].system`` says
which natural-deduction system it is meant for.

Parameters are formulas (``phi``, ``psi``, ``chi``, ``alpha``) given as
:class:`Formula` objects or strings, or variables (``x``, ``y``, ``z``) given
as ``Var``, an index, or a string such as ``"p3"``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..errors import BadParams, FormulaSyntaxError
from ..formula import (And, Bot, Dep, Formula, Fragment, IDisj, Tensor, Var, in_fragment,
                       parse, render)
from .builders import (and_i, and_l, and_r, com, dep_ek, dep_ik, ex_falso, hyp, or_e, or_il,
                       or_ir, t_il, tens_e, tens_sub, tensor_map)
from .derivation import Derivation, Hyp, Node, graft

__all__ = ["derive_named", "NAMED", "NamedDerivation", "named_judgment"]


@dataclass(frozen=True)
class NamedDerivation:
    build: Callable[..., Derivation]
    params: tuple[str, ...]
    system: str
    summary: str


def _g(i: int, f: Formula) -> Hyp:
    return Hyp(f"g{i}", f)


# ---------------------------------------------------------------- ex falso, (ii), (iii)

def _ex_falso(phi):
    return ex_falso(_g(0, Bot()), phi)


def _com_and(phi, psi):
    p = _g(0, And(phi, psi))
    return and_i(and_r(p), and_l(p))


def _ass_and(phi, psi, chi):
    p = _g(0, And(And(phi, psi), chi))
    return and_i(and_l(and_l(p)), and_i(and_r(and_l(p)), and_r(p)))


def _com_or(phi, psi):
    p = _g(0, IDisj(phi, psi))
    a, b = hyp("a", phi), hyp("b", psi)
    return or_e(p, a, or_ir(a, psi), b, or_il(b, phi))


def _ass_or(phi, psi, chi):
    p = _g(0, IDisj(IDisj(phi, psi), chi))
    ab, a, b, c = hyp("ab", IDisj(phi, psi)), hyp("a", phi), hyp("b", psi), hyp("c", chi)
    rest = IDisj(psi, chi)
    inner = or_e(ab, a, or_il(a, rest), b, or_ir(or_il(b, chi), phi))
    return or_e(p, ab, inner, c, or_ir(or_ir(c, psi), phi))


def _dstr_and_or_a(phi, psi, chi):
    p = _g(0, And(phi, IDisj(psi, chi)))
    b, c = hyp("b", psi), hyp("c", chi)
    left = or_il(and_i(and_l(p), b), And(phi, chi))
    right = or_ir(and_i(and_l(p), c), And(phi, psi))
    return or_e(and_r(p), b, left, c, right)


def _dstr_and_or_b(phi, psi, chi):
    p = _g(0, IDisj(And(phi, psi), And(phi, chi)))
    ab, ac = hyp("ab", And(phi, psi)), hyp("ac", And(phi, chi))
    left = and_i(and_l(ab), or_il(and_r(ab), chi))
    right = and_i(and_l(ac), or_ir(and_r(ac), psi))
    return or_e(p, ab, left, ac, right)


def _dstr_and_or_c(phi, psi, chi):
    p = _g(0, IDisj(phi, And(psi, chi)))
    a, bc = hyp("a", phi), hyp("bc", And(psi, chi))
    left = and_i(or_il(a, psi), or_il(a, chi))
    right = and_i(or_ir(and_l(bc), phi), or_ir(and_r(bc), phi))
    return or_e(p, a, left, bc, right)


def _dstr_and_or_d(phi, psi, chi):
    p = _g(0, And(IDisj(phi, psi), IDisj(phi, chi)))
    a, b = hyp("a", phi), hyp("b", psi)
    a2, c = hyp("a2", phi), hyp("c", chi)
    target_rest = And(psi, chi)
    inner = or_e(and_r(p), a2, or_il(a2, target_rest), c, or_ir(and_i(b, c), phi))
    return or_e(and_l(p), a, or_il(a, target_rest), b, inner)


# ---------------------------------------------------------------- (iv) distributive laws

def _dstr_tensor_and(phi, psi, chi):
    p = _g(0, Tensor(phi, And(psi, chi)))
    h = hyp("bc", And(psi, chi))
    return and_i(tens_sub(p, h, and_l(h)), tens_sub(p, h, and_r(h)))


def _and_tensor(d: Derivation, phi, psi, chi) -> Derivation:
    """From ``d`` proving ``phi & (psi + chi)``, a proof of ``(phi & psi) + (phi & chi)``."""
    front = and_l(d)
    return tensor_map(and_r(d), [psi, chi], lambda i, h: and_i(front, h), "dt")


def _dstr_and_tensor(phi, psi, chi):
    return _and_tensor(_g(0, And(phi, Tensor(psi, chi))), phi, psi, chi)


def _dstr_or_tensor(phi, psi, chi):
    p = _g(0, IDisj(phi, Tensor(psi, chi)))
    a, bc = hyp("a", phi), hyp("bc", Tensor(psi, chi))
    left = tensor_map(t_il(a, phi), [phi, phi],
                      lambda i, h: or_il(h, (psi, chi)[i]), "ol")
    right = tensor_map(bc, [psi, chi], lambda i, h: or_ir(h, phi), "or")
    return or_e(p, a, left, bc, right)


def _dstr_tensor_or_tensor(phi, psi, chi):
    p = _g(0, IDisj(Tensor(phi, psi), Tensor(phi, chi)))
    ab, ac = hyp("ab", Tensor(phi, psi)), hyp("ac", Tensor(phi, chi))
    b, c = hyp("b", psi), hyp("c", chi)
    left = tens_sub(ab, b, or_il(b, chi))
    right = tens_sub(ac, c, or_ir(c, psi))
    return or_e(p, ab, left, ac, right)


def _need_classical(alpha: Formula) -> None:
    if not in_fragment(alpha, Fragment.CPL) or not in_fragment(alpha, Fragment.PDv):
        raise BadParams(f"alpha must be a classical formula, got {render(alpha)}")


def _merge_alpha(d: Derivation, alpha: Formula) -> Derivation:
    """``alpha + alpha`` to ``alpha`` by weak tensor elimination (``alpha`` classical)."""
    left, right = hyp("al", alpha), hyp("ar", alpha)
    return tens_e(d, left, left, right, right)


def _dstr_star_tensor_and(alpha, psi, chi):
    _need_classical(alpha)
    ap, ac = Tensor(alpha, psi), Tensor(alpha, chi)
    p = _g(0, And(ap, ac))
    # (ap & alpha) + (ap & chi)
    step = _and_tensor(p, ap, alpha, chi)

    def second(h: Derivation) -> Derivation:
        # (alpha + psi) & chi  ->  (chi & alpha) + (chi & psi)  ->  alpha + (psi & chi)
        spread = _and_tensor(and_i(and_r(h), and_l(h)), chi, alpha, psi)
        return tensor_map(spread, [And(chi, alpha), And(chi, psi)],
                          lambda i, g: and_r(g) if i == 0 else and_i(and_r(g), and_l(g)), "s3")

    rewritten = tensor_map(step, [And(ap, alpha), And(ap, chi)],
                           lambda i, h: and_r(h) if i == 0 else second(h), "s4")
    # alpha + (alpha + (psi & chi))  ->  (alpha + alpha) + (psi & chi)  ->  alpha + (psi & chi)
    grouped = Node("Ass⊗", [rewritten])
    aa = hyp("aa", Tensor(alpha, alpha))
    merged = tens_sub(com(grouped), aa, _merge_alpha(aa, alpha))
    return com(merged)


def _dstr_star_and_tensor(alpha, psi, chi):
    _need_classical(alpha)
    p = _g(0, Tensor(And(alpha, psi), And(alpha, chi)))
    parts = [And(alpha, psi), And(alpha, chi)]
    alphas = tensor_map(p, parts, lambda i, h: and_l(h), "sl")
    rest = tensor_map(p, parts, lambda i, h: and_r(h), "sr")
    return and_i(_merge_alpha(alphas, alpha), rest)


# ---------------------------------------------------------------- Armstrong's axioms

def _const(v: int) -> Hyp:
    return hyp("c", Dep((), v))


def _armstrong_i(x):
    return dep_ik(_const(x), Dep((x,), x), [_const(x)])


def _armstrong_ii(x, y, z):
    p = _g(0, Dep((x, y), z))
    return dep_ik(dep_ek(p, [_const(x), _const(y)]), Dep((y, x), z), [_const(y), _const(x)])


def _armstrong_iii(x, y):
    p = _g(0, Dep((x, x), y))
    return dep_ik(dep_ek(p, [_const(x), _const(x)]), Dep((x,), y), [_const(x)])


def _armstrong_iv(x, y, z):
    p = _g(0, Dep((y,), z))
    # the hypothesis =(x) is discharged without being used; dep_ik touches it
    return dep_ik(dep_ek(p, [_const(y)]), Dep((x, y), z), [_const(x), _const(y)])


def _armstrong_v(x, y, z):
    xy, yz = _g(0, Dep((x,), y)), _g(1, Dep((y,), z))
    return dep_ik(dep_ek(yz, [dep_ek(xy, [_const(x)])]), Dep((x,), z), [_const(x)])


# ---------------------------------------------------------------- conjunction substitution

def _and_sub(phi, psi, sub: Derivation | None = None, label: str = "h"):
    """``phi & psi`` with ``sub`` (from hypothesis ``label`` of ``psi``) gives ``phi & chi``."""
    p = _g(0, And(phi, psi))
    if sub is None:
        sub = Hyp(label, psi)
    return and_i(and_l(p), graft(sub, label, and_r(p)))


NAMED: dict[str, NamedDerivation] = {
    "ex_falso": NamedDerivation(_ex_falso, ("phi",), "pdv", "bot ⊢ phi"),
    "com_and": NamedDerivation(_com_and, ("phi", "psi"), "pdv", "phi & psi ⊢ psi & phi"),
    "ass_and": NamedDerivation(_ass_and, ("phi", "psi", "chi"), "pdv",
                               "(phi & psi) & chi ⊢ phi & (psi & chi)"),
    "com_or": NamedDerivation(_com_or, ("phi", "psi"), "pdv", "phi | psi ⊢ psi | phi"),
    "ass_or": NamedDerivation(_ass_or, ("phi", "psi", "chi"), "pdv",
                              "(phi | psi) | chi ⊢ phi | (psi | chi)"),
    "dstr_and_or_a": NamedDerivation(_dstr_and_or_a, ("phi", "psi", "chi"), "pdv",
                                     "phi & (psi | chi) ⊢ (phi & psi) | (phi & chi)"),
    "dstr_and_or_b": NamedDerivation(_dstr_and_or_b, ("phi", "psi", "chi"), "pdv",
                                     "(phi & psi) | (phi & chi) ⊢ phi & (psi | chi)"),
    "dstr_and_or_c": NamedDerivation(_dstr_and_or_c, ("phi", "psi", "chi"), "pdv",
                                     "phi | (psi & chi) ⊢ (phi | psi) & (phi | chi)"),
    "dstr_and_or_d": NamedDerivation(_dstr_and_or_d, ("phi", "psi", "chi"), "pdv",
                                     "(phi | psi) & (phi | chi) ⊢ phi | (psi & chi)"),
    "dstr_tensor_and": NamedDerivation(_dstr_tensor_and, ("phi", "psi", "chi"), "pdv",
                                       "phi + (psi & chi) ⊢ (phi + psi) & (phi + chi)"),
    "dstr_and_tensor": NamedDerivation(_dstr_and_tensor, ("phi", "psi", "chi"), "pdv",
                                       "phi & (psi + chi) ⊢ (phi & psi) + (phi & chi)"),
    "dstr_or_tensor": NamedDerivation(_dstr_or_tensor, ("phi", "psi", "chi"), "pdv",
                                      "phi | (psi + chi) ⊢ (phi | psi) + (phi | chi)"),
    "dstr_tensor_or_tensor": NamedDerivation(_dstr_tensor_or_tensor, ("phi", "psi", "chi"), "pdv",
                                             "(phi + psi) | (phi + chi) ⊢ phi + (psi | chi)"),
    "dstr_star_tensor_and": NamedDerivation(_dstr_star_tensor_and, ("alpha", "psi", "chi"), "pdv",
                                            "(alpha + psi) & (alpha + chi) ⊢ alpha + (psi & chi), alpha classical"),
    "dstr_star_and_tensor": NamedDerivation(_dstr_star_and_tensor, ("alpha", "psi", "chi"), "pdv",
                                            "(alpha & psi) + (alpha & chi) ⊢ alpha & (psi + chi), alpha classical"),
    "armstrong_i": NamedDerivation(_armstrong_i, ("x",), "pd", "⊢ =(x,x)"),
    "armstrong_ii": NamedDerivation(_armstrong_ii, ("x", "y", "z"), "pd", "=(x,y,z) ⊢ =(y,x,z)"),
    "armstrong_iii": NamedDerivation(_armstrong_iii, ("x", "y"), "pd", "=(x,x,y) ⊢ =(x,y)"),
    "armstrong_iv": NamedDerivation(_armstrong_iv, ("x", "y", "z"), "pd", "=(y,z) ⊢ =(x,y,z)"),
    "armstrong_v": NamedDerivation(_armstrong_v, ("x", "y", "z"), "pd", "=(x,y), =(y,z) ⊢ =(x,z)"),
    "and_sub": NamedDerivation(_and_sub, ("phi", "psi"), "pd",
                               "phi & psi, with a derivation psi ⊢ chi, gives phi & chi"),
}

_VARIABLE_PARAMS = {"x", "y", "z"}


def _formula_param(name: str, value) -> Formula:
    if isinstance(value, Formula):
        return value
    if isinstance(value, str):
        try:
            return parse(value)
        except FormulaSyntaxError as exc:
            raise BadParams(f"parameter {name}: {exc}") from None
    raise BadParams(f"parameter {name} must be a formula, got {value!r}")


def _variable_param(name: str, value) -> int:
    if isinstance(value, Var):
        return value.index
    if isinstance(value, int) and not isinstance(value, bool) and value >= 1:
        return value
    if isinstance(value, str):
        text = value.strip()
        if text.startswith("p") and text[1:].isdigit() and int(text[1:]) >= 1:
            return int(text[1:])
    raise BadParams(f"parameter {name} must be a propositional variable, got {value!r}")


def derive_named(name: str, **params) -> Derivation:
    """Build the named derivation for the given parameters (see ``NAMED``)."""
    entry = NAMED.get(name)
    if entry is None:
        raise BadParams(f"unknown derivation {name!r}; known: {', '.join(sorted(NAMED))}")
    extra = {"sub", "label"} if name == "and_sub" else set()
    unknown = set(params) - set(entry.params) - extra
    if unknown:
        raise BadParams(f"{name} takes no parameter(s) {', '.join(sorted(unknown))}")
    missing = [p for p in entry.params if p not in params]
    if missing:
        raise BadParams(f"{name} needs parameter(s) {', '.join(missing)}")
    args = []
    for p in entry.params:
        if p in _VARIABLE_PARAMS:
            args.append(_variable_param(p, params[p]))
        else:
            args.append(_formula_param(p, params[p]))
    kwargs = {k: params[k] for k in extra if k in params}
    return entry.build(*args, **kwargs)


def named_judgment(name: str) -> str:
    return NAMED[name].summary
