import random

import pytest
from hypothesis import strategies as st

from teamlogic.formula import (BOT, And, Dep, Fragment, IDisj, Impl, NegVar, Tensor, Var,
                               in_fragment)
from teamlogic.team import Team

# a five-member team over p1..p5 used for the evaluation goldens
FIVE_ROWS = ["11101", "10100", "11111", "10110", "10011"]

_CONNECTIVES = {
    Fragment.PT0: (And, Tensor, IDisj, Impl),
    Fragment.CPL: (And, Tensor, Impl),
    Fragment.PD: (And, Tensor),
    Fragment.PDv: (And, Tensor, IDisj),
    Fragment.PID: (And, IDisj, Impl),
    Fragment.InqL: (And, IDisj, Impl),
}


@pytest.fixture
def five_rows():
    return Team.of(range(1, 6), FIVE_ROWS)


def atoms(fragment, nvars, dep=True):
    idx = st.integers(1, nvars)
    options = [idx.map(Var), st.just(BOT)]
    if fragment not in (Fragment.PID, Fragment.InqL):
        options.append(idx.map(NegVar))
    if dep and fragment in (Fragment.PT0, Fragment.PD, Fragment.PID):
        options.append(st.builds(lambda a, t: Dep(tuple(a), t),
                                 st.lists(idx, max_size=2), idx))
    return st.one_of(options)


def formulas(fragment=Fragment.PT0, nvars=3, depth=4):
    """Formulas of ``fragment`` over p1..p<nvars> with at most ``depth`` binary layers."""
    base = atoms(fragment, nvars)
    conns = _CONNECTIVES[fragment]

    def extend(children):
        return st.builds(lambda c, a, b: c(a, b), st.sampled_from(conns), children, children)

    out = st.recursive(base, extend, max_leaves=1 << depth)
    return out.filter(lambda f: _depth(f) <= depth and in_fragment(f, fragment))


def _depth(f):
    if not f.children:
        return 0
    return 1 + max(_depth(c) for c in f.children)


def random_formula(rng: random.Random, nvars: int, depth: int, conns=(And, Tensor, IDisj, Impl),
                   dep=True):
    """Plain-RNG generator for bulk sweeps where hypothesis shrinking is not wanted."""
    if depth == 0 or rng.random() < 0.25:
        k = rng.randrange(5 if dep else 3)
        i = rng.randint(1, nvars)
        if k == 0:
            return Var(i)
        if k == 1:
            return NegVar(i)
        if k == 2:
            return BOT if rng.random() < 0.3 else Var(i)
        args = tuple(rng.randint(1, nvars) for _ in range(rng.randrange(3)))
        return Dep(args, i)
    c = rng.choice(conns)
    return c(random_formula(rng, nvars, depth - 1, conns, dep),
             random_formula(rng, nvars, depth - 1, conns, dep))
