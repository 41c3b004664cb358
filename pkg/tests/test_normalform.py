import random

import pytest
from hypothesis import given, settings, strategies as st

from teamlogic.decide import entails, equivalent
from teamlogic.errors import EmptyY, NotDownwardClosed
from teamlogic.formula import BOT, And, Fragment, Impl, Tensor, disj, in_fragment, parse, render
from teamlogic.normalform import (NormalFormStyle, alpha_card, defining_formula, normalize,
                                  synthesize, xi)
from teamlogic.semantics import denotation, eval_formula
from teamlogic.team import Team, TeamFamily, all_teams

from conftest import formulas, random_formula

DOM = (1, 2)
X4 = Team.of(DOM, ["01", "00"])

STYLE_FRAGMENT = {
    NormalFormStyle.TENSOR_DNF: Fragment.PDv,
    NormalFormStyle.NEGNEG_DNF: Fragment.InqL,
    NormalFormStyle.DEP_CNF: Fragment.PD,
}


class TestDefiningFormula:
    def test_theta_of_two_rows(self):
        assert render(defining_formula(X4, DOM)) == "~p1 & p2 + ~p1 & ~p2"

    def test_empty_team(self):
        assert defining_formula(Team.empty(DOM)) == BOT
        assert defining_formula(Team.empty(DOM), style="psi") == BOT

    @pytest.mark.parametrize("style", ["theta", "psi"])
    def test_subset_law_for_x4(self, style):
        f = defining_formula(X4, DOM, style)
        for y in all_teams(DOM):
            assert eval_formula(f, y) == y.issubset(X4)

    def test_psi_is_inquisitive(self):
        assert in_fragment(defining_formula(X4, DOM, "psi"), Fragment.InqL)


class TestCardinality:
    def test_zero(self):
        assert alpha_card(0, DOM) == BOT

    def test_one(self):
        assert render(alpha_card(1, DOM)) == "=(p1) & =(p2)"

    def test_two_counts_members(self):
        f = alpha_card(2, DOM)
        for x in all_teams(DOM):
            assert eval_formula(f, x) == (len(x) <= 2)


class TestXi:
    Y = Team.of(DOM, ["01", "10"])

    def test_shape(self):
        f = xi(self.Y)
        assert render(f) == "=(p1) & =(p2) + (p1 & p2 + ~p1 & ~p2)"
        assert equivalent(f, parse("(=(p1) & =(p2)) + p1 & p2 + ~p1 & ~p2"))

    def test_excludes_supersets(self):
        f = xi(self.Y)
        for x in all_teams(DOM):
            assert eval_formula(f, x) == (not self.Y.issubset(x))

    def test_full_team(self):
        f = xi(Team.full(DOM))
        for x in all_teams(DOM):
            assert eval_formula(f, x) == (len(x) < 4)

    def test_empty(self):
        with pytest.raises(EmptyY):
            xi(Team.empty(DOM))


class TestSynthesize:
    def test_only_empty_team(self):
        fam = TeamFamily.of(DOM, [0])
        for style in NormalFormStyle:
            assert synthesize(fam, style=style) == BOT

    def test_all_teams_is_valid(self):
        fam = TeamFamily.of([1], range(4))
        for style in NormalFormStyle:
            assert denotation(synthesize(fam, style=style), [1]) == fam

    def test_constancy_maximal(self):
        fam = denotation(parse("=(p1)"), [1])
        assert render(synthesize(fam, maximal=True)) == "~p1 | p1"

    def test_rejects_non_down_set(self):
        with pytest.raises(NotDownwardClosed):
            synthesize(TeamFamily.of([1], [0b10]))

    def test_style_names(self):
        assert NormalFormStyle.from_name("dep_cnf") is NormalFormStyle.DEP_CNF
        with pytest.raises(ValueError):
            NormalFormStyle.from_name("cnf")


class TestNormalize:
    def test_constancy_atom(self):
        f = normalize(parse("=(p1)"))
        assert render(f) == "bot | ~p1 | p1"
        assert render(normalize(parse("=(p1)"), maximal=True)) == "~p1 | p1"

    @pytest.mark.parametrize("style", list(NormalFormStyle))
    def test_bot(self, style):
        assert normalize(BOT, style) == BOT

    def test_variable_free_valid_formula(self):
        f = normalize(parse("bot -> bot"))
        assert equivalent(f, parse("p1 | ~p1 | p1 + ~p1"))

    @settings(max_examples=60, deadline=None)
    @given(formulas(Fragment.PT0, nvars=2, depth=3), st.sampled_from(list(NormalFormStyle)),
           st.booleans())
    def test_preserves_meaning_and_lands_in_fragment(self, f, style, maximal):
        g = normalize(f, style, maximal=maximal)
        assert equivalent(f, g)
        assert in_fragment(g, STYLE_FRAGMENT[style])

    def test_classical_formulas_exhaustive_sample(self):
        rng = random.Random(7)
        for _ in range(40):
            f = random_formula(rng, 2, 3, conns=(And, Tensor, Impl), dep=False)
            g = normalize(f, maximal=True)
            assert denotation(g, DOM) == denotation(f, DOM)


def test_disjunction_of_thetas_entailment_criterion():
    rng = random.Random(11)
    for _ in range(60):
        xs = [Team(DOM, rng.randrange(16)) for _ in range(rng.randint(1, 3))]
        ys = [Team(DOM, rng.randrange(16)) for _ in range(rng.randint(1, 3))]
        left = disj(defining_formula(x) for x in xs)
        right = disj(defining_formula(y) for y in ys)
        criterion = all(any(x.issubset(y) for y in ys) for x in xs)
        assert entails([left], right) == criterion
