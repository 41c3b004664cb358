import pytest
from hypothesis import assume, given, settings

from teamlogic.decide import entails
from teamlogic.errors import FragmentViolation, NotEntailed, SizeGuard
from teamlogic.formula import Fragment, parse
from teamlogic.proof import (Hyp, check_nd, parse_proof, premise_label, prove, render_proof,
                             synth_entailment_pd, synth_entailment_pdv)

from conftest import formulas

P = parse


def pdv_judgment(premise, goal):
    return str(check_nd(synth_entailment_pdv(P(premise), P(goal)), "pdv"))


def pd_judgment(premises, goal):
    return str(check_nd(synth_entailment_pd([P(p) for p in premises], P(goal)), "pd"))


class TestPDv:
    def test_identity_is_the_hypothesis(self):
        d = synth_entailment_pdv(P("p1"), P("p1"))
        assert d == Hyp(premise_label(0), P("p1"))

    def test_conjunction_to_tensor(self):
        assert pdv_judgment("p1 & p2", "p1 + p2") == "{p1 & p2} ⊢ p1 + p2"

    def test_ex_falso(self):
        assert pdv_judgment("bot", "p1 | ~p1") == "{bot} ⊢ p1 | ~p1"

    def test_unused_premise_stays_open(self):
        assert pdv_judgment("p2 | ~p2", "p1 + ~p1") == "{p2 | ~p2} ⊢ p1 + ~p1"

    @pytest.mark.parametrize("premise, goal", [
        ("p1 | ~p1", "p1 + ~p1"),
        ("(p1 | p2) & ~p1", "p2"),
        ("p1 + p1", "p1"),
        ("(p1 + ~p2) & (p1 | p2)", "p1"),
        ("p1 & (p2 | p3)", "p1 & p2 | p1 & p3"),
        ("(p1 | ~p1) + (p2 | ~p2)", "p1 + ~p1"),
        ("~p1 & ~p2", "(p1 + ~p2) & (~p1 | p2)"),
    ])
    def test_assorted(self, premise, goal):
        j = check_nd(synth_entailment_pdv(P(premise), P(goal)), "pdv")
        assert j.context == {P(premise)} and j.conclusion == P(goal)

    def test_refuses_non_entailment(self):
        with pytest.raises(NotEntailed):
            synth_entailment_pdv(P("(p1 | ~p1) + (p1 | ~p1)"), P("p1 | ~p1"))

    def test_fragment(self):
        with pytest.raises(FragmentViolation):
            synth_entailment_pdv(P("=(p1)"), P("p1 | ~p1"))

    def test_guard(self):
        with pytest.raises(SizeGuard):
            synth_entailment_pdv(P("p1 & p2 & p3 & p4 & p5"), P("p1"))

    @settings(max_examples=40, deadline=None)
    @given(formulas(Fragment.PDv, nvars=2, depth=2), formulas(Fragment.PDv, nvars=2, depth=2))
    def test_entailing_pairs_are_provable(self, premise, goal):
        assume(entails([premise], goal))
        d = synth_entailment_pdv(premise, goal)
        j = check_nd(d, "pdv")
        assert j.context == {premise} and j.conclusion == goal


class TestPD:
    def test_transitivity_from_semantics(self):
        assert pd_judgment(["=(p1,p2)", "=(p2,p3)"], "=(p1,p3)") == "{=(p1,p2), =(p2,p3)} ⊢ =(p1,p3)"

    def test_constancy_from_literal(self):
        assert pd_judgment(["p1"], "=(p1)") == "{p1} ⊢ =(p1)"

    def test_refuses_tensor_of_constancy(self):
        with pytest.raises(NotEntailed):
            synth_entailment_pd([P("=(p1) + =(p1)")], P("=(p1)"))

    def test_no_premises(self):
        assert pd_judgment([], "p1 + ~p1") == "{} ⊢ p1 + ~p1"

    def test_duplicate_and_unused_premises(self):
        # every premise stays an open assumption, used or not
        assert pd_judgment(["=(p1)", "=(p1)", "p2"], "=(p1)") == "{=(p1), p2} ⊢ =(p1)"

    @pytest.mark.parametrize("premises, goal", [
        (["=(p1) & =(p2)"], "=(p1,p2)"),
        (["=(p1,p2)", "p1"], "=(p2)"),
        (["(p1 & =(p2)) + (~p1 & =(p2))"], "=(p1,p2)"),
        (["=(p2,p1)"], "(p2 & =(p1)) + (~p2 & =(p1))"),
        (["p1 + ~p1", "=(p1)"], "p1 + ~p1"),
    ])
    def test_assorted(self, premises, goal):
        d = synth_entailment_pd([P(p) for p in premises], P(goal))
        j = check_nd(d, "pd")
        assert j.context == {P(p) for p in premises} and j.conclusion == P(goal)

    @settings(max_examples=25, deadline=None)
    @given(formulas(Fragment.PD, nvars=2, depth=2), formulas(Fragment.PD, nvars=2, depth=2))
    def test_entailing_pairs_are_provable(self, premise, goal):
        assume(entails([premise], goal))
        j = check_nd(synth_entailment_pd([premise], goal), "pd")
        assert j.context == {premise} and j.conclusion == goal


def test_prove_dispatch():
    d = prove("pd", [P("p1")], P("=(p1)"))
    assert str(check_nd(d, "pd")) == "{p1} ⊢ =(p1)"
    with pytest.raises(ValueError):
        prove("inql", [P("p1")], P("p1"))


def test_synthesis_is_deterministic():
    a = render_proof(synth_entailment_pd([P("=(p1,p2)"), P("=(p2,p3)")], P("=(p1,p3)")))
    b = render_proof(synth_entailment_pd([P("=(p1,p2)"), P("=(p2,p3)")], P("=(p1,p3)")))
    assert a == b
    assert render_proof(parse_proof(a)) == a
