import pytest

from teamlogic.errors import (BadAddress, BadDischarge, FragmentViolation, ProofFormatError,
                              RuleViolation, SideConditionViolated)
from teamlogic.formula import BOT, Dep, NegVar, Var, parse
from teamlogic.proof import Hyp, Node, ProofSystem, check_nd, parse_proof, render_proof
from teamlogic.proof.checker import se_branches

P = parse


def hyp(label, text):
    return Hyp(label, P(text))


def judgment(d, system="pdv"):
    return str(check_nd(d, system))


class TestBasics:
    def test_hypothesis(self):
        assert judgment(hyp("a", "p1")) == "{p1} ⊢ p1"

    def test_excluded_middle(self):
        assert judgment(Node("EM0", side=Var(3))) == "{} ⊢ p3 + ~p3"

    def test_excluded_middle_rejects_compounds(self):
        with pytest.raises(RuleViolation):
            check_nd(Node("EM0", side=P("p1 & p2")))
        with pytest.raises(RuleViolation):
            check_nd(Node("EM0", side=NegVar(1)))

    def test_conjunction(self):
        d = Node("∧E_r", [Node("∧I", [hyp("a", "p1"), hyp("b", "=(p2)")])])
        assert judgment(d, "pd") == "{=(p2), p1} ⊢ =(p2)"

    def test_elimination_needs_the_connective(self):
        with pytest.raises(RuleViolation):
            check_nd(Node("∧E_l", [hyp("a", "p1 + p2")]))

    def test_system_names(self):
        assert ProofSystem.from_name("ND_PD") is ProofSystem.ND_PD
        with pytest.raises(ValueError):
            ProofSystem.from_name("lk")
        with pytest.raises(ValueError):
            check_nd(hyp("a", "p1"), "inql")


class TestTensorRules:
    def test_elimination_side_condition(self):
        d = Node("⊗E⁻", [hyp("t", "p1 + ~p1"), hyp("a", "=(p1)"), hyp("b", "=(p1)")],
                 discharges=["a", "b"])
        with pytest.raises(SideConditionViolated):
            check_nd(d, "pd")

    def test_elimination_classical(self):
        d = Node("⊗E⁻", [hyp("t", "p1 + p1"), hyp("a", "p1"), hyp("b", "p1")],
                 discharges=["a", "b"])
        assert judgment(d) == "{p1 + p1} ⊢ p1"

    def test_substitution(self):
        inner = Node("∧E_l", [hyp("x", "p2 & p3")])
        d = Node("⊗Sub", [hyp("t", "p1 + p2 & p3"), inner], discharges=["x"])
        assert judgment(d) == "{p1 + p2 & p3} ⊢ p1 + p2"

    def test_substitution_must_not_leak_other_assumptions(self):
        inner = Node("∧I", [hyp("x", "p2"), hyp("y", "p3")])
        d = Node("⊗Sub", [hyp("t", "p1 + p2"), inner], discharges=["x"])
        assert judgment(d) == "{p1 + p2, p3} ⊢ p1 + p2 & p3"

    def test_commute_and_associate(self):
        d = Node("Ass⊗", [Node("Com⊗", [hyp("t", "(p2 + p3) + p1")])])
        assert judgment(d) == "{p2 + p3 + p1} ⊢ p1 + p2 + p3"

    def test_bot_rules(self):
        contradiction = Node("⊥I", [Node("∧I", [hyp("a", "p1"), hyp("b", "~p1")])])
        assert judgment(contradiction) == "{p1, ~p1} ⊢ bot"
        d = Node("⊥E", [Node("⊗I_r", [contradiction], side=P("p2 | p3"))])
        assert judgment(d) == "{p1, ~p1} ⊢ p2 | p3"

    def test_bot_intro_needs_complementary_literals(self):
        with pytest.raises(RuleViolation):
            check_nd(Node("⊥I", [Node("∧I", [hyp("a", "p1"), hyp("b", "~p2")])]))

    def test_distribution(self):
        d = Node("Dstr⊗∨", [hyp("t", "p1 + (p2 | p3)")])
        assert judgment(d) == "{p1 + (p2 | p3)} ⊢ p1 + p2 | p1 + p3"


class TestDischarge:
    def test_disjunction_elimination(self):
        d = Node("∨E", [hyp("o", "p1 | p2"),
                        Node("⊗I_l", [hyp("a", "p1")], side=Var(2)),
                        Node("⊗I_r", [hyp("b", "p2")], side=Var(1))],
                 discharges=["a", "b"])
        assert judgment(d) == "{p1 | p2} ⊢ p1 + p2"

    def test_unknown_label(self):
        d = Node("∨E", [hyp("o", "p1 | p1"), hyp("a", "p1"), hyp("b", "p1")],
                 discharges=["a", "zz"])
        with pytest.raises(BadDischarge):
            check_nd(d)

    def test_label_with_wrong_formula(self):
        d = Node("∨E", [hyp("o", "p1 | p2"), hyp("a", "p2"), hyp("b", "p2")],
                 discharges=["a", "b"])
        with pytest.raises(BadDischarge):
            check_nd(d)

    def test_label_clash(self):
        d = Node("∧I", [hyp("a", "p1"), hyp("a", "p2")])
        with pytest.raises(BadDischarge):
            check_nd(d)

    def test_wrong_discharge_count(self):
        with pytest.raises(BadDischarge):
            check_nd(Node("⊗Sub", [hyp("t", "p1 + p2"), hyp("x", "p2")]))


class TestDependenceRules:
    def test_introduction_from_literal(self):
        d = Node("DepI0", [hyp("a", "~p2")])
        assert judgment(d, "pd") == "{~p2} ⊢ =(p2)"

    def test_reflexivity_from_one_node(self):
        d = Node("DepIk", [hyp("x", "=(p1)")], discharges=["x"], side=Dep((1,), 1))
        assert judgment(d, "pd") == "{} ⊢ =(p1,p1)"

    def test_introduction_counts_discharges(self):
        d = Node("DepIk", [hyp("x", "=(p1)")], discharges=[], side=Dep((1,), 1))
        with pytest.raises(BadDischarge):
            check_nd(d, "pd")

    def test_introduction_needs_target(self):
        d = Node("DepIk", [hyp("x", "=(p2)")], discharges=["x"], side=Dep((1,), 3))
        with pytest.raises(RuleViolation):
            check_nd(d, "pd")

    def test_elimination(self):
        d = Node("DepEk", [hyp("f", "=(p1,p2,p3)"), hyp("a", "=(p1)"), hyp("b", "=(p2)")])
        assert judgment(d, "pd") == "{=(p1), =(p1,p2,p3), =(p2)} ⊢ =(p3)"

    def test_elimination_argument_mismatch(self):
        d = Node("DepEk", [hyp("f", "=(p1,p3)"), hyp("a", "=(p2)")])
        with pytest.raises(RuleViolation):
            check_nd(d, "pd")

    def test_constancy_case_split(self):
        d = Node("DepE0", [hyp("c", "=(p1)"),
                           Node("⊗I_l", [hyp("a", "p1")], side=NegVar(1)),
                           Node("⊗I_r", [hyp("b", "~p1")], side=Var(1))],
                 discharges=["a", "b"])
        assert judgment(d, "pd") == "{=(p1)} ⊢ p1 + ~p1"

    def test_strong_elimination(self):
        phi = P("p2 & =(p1)")
        d = Node("SE", [Hyp("m", phi),
                        Node("∧E_l", [hyp("a", "p2 & p1")]),
                        Node("∧E_l", [hyp("b", "p2 & ~p1")])],
                 discharges=["a", "b"], addr=3)
        assert judgment(d, "pd") == "{p2 & =(p1)} ⊢ p2"

    def test_strong_elimination_address(self):
        phi = P("p2 & =(p1)")
        d = Node("SE", [Hyp("m", phi), hyp("a", "p2"), hyp("b", "p2")],
                 discharges=["a", "b"], addr=1)
        with pytest.raises(BadAddress):
            check_nd(d, "pd")

    def test_se_branches_reject_non_constancy(self):
        with pytest.raises(BadAddress):
            se_branches(P("=(p1,p2)"), 1)

    def test_disjunction_rules_not_in_pd(self):
        d = Node("∨I_l", [hyp("a", "p1")], side=Var(2))
        with pytest.raises(RuleViolation, match="not a rule"):
            check_nd(d, "pd")

    def test_dependence_rules_not_in_pdv(self):
        with pytest.raises(RuleViolation):
            check_nd(Node("DepI0", [hyp("a", "p1")]), "pdv")

    def test_conclusion_must_stay_in_fragment(self):
        with pytest.raises(FragmentViolation):
            check_nd(Node("⊗I_l", [hyp("a", "p1")], side=P("=(p2)")), "pdv")


class TestTextFormat:
    def test_round_trip(self):
        d = Node("SE", [hyp("m", "p2 & =(p1)"),
                        Node("∧E_l", [hyp("a", "p2 & p1")]),
                        Node("∧E_l", [hyp("b", "p2 & ~p1")])],
                 discharges=["a", "b"], addr=3)
        text = render_proof(d)
        back = parse_proof(text)
        assert back == d
        assert render_proof(back) == text

    def test_ascii_aliases(self):
        d = parse_proof('(AndE_l (AndI (hyp a "p1") (hyp b "p2")))')
        assert judgment(d) == "{p1, p2} ⊢ p1"

    @pytest.mark.parametrize("text", ['(hyp a "p1"', '(Foo (hyp a "p1"))', '(hyp a "p1 &")',
                                      '(hyp a "p1") extra', '(EM0 [side: p1])'])
    def test_malformed(self, text):
        with pytest.raises(ProofFormatError):
            parse_proof(text)

    def test_bot_side(self):
        d = Node("⊗I_l", [hyp("a", "p1")], side=BOT)
        assert parse_proof(render_proof(d)) == d
