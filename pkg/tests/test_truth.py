"""
Tests for three-valued truth of B formulas.
"""

import pytest

from pybhw.config import Settings
from pybhw.exceptions import EvaluationError
from pybhw.formulas import negate
from pybhw.sexpr import read_formula as F
from pybhw.tags import Truth
from pybhw.trees import OMEGA_STAR, Finite, NStar, eq_star
from pybhw.truth import Budget, eval_sequent, eval_truth, hf_below_rank, tree_of_hf

ASSIGN = {"a": NStar(2), "b": NStar(3), "c": Finite.of([(), (0,), (0, 0)]), "U": OMEGA_STAR}


def ev(text, assign=ASSIGN, budget=None):
    return eval_truth(F(text), assign, budget)


class TestAtoms:
    """Tests for membership, relation and level atoms."""

    def test_membership(self):
        """Naturals are ordered by in*."""
        assert ev("(in a b)") is Truth.TRUE
        assert ev("(in b a)") is Truth.FALSE
        assert ev("(nin b a)") is Truth.TRUE

    def test_constants(self):
        """empty is the leaf, omega is omega*."""
        assert ev("(in empty a)") is Truth.TRUE
        assert ev("(in a omega)") is Truth.TRUE
        assert ev("(in c omega)") is Truth.FALSE

    def test_tall_path_not_natural(self):
        """A path of height 13 is not in* omega and not in* 20*."""
        path = Finite.of([(0,) * k for k in range(14)])
        assign = dict(ASSIGN, d=path, e=NStar(20))
        assert ev("(in d omega)", assign) is Truth.FALSE
        assert ev("(in d e)", assign) is Truth.FALSE

    def test_relation(self):
        """U(a) holds when a is in* the tree of U."""
        assert ev("(rel U a)") is Truth.TRUE
        assert ev("(nrel U c)") is Truth.TRUE

    def test_level(self):
        """M_alpha(a) holds for alpha-trees."""
        assert ev("(M 3 a)") is Truth.TRUE
        assert ev("(M 2 a)") is Truth.FALSE
        assert ev("(M 1 empty)") is Truth.TRUE
        assert ev("(M w omega)") is Truth.FALSE
        assert ev('(M "w + 1" omega)') is Truth.TRUE


class TestQuantifiers:
    """Tests for bounded, ranked and relation quantifiers."""

    def test_bounded(self):
        """Bounded quantifiers range over immediate subtrees."""
        assert ev("(bex x b (in x a))") is Truth.TRUE
        assert ev("(ball x a (in x b))") is Truth.TRUE
        assert ev("(ball x b (in x a))") is Truth.FALSE

    def test_bounded_by_omega(self):
        """Over omega* a counterexample settles a universal; otherwise unknown."""
        assert ev("(ball x omega (in x a))") is Truth.FALSE
        assert ev("(ball x omega (in x omega))") is Truth.UNKNOWN
        assert ev("(bex x omega (in b x))") is Truth.TRUE

    def test_ranked_exact(self):
        """Small finite levels are searched exhaustively."""
        assert ev("(rex 2 x (in x a))") is Truth.TRUE
        assert ev("(rex 1 x (in a x))") is Truth.FALSE
        assert ev("(rall 3 x (nin x x))") is Truth.TRUE

    def test_ranked_above_exact(self):
        """A witness is still found at level omega."""
        assert ev("(rex w x (in b x))") is Truth.TRUE

    def test_relation_quantifiers(self):
        """A vacuous relation quantifier binds the empty relation."""
        assert ev("(ex2 X (in a b))") is Truth.TRUE
        assert ev("(ex2 X (rel X a))") is Truth.TRUE

    def test_unbounded_rejected(self):
        """Only B formulas are evaluated."""
        with pytest.raises(EvaluationError):
            ev("(ex x (in x a))")

    def test_unassigned(self):
        """Free variables need trees."""
        with pytest.raises(EvaluationError):
            ev("(in a z)")


class TestKleene:
    """Tests for the three-valued connectives."""

    @pytest.mark.parametrize(
        "text",
        [
            "(or (in a b) (in b a))",
            "(and (in a b) (ball x omega (in x omega)))",
            "(bex x b (M 2 x))",
            "(rex 2 x (and (in x a) (nin x x)))",
            "(ball x omega (in x omega))",
        ],
    )
    def test_negation_coherence(self, text):
        """The negation has the negated value."""
        f = F(text)
        assert eval_truth(negate(f), ASSIGN) is eval_truth(f, ASSIGN).negate()

    def test_unknown_propagates(self):
        """false or unknown is unknown; true or unknown is true."""
        assert ev("(or (in b a) (ball x omega (in x omega)))") is Truth.UNKNOWN
        assert ev("(or (in a b) (ball x omega (in x omega)))") is Truth.TRUE

    def test_sequent(self):
        """A sequent is its disjunction; the empty one is false."""
        assert eval_sequent([F("(in b a)"), F("(in a b)")], ASSIGN) is Truth.TRUE
        assert eval_sequent([], ASSIGN) is Truth.FALSE


class TestCandidates:
    """Tests for the candidate pools and budgets."""

    def test_hf_below_rank(self):
        """1, 2, 4 and 16 sets below ranks 1 to 4."""
        assert [len(hf_below_rank(r)) for r in range(1, 5)] == [1, 2, 4, 16]

    def test_tree_of_hf(self):
        """Canonical trees code their sets."""
        two = frozenset({frozenset(), frozenset({frozenset()})})
        assert eq_star(tree_of_hf(two), NStar(2))

    def test_budget_from_settings(self):
        """Budgets follow the settings."""
        budget = Budget.from_settings(Settings(witness_max=2))
        assert budget.witness_max == 2
        assert ev("(bex x omega (in b x))", budget=budget) is Truth.UNKNOWN

    def test_exact_rank_from_settings(self):
        """Below the exact rank a ranked universal without counterexample is unknown."""
        budget = Budget.from_settings(Settings(exact_rank=2))
        assert budget.exact_rank == 2
        assert ev("(rall 3 x (nin x x))", budget=budget) is Truth.UNKNOWN
        assert ev("(rall 2 x (nin x x))", budget=budget) is Truth.TRUE
