"""
Tests for formula syntax, measures and substitution.
"""

import pytest

from pybhw.exceptions import FormulaClassError, FormulaError, OrdinalRangeError
from pybhw.formulas import (
    EMPTY,
    MAtom,
    MemberOf,
    NotMemberOf,
    Or,
    Var,
    alpha_equal,
    bound_exists,
    class_of,
    derived,
    fresh_name,
    free_rels,
    free_vars,
    length,
    level,
    negate,
    params,
    rank,
    relativize,
    substitute,
    tran,
)
from pybhw.ordinals import BIG_OMEGA, OMEGA, ONE, ZERO, from_int, nf_sum, omega_times, succ
from pybhw.sexpr import read_formula as F


class TestRank:
    """Tests for rk."""

    def test_atoms_have_rank_zero(self):
        """Set and relation atoms."""
        assert rank(F("(in a b)")) == ZERO
        assert rank(F("(nrel U a)")) == ZERO

    def test_m_atom(self):
        """rk(M_alpha(a)) = omega * alpha."""
        assert rank(F("(M 2 a)")) == omega_times(from_int(2))
        assert rank(F("(nM 1 a)")) == OMEGA

    def test_connective_adds_one(self):
        """rk(A or B) = max + 1."""
        assert rank(F("(or (in a b) (M 1 a))")) == succ(OMEGA)

    def test_bounded_adds_two(self):
        """Bounded quantifiers add two."""
        assert rank(F("(ball x a (in x b))")) == from_int(2)

    def test_ranked_quantifier(self):
        """rk(exists x^1 A) = max(omega, rk A) + 2."""
        assert rank(F("(rex 1 x (in x a))")) == nf_sum(OMEGA, from_int(2))

    def test_unbounded_over_delta0(self):
        """Omega over a Delta0 matrix."""
        assert rank(F("(ex x (in x a))")) == BIG_OMEGA

    def test_unbounded_over_unbounded(self):
        """max(Omega+1, rk + 3) otherwise."""
        assert rank(F("(ex x (all y (in x y)))")) == nf_sum(BIG_OMEGA, from_int(3))

    def test_relation_quantifier_adds_one(self):
        """rk(exists X A) = rk A + 1."""
        assert rank(F("(ex2 X (rel X a))")) == ONE

    def test_rank_of_negation(self):
        """Negation preserves rank."""
        f = F("(or (ex x (in x a)) (ball y b (M 1 y)))")
        assert rank(negate(f)) == rank(f)


class TestLevelAndLength:
    """Tests for lev and the length measure."""

    def test_level_below_omega(self):
        """The largest parameter."""
        assert level(F("(and (M 2 a) (in a b))")) == from_int(2)
        assert level(F("(in a b)")) == ZERO

    def test_level_of_unbounded(self):
        """Omega once the rank reaches Omega."""
        assert level(F("(ex x (in x a))")) == BIG_OMEGA

    def test_params(self):
        """Levels of M atoms and ranked quantifiers, and 0 for set atoms."""
        assert params(F("(rex w x (M 1 x))")) == frozenset({OMEGA, ONE})
        assert params(F("(in a b)")) == frozenset({ZERO})

    def test_length(self):
        """Atoms 0, connectives and quantifiers add one."""
        assert length(F("(in a b)")) == 0
        assert length(F("(or (in a b) (ball x a (in x b)))")) == 2


class TestClassOf:
    """Tests for the syntactic classes."""

    def test_delta0(self):
        """Bounded quantifiers only."""
        c = class_of(F("(ball x a (in x b))"))
        assert c.is_delta0 and c.is_b and c.is_s and not c.is_s0

    def test_sigma(self):
        """One unbounded existential is S0 but not Delta0."""
        c = class_of(F("(ex x (in x a))"))
        assert c.is_s0 and c.is_sigma and not c.is_delta0 and not c.is_b

    def test_universal(self):
        """Unbounded universals leave S and B."""
        c = class_of(F("(all x (in x a))"))
        assert not c.is_s and not c.is_b and c.is_l2set

    def test_relation_quantifier(self):
        """Relation quantifiers keep B but leave Delta0 and D."""
        c = class_of(F("(ex2 X (rel X a))"))
        assert c.is_b and not c.is_delta0 and not c.is_d

    def test_level_atoms_leave_l2set(self):
        """M atoms are not in the language of set theory."""
        c = class_of(F("(M 1 a)"))
        assert not c.is_l2set and not c.is_delta0 and c.is_b

    def test_to_dict_keys(self):
        """Machine-readable flags."""
        assert set(class_of(F("(in a b)")).to_dict()) == {
            "isDelta0",
            "isD",
            "isS",
            "isS0",
            "isB",
            "isSigmaL2set",
        }


class TestNegate:
    """Tests for negate."""

    def test_involution(self):
        """not not F = F."""
        f = F("(and (ex x (in x a)) (all2 X (bex y a (rel X y))))")
        assert negate(negate(f)) == f

    def test_dual_quantifier(self):
        """not exists x A = forall x not A."""
        assert negate(F("(ex x (in x a))")) == F("(all x (nin x a))")

    def test_de_morgan(self):
        """not (A or B) = not A and not B."""
        assert negate(F("(or (in a b) (M 1 a))")) == F("(and (nin a b) (nM 1 a))")


class TestSubstitution:
    """Tests for substitution and alpha equivalence."""

    def test_substitute_free_occurrence(self):
        """x is replaced where free."""
        assert substitute(F("(in x a)"), "x", Var("b")) == F("(in b a)")

    def test_bound_occurrence_untouched(self):
        """Bound x stays."""
        f = F("(ex x (in x a))")
        assert substitute(f, "x", Var("b")) == f

    def test_capture_avoidance(self):
        """Substituting y under a y-binder renames the binder."""
        g = substitute(F("(ex y (in x y))"), "x", Var("y"))
        assert free_vars(g) == frozenset({"y"})
        assert alpha_equal(g, F("(ex z (in y z))"))

    def test_alpha_equal(self):
        """Bound names do not matter; free ones do."""
        assert alpha_equal(F("(ex x (in x a))"), F("(ex y (in y a))"))
        assert not alpha_equal(F("(ex x (in x a))"), F("(ex x (in x b))"))

    def test_free_rels(self):
        """Relation binders bind."""
        assert free_rels(F("(and (ex2 X (rel X a)) (rel U a))")) == frozenset({"U"})

    def test_fresh_name(self):
        """base, then base1, base2, ..."""
        assert fresh_name("x", set()) == "x"
        assert fresh_name("x", {"x", "x1"}) == "x2"


class TestTransforms:
    """Tests for F^beta and F^(a)."""

    def test_bound_exists(self):
        """Unbounded existentials become ranked."""
        assert bound_exists(F("(ex x (in x a))"), ONE) == F("(rex 1 x (in x a))")

    def test_bound_exists_outside_s(self):
        """Universals are rejected."""
        with pytest.raises(FormulaClassError):
            bound_exists(F("(all x (in x a))"), ONE)

    def test_relativize(self):
        """Unbounded quantifiers are restricted to a."""
        assert relativize(F("(ex x (in x b))"), Var("a")) == F("(bex x a (in x b))")
        assert relativize(F("(all x (in x b))"), EMPTY) == F("(ball x empty (in x b))")

    def test_relativize_renames_clashing_binder(self):
        """Relativizing to a renames a binder named a."""
        g = relativize(F("(ex a (in a b))"), Var("a"))
        assert alpha_equal(g, F("(bex y a (in y b))"))

    def test_relativize_keeps_relation_quantifiers(self):
        """Relation quantifiers stay unbounded."""
        g = relativize(F("(ex2 X (ex x (rel X x)))"), Var("a"))
        assert g == F("(ex2 X (bex x a (rel X x)))")


class TestConstructors:
    """Tests for atoms and derived formulas."""

    def test_level_must_be_below_omega_big(self):
        """M_Omega is not a formula."""
        with pytest.raises(OrdinalRangeError):
            MAtom(BIG_OMEGA, Var("a"))

    def test_derived_dispatch(self):
        """derived builds the named predicate."""
        assert derived("Tran", Var("a")) == tran(Var("a"))
        assert derived("Implies", MemberOf(Var("a"), Var("b")), MemberOf(Var("b"), Var("a"))) == Or(
            NotMemberOf(Var("a"), Var("b")), MemberOf(Var("b"), Var("a"))
        )

    def test_derived_errors(self):
        """Unknown names and wrong arity raise FormulaError."""
        with pytest.raises(FormulaError):
            derived("Nope", Var("a"))
        with pytest.raises(FormulaError):
            derived("Tran", Var("a"), Var("b"))
