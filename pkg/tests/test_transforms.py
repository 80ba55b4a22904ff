"""
Tests for weakening, lifting, inversion and boundedness.
"""

import pytest

from pybhw.builders import derive_tnd
from pybhw.certificate import cert_check, check_node, leaf
from pybhw.exceptions import PreconditionError
from pybhw.operators import Free, Sigma
from pybhw.ordinals import BIG_OMEGA, ONE, ZERO, from_int, psi
from pybhw.sexpr import read_formula as F
from pybhw.tags import RSAxiom, RuleTag
from pybhw.transforms import boundedness, invert, lift, weaken


@pytest.fixture
def tnd_leaf():
    return leaf((F("(nin a b)"), F("(in a b)")), axiom=RSAxiom.TND)


class TestWeaken:
    """Tests for weaken."""

    def test_identity(self, tnd_leaf):
        """Nothing to change returns the same certificate."""
        assert weaken(tnd_leaf) is tnd_leaf

    def test_raise_labels_and_add_formulas(self, tnd_leaf):
        """Larger labels and extra side formulas."""
        w = weaken(tnd_leaf, alpha=from_int(2), rho=ONE, extra=[F("(in c d)")])
        assert w.alpha == from_int(2) and w.rho == ONE
        assert F("(in c d)") in w.conclusion
        check_node(w)

    def test_label_cannot_shrink(self, tnd_leaf):
        """beta below alpha is refused."""
        with pytest.raises(PreconditionError):
            weaken(tnd_leaf.relabel(alpha=ONE), alpha=ZERO)

    def test_label_must_be_controlled(self, tnd_leaf):
        """psi(0) is not in H[]."""
        with pytest.raises(PreconditionError):
            weaken(tnd_leaf, alpha=psi(ZERO))
        assert weaken(tnd_leaf, alpha=psi(ZERO), op=Sigma(ZERO)).op == Sigma(ZERO)

    def test_extra_parameters_controlled(self, tnd_leaf):
        """Side formulas may not bring new parameters."""
        with pytest.raises(PreconditionError):
            weaken(tnd_leaf, extra=[F('(M "p(0)" a)')])


class TestLift:
    """Tests for lift."""

    def test_free_becomes_sigma(self, tnd_leaf):
        """H[m] lifts to H_sigma[m]."""
        assert lift(tnd_leaf, ONE).op == Sigma(ONE)

    def test_never_lowers(self, tnd_leaf):
        """The larger sigma wins."""
        high = tnd_leaf.relabel(op=Sigma(from_int(2)))
        assert lift(high, ONE) is high


class TestInvert:
    """Tests for invert."""

    def test_disjunction(self):
        """Gamma, F1 or F2 becomes Gamma, F1, F2."""
        target = F("(or (ex x (in x a)) (in a b))")
        cert = derive_tnd(target)
        inv = invert(cert, target)
        assert target not in inv.conclusion
        assert F("(ex x (in x a))") in inv.conclusion
        assert F("(in a b)") in inv.conclusion
        assert inv.alpha == cert.alpha and inv.rho == cert.rho

    @pytest.mark.filterwarnings("ignore::pybhw.exceptions.BudgetExhaustedWarning")
    def test_disjunction_checks(self):
        """The inverted certificate still checks."""
        target = F("(or (ex x (in x a)) (in a b))")
        assert cert_check(invert(derive_tnd(target), target), depth=3, samples=3).ok

    def test_small_rank_refused(self, tnd_leaf):
        """Inversion of a disjunction needs rank at least Omega."""
        with pytest.raises(PreconditionError):
            invert(tnd_leaf, F("(or (in a b) (in b a))"))

    def test_conjunction_needs_key(self):
        """The conjunct is chosen by key."""
        target = F("(and (all x (in x a)) (in a b))")
        cert = derive_tnd(target)
        with pytest.raises(PreconditionError):
            invert(cert, target)
        assert F("(in a b)") in invert(cert, target, key=1).conclusion

    def test_universal_to_ranked(self):
        """forall x F becomes forall x^beta F."""
        target = F("(all x (in x a))")
        cert = derive_tnd(target)
        inv = invert(cert, target, beta=ONE)
        assert F("(rall 1 x (in x a))") in inv.conclusion
        assert inv.rule is RuleTag.RALL

    def test_universal_level_below_omega(self):
        """Omega itself is not a level."""
        target = F("(all x (in x a))")
        with pytest.raises(PreconditionError):
            invert(derive_tnd(target), target, beta=BIG_OMEGA)

    def test_no_inversion(self, tnd_leaf):
        """Atoms have no inversion."""
        with pytest.raises(PreconditionError):
            invert(tnd_leaf, F("(in a b)"))


class TestBoundedness:
    """Tests for boundedness."""

    def test_leaf(self):
        """exists x F becomes exists x^beta F."""
        c = leaf((F("(nM 0 a)"), F("(ex x (in x b))")), axiom=RSAxiom.M_ZERO)
        b = boundedness(c, ONE, F("(ex x (in x b))"))
        assert F("(rex 1 x (in x b))") in b.conclusion
        assert F("(ex x (in x b))") not in b.conclusion
        assert b.alpha == c.alpha

    def test_target_must_be_in_s(self):
        """Unbounded universals are refused."""
        c = leaf((F("(nM 0 a)"), F("(all x (in x b))")), axiom=RSAxiom.M_ZERO)
        with pytest.raises(PreconditionError):
            boundedness(c, ONE, F("(all x (in x b))"))

    def test_bound_below_omega(self):
        """beta must be below Omega and at least alpha."""
        c = leaf((F("(nM 0 a)"), F("(ex x (in x b))")), axiom=RSAxiom.M_ZERO, alpha=from_int(2))
        with pytest.raises(PreconditionError):
            boundedness(c, BIG_OMEGA, F("(ex x (in x b))"))
        with pytest.raises(PreconditionError):
            boundedness(c, ONE, F("(ex x (in x b))"))

    def test_bound_controlled(self):
        """psi(0) is not controlled by H[]."""
        c = leaf((F("(nM 0 a)"), F("(ex x (in x b))")), Free(), axiom=RSAxiom.M_ZERO)
        with pytest.raises(PreconditionError):
            boundedness(c, psi(ZERO), F("(ex x (in x b))"))
