"""
Tests for the lemma builders.
"""

import pytest

from pybhw import builders
from pybhw.certificate import cert_check
from pybhw.exceptions import PreconditionError
from pybhw.formulas import (
    EMPTY,
    RankedEx,
    Var,
    empty_axiom,
    eps_ind_axiom,
    eps_ind_hypothesis,
    negate,
    rank,
)
from pybhw.ordinals import BIG_OMEGA, OMEGA, ONE, ZERO, from_int, natural_sum, nf_sum, omega_pow, succ
from pybhw.sequent import Sequent
from pybhw.sexpr import read_formula as F
from pybhw.tags import RSAxiom, RuleTag

A, B = Var("a"), Var("b")

EXAMPLES = {
    "tnd": lambda: builders.derive_tnd(F("(ex x (in x a))")),
    "lifting": lambda: builders.derive_lifting(F("(ex x (in x a))"), ONE),
    "eps_ind": lambda: builders.derive_eps_ind(F("(bex y x (in y a))"), "x"),
    "empty": builders.derive_empty,
    "empty_set": builders.derive_empty_set,
    "omega": builders.derive_omega,
    "infinity": lambda: builders.derive_infinity_eq(A, ONE),
    "pair": lambda: builders.derive_pair(A, ONE, B, ONE),
    "union": lambda: builders.derive_union(A, ONE),
    "sep": lambda: builders.derive_sep(A, ONE, "x", F("(in x b)")),
    "ca": lambda: builders.derive_ca(F("(rel Y x)"), "x", "Y"),
    "s0_ref": lambda: builders.derive_s0_ref(F("(ex x (in x a))"), ((ONE, A),)),
}


class TestLabels:
    """Each builder carries the label and cut rank of its lemma."""

    def test_tnd(self):
        """rk(F) # rk(F), cut free."""
        f = F("(ex x (in x a))")
        cert = builders.derive_tnd(f)
        assert cert.alpha == natural_sum(rank(f), rank(f))
        assert cert.rho == ZERO
        assert cert.conclusion == Sequent.of(negate(f), f)
        assert cert.rule is RuleTag.ALL

    def test_tnd_of_b_formula_is_axiom(self):
        """Formulas of class B need no rule."""
        cert = builders.derive_tnd(F("(ball x a (in x b))"))
        assert cert.is_axiom
        assert cert.axiom is RSAxiom.TND

    def test_lifting(self):
        """(rk # rk) for the ranked existential."""
        f = F("(ex x (in x a))")
        ranked_rank = rank(RankedEx(ONE, "x", f.body))
        cert = builders.derive_lifting(f, ONE)
        assert cert.alpha == natural_sum(ranked_rank, ranked_rank)
        assert cert.rule is RuleTag.RALL

    def test_eps_ind(self):
        """sigma + Omega + 1 at cut rank Omega."""
        body = F("(bex y x (in y a))")
        sigma = omega_pow(rank(eps_ind_hypothesis(body, "x")))
        cert = builders.derive_eps_ind(body, "x")
        assert cert.alpha == nf_sum(sigma, succ(BIG_OMEGA))
        assert cert.rho == BIG_OMEGA
        assert cert.conclusion == Sequent.of(eps_ind_axiom(body, "x"))

    def test_constants(self):
        """empty_set at 2, empty at 3, omega at 0."""
        assert builders.derive_empty_set().alpha == from_int(2)
        assert builders.derive_empty_set().conclusion == Sequent.of(empty_axiom())
        assert builders.derive_empty().alpha == from_int(3)
        omega = builders.derive_omega()
        assert omega.alpha == ZERO and omega.axiom is RSAxiom.M_OMEGA

    def test_pair(self):
        """omega^(beta+2) with beta the larger level."""
        cert = builders.derive_pair(A, ONE, B, OMEGA)
        assert cert.alpha == omega_pow(nf_sum(OMEGA, from_int(2)))
        assert cert.rule is RuleTag.CUT
        assert F("(nM w b)") in cert.conclusion

    def test_union(self):
        """omega^(alpha+2) and cut rank omega*alpha+omega."""
        cert = builders.derive_union(A, ONE)
        assert cert.alpha == omega_pow(from_int(3))
        assert cert.rho == nf_sum(OMEGA, OMEGA)

    def test_sep(self):
        """Cut rank Omega."""
        cert = builders.derive_sep(A, ONE, "x", F("(in x b)"), context=((from_int(2), B),))
        assert cert.alpha == omega_pow(from_int(4))
        assert cert.rho == BIG_OMEGA
        assert F("(nM 2 b)") in cert.conclusion

    def test_s0_ref(self):
        """omega^(rk(A)+1), cut free."""
        f = F("(ex x (in x a))")
        cert = builders.derive_s0_ref(f)
        assert cert.alpha == omega_pow(succ(rank(f)))
        assert cert.rho == ZERO

    def test_ca_leaf(self):
        """A single comprehension leaf with its context."""
        cert = builders.derive_ca(F("(rel Y x)"), "x", "Y", context=((ONE, EMPTY),))
        assert cert.is_axiom and cert.axiom is RSAxiom.COMPREHENSION
        assert len(cert.conclusion) == 2


class TestPreconditions:
    """Builders refuse inputs outside their lemma."""

    def test_lifting_needs_existential(self):
        """Only unbounded existentials lift."""
        with pytest.raises(PreconditionError):
            builders.derive_lifting(F("(in a b)"), ONE)

    def test_sep_needs_delta0(self):
        """Separation is for Delta0 matrices."""
        with pytest.raises(PreconditionError):
            builders.derive_sep(A, ONE, "x", F("(ex y (in y x))"))

    def test_ca_needs_delta0(self):
        """So is comprehension."""
        with pytest.raises(PreconditionError):
            builders.derive_ca(F("(ex y (in y x))"), "x", "Y")

    def test_s0_ref_needs_s0(self):
        """A Delta0 formula is not in S0."""
        with pytest.raises(PreconditionError):
            builders.derive_s0_ref(F("(in a b)"))


class TestChecked:
    """Every builder passes the sampled checker."""

    def test_table_matches_names(self):
        """The examples cover every builder name."""
        assert set(EXAMPLES) == set(builders.BUILDERS)

    @pytest.mark.filterwarnings("ignore::pybhw.exceptions.BudgetExhaustedWarning")
    @pytest.mark.parametrize("name", builders.BUILDERS)
    def test_cert_check(self, name):
        """No side condition fails on the sampled nodes."""
        report = cert_check(EXAMPLES[name](), depth=3, samples=3, seed=1)
        assert report.ok

    def test_lazy_premises(self):
        """Premises are only built when asked for."""
        cert = builders.derive_tnd(F("(ex x (in x a))"))
        assert not cert.premises.is_finite
        assert cert.premises._memo == {}
        cert.premise((ZERO, A))
        assert len(cert.premises._memo) == 1
