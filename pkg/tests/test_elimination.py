"""
Tests for predicative cut elimination.
"""

import pytest

from pybhw.certificate import Certificate, Premises, cert_check, leaf
from pybhw.elimination import bound_cut_elim, cut_elim, cut_index, elim_stage
from pybhw.embedding import embed
from pybhw.exceptions import PreconditionError
from pybhw.operators import Free
from pybhw.ordinals import BIG_OMEGA, OMEGA, ONE, ZERO, from_int, nf_sum, omega_pow, omega_tower, parse
from pybhw.sequent import Sequent
from pybhw.sexpr import read_formula as F
from pybhw.tags import RSAxiom, RuleTag

from .conftest import load_golden


def _cut_free(rho):
    disj = F("(or (nin a b) (in a b))")
    premise = leaf((F("(nin a b)"), F("(in a b)")), axiom=RSAxiom.TND, rho=rho)
    return Certificate(Sequent.of(disj), ONE, rho, Free(), RuleTag.OR, Premises.of(premise), principal=disj)


class TestBound:
    """Tests for bound_cut_elim."""

    def test_zero_stages(self):
        """omega_0(alpha) = alpha."""
        assert bound_cut_elim(OMEGA, 0) == OMEGA

    def test_tower(self):
        """Two stages over omega^(Omega+1)."""
        alpha = parse("w^(W + w^(0))")
        assert bound_cut_elim(alpha, 2) == omega_pow(omega_pow(alpha))
        assert bound_cut_elim(alpha, 2) == omega_tower(2, alpha)


class TestCutIndex:
    """Tests for cut_index."""

    def test_index(self):
        """Omega+n+1 gives n."""
        assert cut_index(_cut_free(nf_sum(BIG_OMEGA, from_int(3)))) == 2
        assert cut_index(_cut_free(nf_sum(BIG_OMEGA, ONE))) == 0

    @pytest.mark.parametrize("rho", [ZERO, BIG_OMEGA, OMEGA])
    def test_not_above_omega(self, rho):
        """Cut ranks at most Omega have no index."""
        with pytest.raises(PreconditionError):
            cut_index(_cut_free(rho))


class TestCutElim:
    """Tests for elim_stage and cut_elim."""

    def test_stage_needs_matching_rank(self):
        """Stage j is for cut rank Omega+j+1."""
        with pytest.raises(PreconditionError):
            elim_stage(_cut_free(nf_sum(BIG_OMEGA, from_int(3))), 1)
        with pytest.raises(PreconditionError):
            elim_stage(_cut_free(nf_sum(BIG_OMEGA, from_int(2))), 0)

    def test_stage_labels(self):
        """One stage: alpha to omega^alpha, rank down by one."""
        c = elim_stage(_cut_free(nf_sum(BIG_OMEGA, from_int(3))), 2)
        assert c.alpha == OMEGA
        assert c.rho == nf_sum(BIG_OMEGA, from_int(2))
        assert c.premise(0).alpha == ONE

    def test_full_elimination(self):
        """Down to Omega+1 with alpha = omega_n(alpha)."""
        c = cut_elim(_cut_free(nf_sum(BIG_OMEGA, from_int(3))))
        assert c.rho == nf_sum(BIG_OMEGA, ONE)
        assert c.alpha == bound_cut_elim(ONE, 2)
        report = cert_check(c)
        assert report.ok and report.status == "verified (complete)"

    def test_nothing_to_do(self):
        """At Omega+1 labels are unchanged."""
        c = _cut_free(nf_sum(BIG_OMEGA, ONE))
        assert cut_elim(c) is c

    @pytest.mark.filterwarnings("ignore::pybhw.exceptions.BudgetExhaustedWarning")
    def test_disjunction_cut(self):
        """A cut on A or B of rank Omega+4 reduces to cuts on A and on B that check."""
        c = embed(load_golden("or_cut.json")).certificate
        assert c.rho == nf_sum(BIG_OMEGA, from_int(5))
        reduced = cut_elim(c)
        assert reduced.rho == nf_sum(BIG_OMEGA, ONE)
        assert reduced.conclusion == c.conclusion
        assert cert_check(reduced, depth=6, samples=2, seed=0).ok

    def test_disjunction_cut_keeps_the_right_disjunct(self):
        """The inner cut on B still derives the context that contains B."""
        c = elim_stage(embed(load_golden("or_cut.json")).certificate, 4)
        inner = c.premise(0)
        assert inner.rule is RuleTag.CUT and inner.cut_formula == F("(ex x (all y (nin y x)))")
        assert F("(ex x (all y (nin y x)))") in inner.conclusion
        assert F("(ex x (all y (in y x)))") in inner.conclusion
