"""
Tests for derivation operators.
"""

from pybhw.operators import Free, Sigma, h_mem, psi_leaves
from pybhw.ordinals import BIG_OMEGA, ONE, ZERO, from_int, omega_pow, parse, psi, succ


class TestFree:
    """Tests for H[m]."""

    def test_psi_free_terms_are_members(self):
        """Terms built from 0 and Omega need no generators."""
        op = Free()
        assert ZERO in op and BIG_OMEGA in op
        assert parse("w^(W + 1) + 3") in op

    def test_psi_terms_need_generators(self):
        """psi(0) only once generated."""
        assert psi(ZERO) not in Free()
        op = Free().extend(psi(ZERO))
        assert psi(ZERO) in op
        assert omega_pow(succ(psi(ZERO))) in op
        assert psi(ONE) not in op

    def test_extend_is_idempotent(self):
        """Extending by members returns the same operator."""
        op = Free()
        assert op.extend(ONE, BIG_OMEGA) is op

    def test_within(self):
        """Generators of one lie in the other."""
        small = Free().extend(psi(ZERO))
        assert small.within(Sigma(ZERO))
        assert not small.within(Free())

    def test_str(self):
        """H[...] spelling."""
        assert str(Free()) == "H[]"
        assert str(Free().extend(psi(ZERO))) == "H[p(0)]"


class TestSigma:
    """Tests for H_sigma[m]."""

    def test_values_are_c_of_sigma_plus_one(self):
        """H_0 holds psi(0) but not psi(1)."""
        op = Sigma(ZERO)
        assert h_mem(psi(ZERO), op)
        assert not h_mem(psi(ONE), op)
        assert h_mem(psi(ONE), Sigma(ONE))

    def test_generated_arguments(self):
        """psi(xi) joins once xi is a member below sigma."""
        op = Sigma(from_int(3)).extend(psi(BIG_OMEGA))
        assert psi(BIG_OMEGA) in op
        assert psi(from_int(2)) in op
        assert psi(from_int(4)) not in op

    def test_within_compares_sigma(self):
        """A larger sigma is not within a smaller one."""
        assert Sigma(ZERO).within(Sigma(ONE))
        assert not Sigma(ONE).within(Sigma(ZERO))
        assert not Sigma(ZERO).within(Free())

    def test_lift_never_lowers(self):
        """lift takes the maximum."""
        assert Sigma(ONE).lift(ZERO).sigma == ONE
        assert Sigma(ZERO).lift(ONE).sigma == ONE

    def test_join(self):
        """The least operator above both."""
        joined = Free().extend(psi(ZERO)).join(Sigma(ONE))
        assert isinstance(joined, Sigma)
        assert joined.sigma == ONE
        assert psi(ZERO) in joined.m

    def test_str(self):
        """H_sigma[...] spelling."""
        assert str(Sigma(ZERO)) == "H_0[]"


class TestPsiLeaves:
    """Tests for psi_leaves."""

    def test_leaves_skip_psi_arguments(self):
        """Only the outermost psi terms are leaves."""
        t = parse("w^(p(p(0)) + 1) + p(0)")
        assert set(psi_leaves(t)) == {psi(psi(ZERO)), psi(ZERO)}
