"""
Collapsing Module

Collapses a derivation of S-or-B formulas with cut rank at most Omega+1
below Omega: from H_sigma[Gamma] |-^alpha_(Omega+1) Gamma derive
H_hat[Gamma] |-^psi(hat)_psi(hat) Gamma with hat = sigma + omega^(Omega+alpha).

Example::

    from pybhw.collapsing import collapse, hat
    from pybhw.ordinals import ZERO

    low = collapse(cert, ZERO)
    low.alpha == psi(hat(ZERO, cert.alpha))     # True
"""

import logging

from .builders import derive_lifting
from .certificate import Certificate, Key, Premises, bc_formula, reflection
from .exceptions import HypothesisViolation
from .formulas import UnbEx, bound_exists, in_b, in_s, negate, rank
from .operators import DOperator, Sigma, h_mem
from .ordinals import BIG_OMEGA, OrdTerm, compare, in_C, nf_sum, omega_offset, omega_pow, psi, render, succ
from .tags import Comparison, RuleTag
from .transforms import boundedness, invert, lift

log = logging.getLogger(__name__)


def hat(sigma: OrdTerm, alpha: OrdTerm) -> OrdTerm:
    """sigma + omega^(Omega+alpha)."""
    return nf_sum(sigma, omega_pow(nf_sum(BIG_OMEGA, alpha)))


def _sigma_op(op: DOperator, sigma: OrdTerm) -> Sigma:
    return Sigma(sigma, op.m)


def check_hypotheses(c: Certificate, sigma: OrdTerm) -> None:
    """
    Raises:
        HypothesisViolation: Naming the first hypothesis of collapsing that
            c and sigma fail.
    """
    for f in c.conclusion:
        if not (in_s(f) or in_b(f)):
            raise HypothesisViolation("Gamma in S or B", str(f))
    bound = succ(sigma)
    for t in c.conclusion.params():
        if not (in_C(t, bound) or compare(t, psi(bound)) is Comparison.LESS):
            raise HypothesisViolation("|Gamma| in C(sigma+1, psi(sigma+1))", render(t))
    base = _sigma_op(c.op, sigma)
    if not h_mem(sigma, base):
        raise HypothesisViolation("sigma in H_sigma[Gamma]", render(sigma))
    if not c.op.within(base):
        raise HypothesisViolation("operator is H_sigma[Gamma]", f"{c.op} is not within {base}")
    if compare(c.rho, succ(BIG_OMEGA)) is Comparison.GREATER:
        raise HypothesisViolation("cut rank at most Omega+1", render(c.rho))


def collapse(c: Certificate, sigma: OrdTerm) -> Certificate:
    """
    H_sigma[Gamma] |-^alpha_(Omega+1) Gamma gives
    H_hat[Gamma] |-^psi(hat)_psi(hat) Gamma for hat = hat(sigma, alpha).

    Raises:
        HypothesisViolation: When a hypothesis of collapsing fails.
    """
    check_hypotheses(c, sigma)
    result = _Collapse(sigma)(c)
    log.info("collapsed to %s", render(result.alpha))
    return result


class _Collapse:
    def __init__(self, sigma: OrdTerm) -> None:
        self.sigma = sigma

    def hat(self, alpha: OrdTerm) -> OrdTerm:
        return hat(self.sigma, alpha)

    def __call__(self, c: Certificate) -> Certificate:
        top = self.hat(c.alpha)
        label = psi(top)
        op = Sigma(top, c.op.m)
        if c.is_axiom:
            return c.relabel(alpha=label, rho=label, op=op)
        if c.rule is RuleTag.ALL:
            raise HypothesisViolation("Gamma in S or B", "an unbounded universal is introduced")
        if c.rule is RuleTag.CUT:
            cut_rank = rank(c.cut_formula)
            if compare(cut_rank, BIG_OMEGA) is Comparison.LESS:
                return self._generic(c, label, op)
            if omega_offset(cut_rank) == 0:
                return self._omega_cut(c, label, op)
            raise HypothesisViolation("cut rank at most Omega+1", f"cut of rank {render(cut_rank)}")
        if c.rule is RuleTag.S0_REF:
            return self._reflection(c, label, op)
        return self._generic(c, label, op)

    def _generic(self, c: Certificate, label: OrdTerm, op: Sigma) -> Certificate:
        def transform(key: Key, d: Certificate) -> Certificate:
            return self(d)

        return c.relabel(alpha=label, rho=label, op=op, premises=c.premises.mapped(transform))

    def _omega_cut(self, c: Certificate, label: OrdTerm, op: Sigma) -> Certificate:
        f = c.cut_formula
        if isinstance(f, UnbEx):
            d_e, d_u = c.premise(0), c.premise(1)
        else:
            d_e, d_u, f = c.premise(1), c.premise(0), negate(f)
        low = self(d_e)
        beta = low.alpha
        bounded = boundedness(low, beta, f)
        sigma_e = self.hat(d_e.alpha)
        lifted = lift(d_u, sigma_e)
        lifted = lifted.relabel(op=lifted.op.extend(d_e.alpha))
        universal = invert(lifted, negate(f), beta=beta)
        high = _Collapse(sigma_e)(universal)
        log.debug("rank Omega cut on %s bounded at %s", f, render(beta))
        return Certificate(
            c.conclusion,
            label,
            label,
            op,
            RuleTag.CUT,
            Premises.of(bounded, high),
            p=c.p,
            cut_formula=bound_exists(f, beta),
        )

    def _reflection(self, c: Certificate, label: OrdTerm, op: Sigma) -> Certificate:
        source = c.source
        d = c.premise(0)
        low = self(d)
        beta = low.alpha
        bounded = boundedness(low, beta, source)
        claim = bc_formula(source, beta)
        gamma = c.conclusion
        collection = Certificate(
            gamma.union((claim,)),
            succ(beta),
            beta,
            bounded.op,
            RuleTag.BC,
            Premises.of(bounded),
            p=c.p,
            principal=claim,
            source=source,
            bc_level=beta,
        )
        lifting = derive_lifting(reflection(source), claim.level)
        log.debug("reflection of %s bounded at %s", source, render(beta))
        return Certificate(
            gamma, label, label, op, RuleTag.CUT, Premises.of(collection, lifting), p=c.p, cut_formula=claim
        )


def ordered(sigma: OrdTerm, alpha: OrdTerm, beta: OrdTerm) -> bool:
    """psi(hat(sigma, alpha)) < psi(hat(sigma, beta))."""
    return compare(psi(hat(sigma, alpha)), psi(hat(sigma, beta))) is Comparison.LESS
