"""
Predicative Cut Elimination

Removes cuts whose formulas have rank above Omega. One stage turns
op |-^alpha_(Omega+j+1) Gamma into op |-^(omega^alpha)_(Omega+j) Gamma by
replacing every cut of rank Omega+j with the reduction of its two premises;
``cut_elim`` runs the stages down to cut rank Omega+1.

Example::

    from pybhw.elimination import bound_cut_elim, cut_elim

    reduced = cut_elim(cert)                  # cert.rho == Omega + 3
    reduced.alpha == bound_cut_elim(cert.alpha, 2)
"""

import logging

from .certificate import Certificate, Key, Premises
from .exceptions import PreconditionError
from .formulas import (
    EXISTENTIAL,
    BoundedEx,
    Formula,
    Or,
    RankedEx,
    RelEx,
    UnbEx,
    alpha_equal,
    negate,
    rank,
)
from .ordinals import (
    BIG_OMEGA,
    OrdTerm,
    from_int,
    natural_sum,
    nf_sum,
    omega_offset,
    omega_pow,
    omega_tower,
    render,
)
from .tags import RuleTag
from .transforms import axiom_leaf, invert, weaken

log = logging.getLogger(__name__)

_INTRODUCED_BY = {
    Or: RuleTag.OR,
    BoundedEx: RuleTag.BEX,
    RankedEx: RuleTag.REX,
    UnbEx: RuleTag.EX,
    RelEx: RuleTag.EX2,
}


def bound_cut_elim(alpha: OrdTerm, n: int) -> OrdTerm:
    """omega_n(alpha), the label after eliminating n cut ranks above Omega+1."""
    return omega_tower(n, alpha)


class _Reduction:
    """
    Cut F of rank rho away: from d_U deriving Gamma, not F and d_E deriving
    Theta, F with F existential, derive Gamma, Theta at b + (a # a), where b
    and a are the labels of d_U and of the current node of d_E.
    """

    def __init__(self, f: Formula, d_u: Certificate, rho: OrdTerm) -> None:
        self.f = f
        self.neg = negate(f)
        self.d_u = d_u
        self.gamma = d_u.conclusion.without(self.neg)
        self.rho = rho

    def label(self, a: OrdTerm) -> OrdTerm:
        return nf_sum(self.d_u.alpha, natural_sum(a, a))

    def __call__(self, e: Certificate) -> Certificate:
        op = e.op.join(self.d_u.op)
        conclusion = e.conclusion.without(self.f).union(self.gamma)
        alpha = self.label(e.alpha)
        if self.f not in e.conclusion:
            return e.relabel(conclusion=conclusion, alpha=alpha, rho=self.rho, op=op)
        if e.is_axiom:
            return axiom_leaf(e, conclusion, "cut_elim").relabel(alpha=alpha, rho=self.rho, op=op)
        if e.rule is _INTRODUCED_BY.get(type(self.f)) and alpha_equal(e.principal, self.f):
            return self._principal(e, conclusion, alpha, op)

        def transform(key: Key, d: Certificate) -> Certificate:
            return self(d)

        return e.relabel(
            conclusion=conclusion, alpha=alpha, rho=self.rho, op=op, premises=e.premises.mapped(transform)
        )

    def _principal(self, e, conclusion, alpha, op) -> Certificate:
        d = self(e.premise(0))
        u = weaken(self.d_u, op=self.d_u.op.join(op))
        minors = e.minors(0)
        if isinstance(self.f, Or):
            # two cuts: first on the right disjunct, then on the left
            right = invert(u, self.neg, key=1)
            left = invert(u, self.neg, key=0)
            inner = Certificate(
                conclusion.union((minors[0],)),
                nf_sum(d.alpha, from_int(1)),
                self.rho,
                op,
                RuleTag.CUT,
                Premises.of(d, right),
                cut_formula=minors[1],
            )
            return Certificate(
                conclusion, alpha, self.rho, op, RuleTag.CUT, Premises.of(inner, left), cut_formula=minors[0]
            )
        inverted = invert(u, self.neg, key=_instance_key(e))
        return Certificate(
            conclusion, alpha, self.rho, op, RuleTag.CUT, Premises.of(d, inverted), cut_formula=minors[0]
        )


def _instance_key(e: Certificate) -> Key:
    if e.rule is RuleTag.BEX:
        return e.term
    if e.rule in (RuleTag.EX, RuleTag.REX):
        return (e.level, e.term)
    return e.relation


class _Stage:
    """One elimination stage for cut rank Omega+j."""

    def __init__(self, j: int) -> None:
        self.top = nf_sum(BIG_OMEGA, from_int(j))

    def __call__(self, c: Certificate) -> Certificate:
        alpha = omega_pow(c.alpha)
        if c.is_axiom:
            return c.relabel(alpha=alpha, rho=self.top)
        if c.rule is RuleTag.CUT and rank(c.cut_formula) == self.top:
            return self._reduce(c, alpha)

        def transform(key: Key, d: Certificate) -> Certificate:
            return self(d)

        return c.relabel(alpha=alpha, rho=self.top, premises=c.premises.mapped(transform))

    def _reduce(self, c: Certificate, alpha: OrdTerm) -> Certificate:
        left, right = self(c.premise(0)), self(c.premise(1))
        f = c.cut_formula
        if isinstance(f, EXISTENTIAL):
            d_e, d_u = left, right
        else:
            d_e, d_u, f = right, left, negate(f)
        log.debug("reducing cut on %s", f)
        reduced = _Reduction(f, d_u, self.top)(d_e)
        return reduced.relabel(conclusion=c.conclusion, alpha=alpha, op=c.op.join(reduced.op))


def elim_stage(c: Certificate, j: int) -> Certificate:
    """
    From op |-^alpha_(Omega+j+1) Gamma derive op |-^(omega^alpha)_(Omega+j) Gamma.

    Raises:
        PreconditionError: If j < 1 or the cut rank is not Omega+j+1.
    """
    if j < 1 or omega_offset(c.rho) != j + 1:
        raise PreconditionError("cut_elim", f"stage {j} needs cut rank Omega+{j + 1}, got {render(c.rho)}")
    return _Stage(j)(c)


def cut_elim(c: Certificate) -> Certificate:
    """
    From op |-^alpha_(Omega+n+1) Gamma derive op |-^(omega_n(alpha))_(Omega+1) Gamma.

    Raises:
        PreconditionError: If the cut rank is not Omega+n+1 for some n.
    """
    k = omega_offset(c.rho)
    if k is None or k < 1:
        raise PreconditionError("cut_elim", f"cut rank must be Omega+n+1, got {render(c.rho)}")
    for j in range(k - 1, 0, -1):
        c = elim_stage(c, j)
        log.info("cut elimination: rank Omega+%d removed, label %s", j, render(c.alpha))
    return c


def cut_index(c: Certificate) -> int:
    """n with c.rho = Omega+n+1."""
    k = omega_offset(c.rho)
    if k is None or k < 1:
        raise PreconditionError("cut_elim", f"cut rank must be Omega+n+1, got {render(c.rho)}")
    return k - 1
