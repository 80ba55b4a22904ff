"""
Certificate Transformers

Weakening, inversion, boundedness and operator lifting on lazy RS*
certificates. Each transformer rewrites the root eagerly and wraps every
premise oracle, so nothing below the root is built until someone asks for it.
Labels and cut ranks are preserved unless stated otherwise.

Example::

    from pybhw.transforms import invert

    # c derives Gamma, F1 or F2 with Omega <= rk(F1 or F2)
    inv = invert(c, f)             # derives Gamma, F1, F2 with c's labels
"""

import logging
from typing import Iterable, Optional, Sequence, Tuple

from .certificate import Certificate, Key, rs_check_axiom
from .exceptions import PreconditionError
from .formulas import (
    And,
    BoundedAll,
    Formula,
    NegMAtom,
    NotMemberOf,
    Or,
    RankedAll,
    RelAll,
    UnbAll,
    alpha_equal,
    bound_exists,
    in_s,
    instantiate,
    params,
    rank,
)
from .operators import DOperator, Sigma
from .ordinals import BIG_OMEGA, OrdTerm, compare, render, sorted_terms
from .sequent import Sequent
from .tags import Comparison, RuleTag

log = logging.getLogger(__name__)


def _le(a: OrdTerm, b: OrdTerm) -> bool:
    return compare(a, b) is not Comparison.GREATER


def _lt(a: OrdTerm, b: OrdTerm) -> bool:
    return compare(a, b) is Comparison.LESS


def _member(f: Formula, formulas: Iterable[Formula]) -> bool:
    return any(alpha_equal(f, g) for g in formulas)


def _extended(op: DOperator, formulas: Iterable[Formula]) -> DOperator:
    found = set()
    for f in formulas:
        found |= params(f)
    return op.extend(*sorted_terms(found))


def axiom_leaf(c: Certificate, conclusion: Sequent, operation: str) -> Certificate:
    """The leaf c over a new conclusion, which must still be an axiom."""
    ax = rs_check_axiom(conclusion)
    if ax is None:
        raise PreconditionError(operation, f"{conclusion} is no longer an axiom")
    return c.relabel(conclusion=conclusion, axiom=ax)


# Weakening and lifting


def weaken(
    c: Certificate,
    alpha: Optional[OrdTerm] = None,
    rho: Optional[OrdTerm] = None,
    extra: Iterable[Formula] = (),
    op: Optional[DOperator] = None,
) -> Certificate:
    """
    From op |-^alpha_rho Gamma derive op' |-^beta_sigma Gamma, extra for
    alpha <= beta in op', rho <= sigma and op within op'.

    Raises:
        PreconditionError: When a label would shrink, beta or the parameters
            of extra are not controlled, or op' does not contain op.
    """
    beta = c.alpha if alpha is None else alpha
    sigma = c.rho if rho is None else rho
    new_op = c.op if op is None else op
    extra = tuple(extra)
    if not _le(c.alpha, beta):
        raise PreconditionError("weaken", f"label {render(beta)} is below {render(c.alpha)}")
    if not _le(c.rho, sigma):
        raise PreconditionError("weaken", f"cut rank {render(sigma)} is below {render(c.rho)}")
    if not c.op.within(new_op):
        raise PreconditionError("weaken", f"{c.op} is not within {new_op}")
    if beta not in new_op:
        raise PreconditionError("weaken", f"{render(beta)} is not controlled by {new_op}")
    for f in extra:
        if not all(t in new_op for t in params(f)):
            raise PreconditionError("weaken", f"parameters of {f} are not controlled by {new_op}")
    if beta == c.alpha and sigma == c.rho and new_op == c.op and not extra:
        return c
    return c.relabel(conclusion=c.conclusion.union(extra), alpha=beta, rho=sigma, op=new_op)


def lift(c: Certificate, sigma: OrdTerm) -> Certificate:
    """The same certificate under H_s[m] with s the larger of sigma and the current one."""
    op = c.op
    if isinstance(op, Sigma):
        lifted = op.lift(sigma)
        return c if lifted == op else c.relabel(op=lifted)
    return c.relabel(op=Sigma(sigma, op.m))


# Inversion


class _Inversion:
    """
    One inversion: every occurrence of target in a conclusion is replaced by
    the formulas in result. ``premise_key`` picks the premise of a node that
    introduces target; ``ranked`` rebuilds a (forall) node as (forall^beta).
    """

    def __init__(
        self,
        target: Formula,
        result: Tuple[Formula, ...],
        rule: RuleTag,
        premise_key: Optional[Key] = None,
        ranked: Optional[OrdTerm] = None,
    ) -> None:
        self.target = target
        self.result = result
        self.rule = rule
        self.premise_key = premise_key
        self.ranked = ranked

    def __call__(self, c: Certificate) -> Certificate:
        if self.target not in c.conclusion:
            return c
        conclusion = c.conclusion.without(self.target).union(self.result)
        if c.is_axiom:
            return axiom_leaf(c, conclusion, "invert")
        op = _extended(c.op, self.result)
        if c.rule is self.rule and c.principal is not None and alpha_equal(c.principal, self.target):
            return self._principal(c, conclusion, op)
        return c.relabel(conclusion=conclusion, op=op, premises=c.premises.mapped(self._side(c)))

    def _side(self, c: Certificate):
        def transform(key: Key, d: Certificate) -> Certificate:
            if _member(self.target, c.minors(key)):
                return d
            return self(d)

        return transform

    def _principal(self, c: Certificate, conclusion: Sequent, op: DOperator) -> Certificate:
        if self.ranked is not None:
            return Certificate(
                conclusion,
                c.alpha,
                c.rho,
                op,
                RuleTag.RALL,
                c.premises.mapped(lambda key, d: self(d)),
                p=c.p,
                principal=self.result[0],
            )
        d = self(c.premise(self.premise_key))
        log.debug("inversion reached principal %s", self.target)
        return d.relabel(conclusion=conclusion, alpha=c.alpha, rho=c.rho, op=op.join(d.op), p=c.p)


def invert(
    c: Certificate, target: Formula, key: Optional[Key] = None, beta: Optional[OrdTerm] = None
) -> Certificate:
    """
    Inversion of a universal formula, chosen by the shape of target:

    - ``F1 or F2``: Gamma, F1, F2.
    - ``F1 and F2`` with key i in {0, 1}: Gamma, F_i.
    - ``forall x F`` with key (beta, a): Gamma, not M_beta(a) or F[a].
    - ``forall x F`` with beta: Gamma, forall x^beta F.
    - ``(forall x in a) F`` with key b: Gamma, b notin a or F[b].
    - ``forall X F`` with key U: Gamma, F[U].
    - ``forall x^alpha F`` with key (beta, a), beta <= alpha:
      Gamma, not M_beta(a) or F[a].

    Raises:
        PreconditionError: When the rank or level side condition fails, or
            the target has no inversion.
    """
    mode = _inversion(c, target, key, beta)
    log.debug("invert %s", target)
    return mode(c)


def _need_big(target: Formula) -> None:
    if _lt(rank(target), BIG_OMEGA):
        raise PreconditionError("invert", f"rank of {target} is below Omega")


def _need_level(c: Certificate, beta: OrdTerm) -> None:
    if not _lt(beta, BIG_OMEGA):
        raise PreconditionError("invert", f"level {render(beta)} is not below Omega")
    if beta not in c.op:
        raise PreconditionError("invert", f"level {render(beta)} is not controlled by {c.op}")


def _inversion(c: Certificate, target: Formula, key: Optional[Key], beta: Optional[OrdTerm]) -> _Inversion:
    if isinstance(target, Or):
        _need_big(target)
        return _Inversion(target, (target.left, target.right), RuleTag.OR, premise_key=0)
    if isinstance(target, And):
        if key not in (0, 1):
            raise PreconditionError("invert", "conjunction inversion needs key 0 or 1")
        _need_big(target)
        part = target.left if key == 0 else target.right
        return _Inversion(target, (part,), RuleTag.AND, premise_key=key)
    if isinstance(target, UnbAll):
        if key is None:
            if beta is None:
                raise PreconditionError("invert", "universal inversion needs a key or a level")
            _need_level(c, beta)
            ranked = RankedAll(beta, target.var, target.body)
            return _Inversion(target, (ranked,), RuleTag.ALL, ranked=beta)
        _need_level(c, key[0])
        minor = Or(NegMAtom(key[0], key[1]), instantiate(target, key[1]))
        return _Inversion(target, (minor,), RuleTag.ALL, premise_key=key)
    if isinstance(target, RankedAll):
        if key is None or not _le(key[0], target.level):
            raise PreconditionError("invert", f"instance level must be at most {render(target.level)}")
        minor = Or(NegMAtom(key[0], key[1]), instantiate(target, key[1]))
        return _Inversion(target, (minor,), RuleTag.RALL, premise_key=key)
    if isinstance(target, BoundedAll):
        if key is None:
            raise PreconditionError("invert", "bounded inversion needs a term")
        _need_big(instantiate(target, key))
        minor = Or(NotMemberOf(key, target.bound), instantiate(target, key))
        return _Inversion(target, (minor,), RuleTag.BALL, premise_key=key)
    if isinstance(target, RelAll):
        if key is None:
            raise PreconditionError("invert", "relation inversion needs a relation variable")
        _need_big(instantiate(target, key))
        return _Inversion(target, (instantiate(target, key),), RuleTag.ALL2, premise_key=key)
    raise PreconditionError("invert", f"{target} has no inversion")


# Boundedness


def _bound_map(targets: Sequence[Formula], beta: OrdTerm) -> Tuple[Tuple[Formula, Formula], ...]:
    return tuple((f, bound_exists(f, beta)) for f in targets if in_s(f))


class _Boundedness:
    """Replace each target F in S by F^beta throughout a certificate."""

    def __init__(self, beta: OrdTerm) -> None:
        self.beta = beta

    def __call__(self, c: Certificate, targets: Tuple[Formula, ...]) -> Certificate:
        present = tuple(f for f in targets if f in c.conclusion)
        if not present:
            return c
        pairs = _bound_map(present, self.beta)
        conclusion = c.conclusion.without(*present).union(b for _, b in pairs)
        if c.is_axiom:
            return axiom_leaf(c, conclusion, "boundedness")
        op = c.op.extend(self.beta)
        principal = c.principal
        if principal is not None and _member(principal, present):
            return self._principal(c, conclusion, op, targets)
        if c.rule is RuleTag.S0_REF:
            raise PreconditionError("boundedness", "reflection below a bound below Omega")

        def transform(key: Key, d: Certificate) -> Certificate:
            minors = c.minors(key)
            return self(d, tuple(f for f in targets if not _member(f, minors)))

        return c.relabel(conclusion=conclusion, op=op, premises=c.premises.mapped(transform))

    def _principal(
        self, c: Certificate, conclusion: Sequent, op: DOperator, targets: Tuple[Formula, ...]
    ) -> Certificate:
        bounded = bound_exists(c.principal, self.beta)

        def transform(key: Key, d: Certificate) -> Certificate:
            return self(d, targets + tuple(f for f in c.minors(key) if in_s(f)))

        if c.rule is RuleTag.EX:
            return c.relabel(
                conclusion=conclusion, op=op, rule=RuleTag.REX, principal=bounded,
                premises=c.premises.mapped(transform),
            )
        if c.rule is RuleTag.S0_REF:
            raise PreconditionError("boundedness", "reflection below a bound below Omega")
        return c.relabel(
            conclusion=conclusion, op=op, principal=bounded, premises=c.premises.mapped(transform)
        )


def boundedness(c: Certificate, beta: OrdTerm, target: Formula) -> Certificate:
    """
    From op |-^alpha_rho Gamma, F derive op |-^alpha_rho Gamma, F^beta.

    Raises:
        PreconditionError: Unless F is in S, alpha <= beta < Omega and beta
            is controlled by op.
    """
    if not in_s(target):
        raise PreconditionError("boundedness", f"{target} is not in S")
    if not _le(c.alpha, beta):
        raise PreconditionError("boundedness", f"label {render(c.alpha)} exceeds {render(beta)}")
    if not _lt(beta, BIG_OMEGA):
        raise PreconditionError("boundedness", f"{render(beta)} is not below Omega")
    if beta not in c.op:
        raise PreconditionError("boundedness", f"{render(beta)} is not controlled by {c.op}")
    log.debug("boundedness at %s for %s", render(beta), target)
    return _Boundedness(beta)(c, (target,))

