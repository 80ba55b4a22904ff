"""
Certificate Module

Operator-controlled derivations of RS*. A ``Certificate`` is one node: its
conclusion, ordinal label alpha, cut rank rho, controlling operator, the rule
it ends with and a premise oracle. Premises are produced on demand, so
infinitely branching rules cost nothing until a premise is asked for.

Classes:
    Premises: Memoizing premise oracle.
    Certificate: A derivation node.
    CertReport: Outcome of ``cert_check``.

Functions:
    rs_check_axiom: Which RS* axiom a sequent is an instance of.
    check_node: Verify the side conditions local to one node.
    cert_check: Verify a certificate down to a depth budget, sampling the
        premises of infinitary rules.

Premise keys by rule::

    or, ex, rex, bex, ex2, s0ref, bc   0
    and, cut                           0 and 1
    notM                               beta below the limit
    all, rall                          (beta, a) with a a set term
    ball                               a set term b
    all2                               a relation name U

Example::

    from pybhw.builders import derive_tnd
    from pybhw.certificate import cert_check

    report = cert_check(derive_tnd(formula), depth=4, samples=5, seed=0)
    report.status          # 'verified (sampled)'

Notes:
    - The checker never claims more than it visited; a certificate with an
      infinitary node is at best ``verified (sampled)``.
    - Sampling is seeded per node path, so reports are reproducible.
"""

import logging
import random
import warnings
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from .exceptions import BHWError, BudgetExhaustedWarning, SideConditionViolation
from .formulas import (
    EMPTY,
    OMEGA_SET,
    And,
    BoundedAll,
    BoundedEx,
    Formula,
    MAtom,
    MemberOf,
    NegMAtom,
    NegRelApp,
    NotMemberOf,
    Or,
    RankedAll,
    RankedEx,
    RelAll,
    RelApp,
    RelEx,
    SetTerm,
    UnbAll,
    UnbEx,
    Var,
    alpha_equal,
    bound_exists,
    class_of,
    fresh_name,
    in_b,
    infinity,
    instantiate,
    is_delta0,
    length,
    negate,
    pi11_ca_axiom,
    rank,
    relativize,
    sep_eq,
    set_neq,
    union_body,
)
from .operators import DOperator, Free
from .ordinals import (
    BIG_OMEGA,
    OMEGA,
    ONE,
    ZERO,
    OrdTerm,
    classify,
    compare,
    from_int,
    nf_sum,
    omega_pow,
    pred,
    psi,
    render,
    succ,
)
from .sequent import Sequent
from .tags import Comparison, OrdClass, RSAxiom, RuleTag

log = logging.getLogger(__name__)

Key = Hashable


class Premises:
    """
    A premise oracle: a pure function from keys to certificates with a
    memo table. ``arity`` is the number of premises of a finite rule and None
    for an infinitary one.
    """

    def __init__(self, fn: Callable[[Key], "Certificate"], arity: Optional[int]) -> None:
        self._fn = fn
        self.arity = arity
        self._memo: Dict[Key, "Certificate"] = {}

    @classmethod
    def none(cls) -> "Premises":
        return cls(_no_premise, 0)

    @classmethod
    def of(cls, *certs: "Certificate") -> "Premises":
        return cls(lambda k: certs[k], len(certs))

    @classmethod
    def lazy(cls, fn: Callable[[Key], "Certificate"], arity: Optional[int] = None) -> "Premises":
        return cls(fn, arity)

    def mapped(self, transform: Callable[[Key, "Certificate"], "Certificate"]) -> "Premises":
        """A new oracle applying transform to each premise of this one."""
        return Premises(lambda k: transform(k, self(k)), self.arity)

    @property
    def is_finite(self) -> bool:
        return self.arity is not None

    def keys(self) -> range:
        if self.arity is None:
            raise TypeError("an infinitary premise family has no key list")
        return range(self.arity)

    def __call__(self, key: Key) -> "Certificate":
        try:
            return self._memo[key]
        except KeyError:
            cert = self._fn(key)
            self._memo[key] = cert
            return cert
        except TypeError:
            return self._fn(key)


def _no_premise(key: Key) -> "Certificate":
    raise KeyError(f"axiom leaves have no premise {key!r}")


@dataclass(frozen=True, eq=False)
class Certificate:
    """
    One node of an operator-controlled derivation op |-^alpha_rho conclusion.

    Attributes:
        conclusion: The derived sequent.
        alpha: Ordinal label.
        rho: Cut rank; every cut formula below has rank below rho.
        op: Controlling operator.
        rule: Last rule, or ``RuleTag.AXIOM`` for a leaf.
        premises: Premise oracle.
        p: Strict bound on formula lengths, when tracked.
        axiom: The axiom of a leaf, if known.
        principal: Principal formula of a rule other than cut.
        level: beta of (ex) and (rex).
        term: Witness term of (ex), (rex) and (bex).
        relation: Witness relation of (ex2).
        cut_formula: The formula C cut with premises (C) and (not C).
        source: F of (s0ref) and (bc).
        bc_level: beta of (bc).
    """

    conclusion: Sequent
    alpha: OrdTerm
    rho: OrdTerm
    op: DOperator
    rule: RuleTag
    premises: Premises = field(default_factory=Premises.none)
    p: Optional[int] = None
    axiom: Optional[RSAxiom] = None
    principal: Optional[Formula] = None
    level: Optional[OrdTerm] = None
    term: Optional[SetTerm] = None
    relation: Optional[str] = None
    cut_formula: Optional[Formula] = None
    source: Optional[Formula] = None
    bc_level: Optional[OrdTerm] = None

    @property
    def is_axiom(self) -> bool:
        return self.rule is RuleTag.AXIOM

    def premise(self, key: Key) -> "Certificate":
        return self.premises(key)

    def relabel(self, **changes: Any) -> "Certificate":
        return replace(self, **changes)

    def minors(self, key: Key) -> Tuple[Formula, ...]:
        """Formulas the premise at key may add to the conclusion."""
        return minor_formulas(self, key)

    def premise_op(self, key: Key) -> DOperator:
        """The operator a premise at key may use: op, or op[beta] for ordinal-indexed families."""
        if self.rule is RuleTag.NOT_M:
            return self.op.extend(key)
        if self.rule in (RuleTag.ALL, RuleTag.RALL):
            return self.op.extend(key[0])
        return self.op

    def __str__(self) -> str:
        return f"{self.op} |-^{render(self.alpha)}_{render(self.rho)} {self.conclusion}  [{self.rule.value}]"


def leaf(
    conclusion: Iterable[Formula],
    op: Optional[DOperator] = None,
    alpha: OrdTerm = ZERO,
    rho: OrdTerm = ZERO,
    axiom: Optional[RSAxiom] = None,
    p: Optional[int] = None,
) -> Certificate:
    """An axiom leaf."""
    s = conclusion if isinstance(conclusion, Sequent) else Sequent(conclusion)
    return Certificate(s, alpha, rho, op or Free(), RuleTag.AXIOM, p=p, axiom=axiom)


# Minor formulas


UNIVERSAL_RULE = {
    And: RuleTag.AND,
    BoundedAll: RuleTag.BALL,
    RankedAll: RuleTag.RALL,
    UnbAll: RuleTag.ALL,
    RelAll: RuleTag.ALL2,
}

EXISTENTIAL_RULE = {
    Or: RuleTag.OR,
    BoundedEx: RuleTag.BEX,
    RankedEx: RuleTag.REX,
    UnbEx: RuleTag.EX,
    RelEx: RuleTag.EX2,
}


def universal_minor(f: Formula, key: Key) -> Formula:
    """The minor formula of the universal rule for f at premise key."""
    if isinstance(f, And):
        return f.left if key == 0 else f.right
    if isinstance(f, BoundedAll):
        return Or(NotMemberOf(key, f.bound), instantiate(f, key))
    if isinstance(f, (RankedAll, UnbAll)):
        beta, a = key
        return Or(NegMAtom(beta, a), instantiate(f, a))
    if isinstance(f, RelAll):
        return instantiate(f, key)
    raise TypeError(f"{f} is not introduced by a universal rule")


def witness_node(
    e: Formula,
    key: Key,
    conclusion: Sequent,
    alpha: OrdTerm,
    rho: OrdTerm,
    op: DOperator,
    premise: "Certificate",
) -> "Certificate":
    """
    Introduce the existential formula e from a premise holding the negation
    of ``universal_minor(negate(e), key)``.
    """
    rule = EXISTENTIAL_RULE[type(e)]
    extra: Dict[str, Any] = {}
    if rule is RuleTag.BEX:
        extra = {"term": key}
    elif rule in (RuleTag.EX, RuleTag.REX):
        extra = {"level": key[0], "term": key[1]}
    elif rule is RuleTag.EX2:
        extra = {"relation": key}
    return Certificate(conclusion, alpha, rho, op, rule, Premises.of(premise), principal=e, **extra)


def minor_formulas(c: Certificate, key: Key) -> Tuple[Formula, ...]:
    f = c.principal
    rule = c.rule
    if rule is RuleTag.OR:
        return (f.left, f.right)
    if rule is RuleTag.AND:
        return (f.left,) if key == 0 else (f.right,)
    if rule is RuleTag.NOT_M:
        return (NegMAtom(key, f.arg),)
    if rule in (RuleTag.EX, RuleTag.REX):
        return (And(MAtom(c.level, c.term), instantiate(f, c.term)),)
    if rule in (RuleTag.ALL, RuleTag.RALL):
        beta, a = key
        return (Or(NegMAtom(beta, a), instantiate(f, a)),)
    if rule is RuleTag.BEX:
        return (And(MemberOf(c.term, f.bound), instantiate(f, c.term)),)
    if rule is RuleTag.BALL:
        return (Or(NotMemberOf(key, f.bound), instantiate(f, key)),)
    if rule is RuleTag.EX2:
        return (instantiate(f, c.relation),)
    if rule is RuleTag.ALL2:
        return (instantiate(f, key),)
    if rule is RuleTag.CUT:
        return (c.cut_formula,) if key == 0 else (negate(c.cut_formula),)
    if rule is RuleTag.S0_REF:
        return (c.source,)
    if rule is RuleTag.BC:
        return (bound_exists(c.source, c.bc_level),)
    return ()


# RS* axioms


def _m_levels(s: Sequent, cls: type) -> Dict[SetTerm, List[OrdTerm]]:
    out: Dict[SetTerm, List[OrdTerm]] = {}
    for f in s:
        if isinstance(f, cls):
            out.setdefault(f.arg, []).append(f.level)
    return out


def _le(a: OrdTerm, b: OrdTerm) -> bool:
    return compare(a, b) is not Comparison.GREATER


def _terms_of(s: Sequent) -> List[SetTerm]:
    return [Var(n) for n in sorted(s.free_vars())] + [EMPTY, OMEGA_SET]


def _same_but(f: Formula, g: Formula, a: SetTerm, b: SetTerm) -> bool:
    """Is g the result of replacing some occurrences of a in f by b?"""
    if type(f) is not type(g):
        return False
    if isinstance(f, (MemberOf, NotMemberOf)):
        return _term_ok(f.left, g.left, a, b) and _term_ok(f.right, g.right, a, b)
    if isinstance(f, (RelApp, NegRelApp)):
        return f.rel == g.rel and _term_ok(f.arg, g.arg, a, b)
    if isinstance(f, (MAtom, NegMAtom)):
        return f.level == g.level and _term_ok(f.arg, g.arg, a, b)
    if isinstance(f, (Or, And)):
        return _same_but(f.left, g.left, a, b) and _same_but(f.right, g.right, a, b)
    if f.var != g.var:
        return False
    if isinstance(f, (BoundedEx, BoundedAll)):
        if not _term_ok(f.bound, g.bound, a, b):
            return False
    elif isinstance(f, (RankedEx, RankedAll)) and f.level != g.level:
        return False
    if isinstance(a, Var) and a.name == f.var or isinstance(b, Var) and b.name == f.var:
        return alpha_equal(f.body, g.body)
    return _same_but(f.body, g.body, a, b)


def _term_ok(s: SetTerm, t: SetTerm, a: SetTerm, b: SetTerm) -> bool:
    return s == t or (s == a and t == b)


def _is_neq(f: Formula) -> Optional[Tuple[SetTerm, SetTerm]]:
    if isinstance(f, Or) and isinstance(f.left, BoundedEx) and isinstance(f.left.body, NotMemberOf):
        a, b = f.left.bound, f.left.body.right
        if alpha_equal(f, set_neq(a, b)):
            return a, b
    return None


def _axiom_holds(s: Sequent, ax: RSAxiom) -> bool:
    if ax is RSAxiom.TND:
        return any(in_b(f) and negate(f) in s for f in s)
    if ax is RSAxiom.EQUALITY:
        for f in s:
            pair = _is_neq(f)
            if pair is None:
                continue
            a, b = pair
            for g in s:
                for h in s:
                    if in_b(h) and _same_but(negate(g), h, a, b):
                        return True
        return False
    if ax is RSAxiom.SUB_OMEGA:
        return any(isinstance(f, NegRelApp) and MemberOf(f.arg, OMEGA_SET) in s for f in s)
    if ax is RSAxiom.M_ZERO:
        return any(isinstance(f, NegMAtom) and f.level == ZERO for f in s)
    if ax is RSAxiom.M_EMPTY:
        return MAtom(ONE, EMPTY) in s
    if ax is RSAxiom.EMPTY:
        return any(isinstance(f, NotMemberOf) and f.right == EMPTY for f in s)
    if ax is RSAxiom.M_OMEGA:
        return MAtom(succ(OMEGA), OMEGA_SET) in s
    if ax is RSAxiom.INFINITY:
        return any(infinity(t) in s for t in _terms_of(s))
    neg = _m_levels(s, NegMAtom)
    if ax is RSAxiom.M_MONO:
        pos = _m_levels(s, MAtom)
        return any(_le(x, y) for a, xs in neg.items() for x in xs for y in pos.get(a, ()))
    if ax is RSAxiom.M_SUCC:
        pos = [f for f in s if isinstance(f, MAtom)]
        for a, levels in neg.items():
            for lvl in levels:
                if classify(lvl) is not OrdClass.SUCCESSOR:
                    continue
                below = pred(lvl)
                for g in pos:
                    if g.level == below and NotMemberOf(g.arg, a) in s:
                        return True
        return False
    for f in s:
        if ax is RSAxiom.COMPREHENSION and isinstance(f, RelEx) and _is_ca(f):
            return True
        if not isinstance(f, RankedEx):
            continue
        if ax is RSAxiom.PAIR and _is_pair(f, neg):
            return True
        if ax is RSAxiom.UNION and any(
            f.level in neg.get(a, ()) and alpha_equal(f.body, union_body(a, Var(f.var)))
            for a in neg
        ):
            return True
        if ax is RSAxiom.SEPARATION and _is_sep(f, neg):
            return True
    return False


def _is_pair(f: RankedEx, neg: Dict[SetTerm, List[OrdTerm]]) -> bool:
    body, z = f.body, Var(f.var)
    if not isinstance(body, And) or classify(f.level) is not OrdClass.SUCCESSOR:
        return False
    parts = (body.left, body.right)
    if not all(isinstance(p, MemberOf) and p.right == z and p.left != z for p in parts):
        return False
    beta = pred(f.level)
    for a, b in ((parts[0].left, parts[1].left), (parts[1].left, parts[0].left)):
        if beta in neg.get(b, ()) and any(_le(x, beta) for x in neg.get(a, ())):
            return True
    return False


def _is_sep(f: RankedEx, neg: Dict[SetTerm, List[OrdTerm]]) -> bool:
    body = f.body
    if classify(f.level) is not OrdClass.SUCCESSOR or not isinstance(body, And):
        return False
    left = body.left
    if not (isinstance(left, BoundedAll) and isinstance(left.body, And)):
        return False
    member = left.body.left
    if not isinstance(member, MemberOf):
        return False
    a, d, v = member.right, left.body.right, left.var
    alpha = pred(f.level)
    return (
        alpha in neg.get(a, ())
        and is_delta0(d)
        and alpha_equal(body, sep_eq(Var(f.var), a, v, d))
    )


def _is_ca(f: RelEx) -> bool:
    body = f.body
    if not (isinstance(body, BoundedAll) and body.bound == OMEGA_SET):
        return False
    inner = body.body
    # iff(Z(x), all Y D) = (not Z(x) or all Y D) and (not all Y D or Z(x))
    if not (isinstance(inner, And) and isinstance(inner.left, Or) and isinstance(inner.left.right, RelAll)):
        return False
    univ = inner.left.right
    d = univ.body
    if not is_delta0(d):
        return False
    return alpha_equal(f, pi11_ca_axiom(d, body.var, univ.var, f.var))


def rs_check_axiom(s: Sequent) -> Optional[RSAxiom]:
    """The first RS* axiom s is an instance of, or None."""
    for ax in RSAxiom:
        if _axiom_holds(s, ax):
            return ax
    return None


def axiom_holds(s: Sequent, ax: RSAxiom) -> bool:
    return _axiom_holds(s, ax)


# Node checks


def _fail(path: Sequence[Any], reason: str) -> SideConditionViolation:
    return SideConditionViolation(list(path), reason)


def _lt(a: OrdTerm, b: OrdTerm) -> bool:
    return compare(a, b) is Comparison.LESS


_PRINCIPAL_TYPE = {
    RuleTag.OR: Or,
    RuleTag.AND: And,
    RuleTag.NOT_M: NegMAtom,
    RuleTag.EX: UnbEx,
    RuleTag.ALL: UnbAll,
    RuleTag.REX: RankedEx,
    RuleTag.RALL: RankedAll,
    RuleTag.BEX: BoundedEx,
    RuleTag.BALL: BoundedAll,
    RuleTag.EX2: RelEx,
    RuleTag.ALL2: RelAll,
    RuleTag.S0_REF: UnbEx,
    RuleTag.BC: RankedEx,
}


def check_node(c: Certificate, path: Sequence[Any] = ()) -> None:
    """
    Verify the conditions that only involve this node.

    Raises:
        SideConditionViolation: Naming the node path and the failed condition.
    """
    for t in (c.alpha, *c.conclusion.params()):
        if t not in c.op:
            raise _fail(path, f"{render(t)} is not controlled by {c.op}")
    if c.p is not None:
        for f in c.conclusion:
            if length(f) >= c.p:
                raise _fail(path, f"{f} has length {length(f)}, not below p = {c.p}")
    if c.rule is RuleTag.AXIOM:
        ok = axiom_holds(c.conclusion, c.axiom) if c.axiom is not None else rs_check_axiom(c.conclusion)
        if not ok:
            raise _fail(path, "leaf is not an axiom instance")
        return
    if c.rule is RuleTag.CUT:
        cf = c.cut_formula
        if cf is None:
            raise _fail(path, "cut without cut formula")
        if not _lt(rank(cf), c.rho):
            raise _fail(path, f"cut formula rank {render(rank(cf))} is not below {render(c.rho)}")
        if c.p is not None and length(cf) >= c.p:
            raise _fail(path, f"cut formula length {length(cf)} is not below p = {c.p}")
        if not all(t in c.op for t in _params(cf)):
            raise _fail(path, "cut formula parameters are not controlled")
        return
    f = c.principal
    if f is None or f not in c.conclusion:
        raise _fail(path, "principal formula is not in the conclusion")
    if not isinstance(f, _PRINCIPAL_TYPE[c.rule]):
        raise _fail(path, f"{c.rule.value} cannot introduce {f}")
    if c.rule is RuleTag.NOT_M and classify(f.level) is not OrdClass.LIMIT:
        raise _fail(path, f"(notM) needs a limit level, got {render(f.level)}")
    if c.rule is RuleTag.EX:
        if c.level is None or c.term is None or not _lt(c.level, c.alpha):
            raise _fail(path, "(ex) needs a witness level below the label")
        if not _lt(c.level, BIG_OMEGA):
            raise _fail(path, "(ex) witness level must be below Omega")
    if c.rule is RuleTag.REX and (c.level is None or c.term is None or not _le(c.level, f.level)):
        raise _fail(path, "(rex) needs a witness level at most the quantifier level")
    if c.rule is RuleTag.BEX and c.term is None:
        raise _fail(path, "(bex) needs a witness term")
    if c.rule is RuleTag.EX2 and c.relation is None:
        raise _fail(path, "(ex2) needs a witness relation")
    if c.rule is RuleTag.S0_REF:
        src = c.source
        if src is None or not class_of(src).is_s0:
            raise _fail(path, "(s0ref) needs a source formula in S0")
        if not _lt(BIG_OMEGA, c.alpha):
            raise _fail(path, f"(s0ref) needs Omega below the label, got {render(c.alpha)}")
        if not alpha_equal(f, reflection(src)):
            raise _fail(path, f"{f} is not the reflection of {src}")
    if c.rule is RuleTag.BC:
        src, beta = c.source, c.bc_level
        if src is None or beta is None or not class_of(src).is_s0:
            raise _fail(path, "(bc) needs a source formula in S0 and a level")
        if not alpha_equal(f, bc_formula(src, beta)):
            raise _fail(path, f"{f} is not the (bc) conclusion for {src}")


def _params(f: Formula) -> Iterable[OrdTerm]:
    return Sequent.of(f).params()


def reflection(src: Formula) -> Formula:
    """exists z F^(z), the conclusion of (s0ref)."""
    z = fresh_name("z", Sequent.of(src).free_vars())
    return UnbEx(z, relativize(src, Var(z)))


def bc_formula(src: Formula, beta: OrdTerm) -> Formula:
    """exists z^(beta+omega) F^(z), the conclusion of (bc)."""
    z = fresh_name("z", Sequent.of(src).free_vars())
    return RankedEx(nf_sum(beta, OMEGA), z, relativize(src, Var(z)))


def check_premise(c: Certificate, key: Key, d: Certificate, path: Sequence[Any] = ()) -> None:
    """Verify how premise d at key relates to its conclusion c."""
    if c.rule is RuleTag.ALL:
        beta = key[0]
        if not (_lt(beta, d.alpha) and _lt(d.alpha, c.alpha)):
            raise _fail(path, f"(all) needs beta < alpha_beta < alpha for beta = {render(beta)}")
        if not _lt(beta, BIG_OMEGA):
            raise _fail(path, "(all) instances need levels below Omega")
    elif not _lt(d.alpha, c.alpha):
        raise _fail(path, f"premise label {render(d.alpha)} is not below {render(c.alpha)}")
    if c.rule is RuleTag.NOT_M and not _lt(key, c.principal.level):
        raise _fail(path, "(notM) instance level is not below the limit")
    if c.rule is RuleTag.RALL and not _le(key[0], c.principal.level):
        raise _fail(path, "(rall) instance level exceeds the quantifier level")
    if _lt(c.rho, d.rho):
        raise _fail(path, f"premise cut rank {render(d.rho)} exceeds {render(c.rho)}")
    if c.p is not None and (d.p is None or d.p > c.p):
        raise _fail(path, "premise does not respect the length bound")
    extra = d.conclusion.missing_from(c.conclusion, c.minors(key))
    if extra:
        raise _fail(path, f"premise has formulas outside conclusion and minors: {', '.join(map(str, extra))}")
    if not d.op.within(c.premise_op(key)):
        raise _fail(path, f"premise operator {d.op} is not within {c.premise_op(key)}")


# Sampling


_POOL: Tuple[OrdTerm, ...] = ()


def ordinal_pool() -> Tuple[OrdTerm, ...]:
    global _POOL
    if not _POOL:
        two = from_int(2)
        _POOL = (
            ZERO,
            ONE,
            two,
            from_int(3),
            OMEGA,
            succ(OMEGA),
            nf_sum(OMEGA, two),
            nf_sum(OMEGA, OMEGA),
            omega_pow(two),
            omega_pow(OMEGA),
            psi(ZERO),
            succ(psi(ZERO)),
            psi(ONE),
            psi(BIG_OMEGA),
        )
    return _POOL


def _dedupe(items: Iterable[Any]) -> List[Any]:
    seen = set()
    out = []
    for x in items:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


def _term_pool(c: Certificate) -> List[SetTerm]:
    names = c.conclusion.free_vars()
    fresh = Var(fresh_name("v0", names))
    return _dedupe([fresh, EMPTY, OMEGA_SET] + [Var(n) for n in sorted(names)])


def _rel_pool(c: Certificate) -> List[str]:
    rels = c.conclusion.free_rels()
    return _dedupe([fresh_name("P0", rels)] + sorted(rels))


def sample_keys(c: Certificate, samples: int, rng: random.Random) -> List[Key]:
    """Premise keys to visit: all of a finite rule, a seeded sample otherwise."""
    if c.premises.is_finite:
        return list(c.premises.keys())
    f = c.principal
    if c.rule is RuleTag.NOT_M:
        lam = f.level
        base = OrdTerm(lam.terms[:-1])
        pool = _dedupe([t for t in (*ordinal_pool(), succ(base), nf_sum(base, from_int(2))) if _lt(t, lam)])
        keys: List[Key] = pool
    elif c.rule in (RuleTag.ALL, RuleTag.RALL):
        if c.rule is RuleTag.ALL:
            levels = [t for t in ordinal_pool() if _lt(t, BIG_OMEGA)]
        else:
            levels = _dedupe([t for t in ordinal_pool() if _le(t, f.level)] + [f.level, ZERO])
        keys = [(b, a) for b in levels for a in _term_pool(c)]
    elif c.rule is RuleTag.BALL:
        keys = list(_term_pool(c))
    elif c.rule is RuleTag.ALL2:
        keys = list(_rel_pool(c))
    else:
        raise SideConditionViolation([], f"{c.rule.value} has no infinitary premise family")
    return rng.sample(keys, min(samples, len(keys)))


@dataclass
class CertReport:
    """
    Attributes:
        ok: No side condition failed on the visited nodes.
        status: ``"verified (complete)"`` or ``"verified (sampled)"``.
        nodes: Number of nodes visited.
        infinitary: Number of visited infinitary nodes.
        budget_cut: Whether some node had unvisited premises at the depth limit.
    """

    ok: bool
    status: str
    nodes: int = 0
    infinitary: int = 0
    budget_cut: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ok": self.ok,
            "status": self.status,
            "nodes": self.nodes,
            "infinitary": self.infinitary,
            "budgetCut": self.budget_cut,
        }


def cert_check(c: Certificate, depth: int = 4, samples: int = 5, seed: int = 0) -> CertReport:
    """
    Check c and its premises down to depth, visiting every premise of a
    finite rule and a seeded sample of the premises of an infinitary one.

    Raises:
        SideConditionViolation: At the first node that fails.

    Warns:
        BudgetExhaustedWarning: When the depth budget cut off some premises.
    """
    report = CertReport(ok=True, status="")
    stack: List[Tuple[Certificate, Tuple[Any, ...], int]] = [(c, (), depth)]
    while stack:
        node, path, budget = stack.pop()
        report.nodes += 1
        check_node(node, list(map(_path_token, path)))
        if node.is_axiom:
            continue
        if not node.premises.is_finite:
            report.infinitary += 1
        if budget <= 0:
            report.budget_cut = True
            continue
        rng = random.Random(f"{seed}/{'/'.join(map(_path_token, path))}")
        keys = sample_keys(node, samples, rng)
        for key in keys:
            sub = path + (key,)
            try:
                premise = node.premise(key)
            except BHWError as e:
                where = list(map(_path_token, sub))
                raise SideConditionViolation(where, f"premise could not be built: {e}") from e
            check_premise(node, key, premise, list(map(_path_token, sub)))
            stack.append((premise, sub, budget - 1))
    if report.budget_cut:
        warnings.warn(
            BudgetExhaustedWarning(f"depth budget {depth} reached before the leaves"), stacklevel=2
        )
    complete = report.infinitary == 0 and not report.budget_cut
    report.status = "verified (complete)" if complete else "verified (sampled)"
    log.info("certificate check: %d nodes, %s", report.nodes, report.status)
    return report


def _path_token(key: Any) -> str:
    if isinstance(key, tuple):
        return "(" + ",".join(_path_token(k) for k in key) + ")"
    if isinstance(key, OrdTerm):
        return render(key)
    return str(key)
