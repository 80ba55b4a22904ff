"""
Derivation Builders Module

Lazy RS* certificates for the lemmas the embedding rests on. Each builder
returns the root of a derivation carrying exactly the label and cut rank of
its lemma; infinitely branching nodes build their premises on demand.

Functions:
    derive_tnd: not F, F at rk(F) # rk(F).
    derive_lifting: not exists x^alpha F, exists x F.
    derive_eps_ind: The set induction schema at sigma + Omega + 1.
    derive_empty, derive_empty_set, derive_omega, derive_infinity_eq:
        Constant-level facts.
    derive_pair, derive_union, derive_sep: Axiom instance, lifting and one cut.
    derive_ca: The comprehension axiom leaf.
    derive_s0_ref: Reflection of an S0 formula.

Example::

    from pybhw.builders import derive_pair
    from pybhw.formulas import Var
    from pybhw.ordinals import ONE, OMEGA, render

    cert = derive_pair(Var("a"), ONE, Var("b"), OMEGA)
    render(cert.alpha)        # 'w^(w+2)'

Notes:
    - ``op`` defaults to the least operator over the parameters of the
      conclusion; passing one extends it with those parameters.
    - Context pairs ``(beta, b)`` add the side formulas not M_beta(b).
"""

import logging
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .certificate import (
    UNIVERSAL_RULE,
    Certificate,
    Premises,
    leaf,
    reflection,
    universal_minor,
    witness_node,
)
from .exceptions import PreconditionError
from .formulas import (
    EMPTY,
    OMEGA_SET,
    And,
    Formula,
    MAtom,
    NegMAtom,
    RankedAll,
    RankedEx,
    SetTerm,
    UnbAll,
    UnbEx,
    class_of,
    empty_axiom,
    eps_ind_axiom,
    eps_ind_hypothesis,
    implies,
    in_b,
    infinity,
    instantiate,
    is_delta0,
    m_atoms,
    negate,
    pair_axiom,
    params,
    pi11_ca_axiom,
    rank,
    sep_axiom,
    substitute,
    union_axiom,
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
    max_ord,
    natural_sum,
    nf_sum,
    omega_pow,
    omega_times,
    pred,
    sorted_terms,
    succ,
)
from .sequent import Sequent
from .tags import Comparison, OrdClass, RSAxiom, RuleTag

log = logging.getLogger(__name__)

Context = Sequence[Tuple[OrdTerm, SetTerm]]


def controlled(op: Optional[DOperator], *formulas: Formula, ords: Iterable[OrdTerm] = ()) -> DOperator:
    """op (or the least operator) extended by the parameters of formulas and ords."""
    found = set(ords)
    for f in formulas:
        found |= params(f)
    return (op or Free()).extend(*sorted_terms(found))


def _plus(a: OrdTerm, k: int) -> OrdTerm:
    return nf_sum(a, from_int(k))


# Tertium non datur and lifting


def derive_tnd(f: Formula, op: Optional[DOperator] = None) -> Certificate:
    """
    op[F] |-^(rk F # rk F)_0 not F, F.

    Formulas of class B are axiom leaves. Otherwise the universal one of F
    and not F is introduced over premises that introduce the existential one
    from the tertium non datur of the minor formula.
    """
    op = controlled(op, f)
    rho = rank(f)
    conclusion = Sequent.of(negate(f), f)
    alpha = natural_sum(rho, rho)
    if in_b(f):
        return leaf(conclusion, op, alpha, ZERO, axiom=RSAxiom.TND)
    u = f if type(f) in UNIVERSAL_RULE else negate(f)
    e = negate(u)

    def premise(key):
        minor = universal_minor(u, key)
        sub_op = op.extend(key[0]) if isinstance(u, (UnbAll, RankedAll)) else op
        inner = derive_tnd(minor, sub_op)
        label = natural_sum(rank(minor), rho)
        return witness_node(e, key, Sequent.of(e, minor), label, ZERO, sub_op, inner)

    arity = 2 if isinstance(u, And) else None
    return Certificate(
        conclusion, alpha, ZERO, op, UNIVERSAL_RULE[type(u)], Premises.lazy(premise, arity), principal=u
    )


def derive_lifting(f: Formula, alpha: OrdTerm, op: Optional[DOperator] = None) -> Certificate:
    """
    op[F] |-^(rho # rho)_0 not exists x^alpha F, exists x F with
    rho = rk(exists x^alpha F).

    Raises:
        PreconditionError: If f is not an unbounded existential.
    """
    if not isinstance(f, UnbEx):
        raise PreconditionError("derive_lifting", f"{f} is not an unbounded existential")
    ranked = RankedEx(alpha, f.var, f.body)
    rho = rank(ranked)
    u = negate(ranked)
    op = controlled(op, ranked, f)

    def premise(key):
        minor = universal_minor(u, key)
        sub_op = op.extend(key[0])
        inner = derive_tnd(negate(minor), sub_op)
        label = natural_sum(rank(minor), rho)
        return witness_node(f, key, Sequent.of(f, minor), label, ZERO, sub_op, inner)

    return Certificate(
        Sequent.of(u, f), natural_sum(rho, rho), ZERO, op, RuleTag.RALL, Premises.lazy(premise), principal=u
    )


# Set induction


class _EpsInduction:
    """
    The side induction of set induction: for every alpha below Omega and
    every a, op[alpha] |-^(gamma_alpha)_Omega not G, not M_alpha(a), F[a]
    with gamma_alpha = sigma # omega^alpha.
    """

    def __init__(self, body: Formula, var: str, op: DOperator) -> None:
        self.body = body
        self.var = var
        self.hyp = eps_ind_hypothesis(body, var)
        self.neg_hyp = negate(self.hyp)
        self.sigma = omega_pow(rank(self.hyp))
        self.op = op
        self._memo: Dict[Tuple[OrdTerm, SetTerm], Certificate] = {}

    def gamma(self, alpha: OrdTerm) -> OrdTerm:
        return natural_sum(self.sigma, omega_pow(alpha))

    def at(self, a: SetTerm) -> Formula:
        return substitute(self.body, self.var, a)

    def star(self, alpha: OrdTerm, a: SetTerm) -> Certificate:
        key = (alpha, a)
        if key not in self._memo:
            self._memo[key] = self._build(alpha, a)
        return self._memo[key]

    def _build(self, alpha: OrdTerm, a: SetTerm) -> Certificate:
        op = self.op.extend(alpha)
        not_m = NegMAtom(alpha, a)
        conclusion = Sequent.of(self.neg_hyp, not_m, self.at(a))
        kind = classify(alpha)
        if kind is OrdClass.ZERO:
            return leaf(conclusion, op, self.gamma(alpha), BIG_OMEGA, axiom=RSAxiom.M_ZERO)
        if kind is OrdClass.LIMIT:
            return Certificate(
                conclusion,
                self.gamma(alpha),
                BIG_OMEGA,
                op,
                RuleTag.NOT_M,
                Premises.lazy(lambda beta: self.star(beta, a)),
                principal=not_m,
            )
        return self._successor(alpha, a, op, conclusion)

    def _successor(self, alpha: OrdTerm, a: SetTerm, op: DOperator, conclusion: Sequent) -> Certificate:
        beta = pred(alpha)
        g_beta = self.gamma(beta)
        not_m = NegMAtom(alpha, a)
        inst = instantiate(self.neg_hyp, a)
        hyp, neg_fa = inst.left, inst.right

        def member(b):
            minor = universal_minor(hyp, b)
            axiom = leaf(
                (not_m, minor.left, MAtom(beta, b)), op, ZERO, ZERO, axiom=RSAxiom.M_SUCC
            )
            cut = Certificate(
                Sequent.of(self.neg_hyp, not_m, minor.left, minor.right),
                _plus(g_beta, 1),
                BIG_OMEGA,
                op,
                RuleTag.CUT,
                Premises.of(axiom, self.star(beta, b)),
                cut_formula=MAtom(beta, b),
            )
            return Certificate(
                Sequent.of(self.neg_hyp, not_m, minor),
                _plus(g_beta, 2),
                BIG_OMEGA,
                op,
                RuleTag.OR,
                Premises.of(cut),
                principal=minor,
            )

        bounded = Certificate(
            Sequent.of(self.neg_hyp, not_m, hyp),
            _plus(g_beta, 3),
            BIG_OMEGA,
            op,
            RuleTag.BALL,
            Premises.lazy(member),
            principal=hyp,
        )
        both = Certificate(
            Sequent.of(self.neg_hyp, not_m, inst, self.at(a)),
            _plus(g_beta, 4),
            BIG_OMEGA,
            op,
            RuleTag.AND,
            Premises.of(bounded, derive_tnd(self.at(a), op)),
            principal=inst,
        )
        level = MAtom(alpha, a)
        conj = And(level, inst)
        with_level = Certificate(
            Sequent.of(self.neg_hyp, not_m, conj, self.at(a)),
            _plus(g_beta, 5),
            BIG_OMEGA,
            op,
            RuleTag.AND,
            Premises.of(leaf((not_m, level), op, ZERO, ZERO, axiom=RSAxiom.TND), both),
            principal=conj,
        )
        return Certificate(
            conclusion,
            self.gamma(alpha),
            BIG_OMEGA,
            op,
            RuleTag.EX,
            Premises.of(with_level),
            principal=self.neg_hyp,
            level=alpha,
            term=a,
        )


def derive_eps_ind(body: Formula, var: str, op: Optional[DOperator] = None) -> Certificate:
    """
    op[F] |-^(sigma+Omega+1)_Omega G -> forall x F with G the induction
    hypothesis for F and sigma = omega^rk(G).
    """
    ind = _EpsInduction(body, var, controlled(op, eps_ind_hypothesis(body, var)))
    goal = UnbAll(var, body)

    def instance(key):
        alpha, a = key
        minor = universal_minor(goal, key)
        return Certificate(
            Sequent.of(ind.neg_hyp, minor),
            succ(ind.gamma(alpha)),
            BIG_OMEGA,
            ind.op.extend(alpha),
            RuleTag.OR,
            Premises.of(ind.star(alpha, a)),
            principal=minor,
        )

    universal = Certificate(
        Sequent.of(ind.neg_hyp, goal),
        nf_sum(ind.sigma, BIG_OMEGA),
        BIG_OMEGA,
        ind.op,
        RuleTag.ALL,
        Premises.lazy(instance),
        principal=goal,
    )
    axiom = eps_ind_axiom(body, var)
    log.debug("set induction for %s with sigma = %s", body, ind.sigma)
    return Certificate(
        Sequent.of(axiom),
        nf_sum(ind.sigma, succ(BIG_OMEGA)),
        BIG_OMEGA,
        ind.op,
        RuleTag.OR,
        Premises.of(universal),
        principal=axiom,
    )


# Constants


def derive_empty_set(op: Optional[DOperator] = None) -> Certificate:
    """op |-^2_0 (forall x in empty)(x != x)."""
    f = empty_axiom()
    op = controlled(op, f)

    def member(b):
        minor = universal_minor(f, b)
        return Certificate(
            Sequent.of(minor),
            ONE,
            ZERO,
            op,
            RuleTag.OR,
            Premises.of(leaf((minor.left,), op, axiom=RSAxiom.EMPTY)),
            principal=minor,
        )

    return Certificate(Sequent.of(f), from_int(2), ZERO, op, RuleTag.BALL, Premises.lazy(member), principal=f)


def derive_empty(op: Optional[DOperator] = None) -> Certificate:
    """op |-^3_0 M_1(empty) and (forall x in empty)(x != x)."""
    level = MAtom(ONE, EMPTY)
    conj = And(level, empty_axiom())
    op = controlled(op, conj)
    return Certificate(
        Sequent.of(conj),
        from_int(3),
        ZERO,
        op,
        RuleTag.AND,
        Premises.of(leaf((level,), op, axiom=RSAxiom.M_EMPTY), derive_empty_set(op)),
        principal=conj,
    )


def derive_omega(op: Optional[DOperator] = None) -> Certificate:
    """op |-^0_0 M_(omega+1)(omega)."""
    f = MAtom(succ(OMEGA), OMEGA_SET)
    return leaf((f,), controlled(op, f), axiom=RSAxiom.M_OMEGA)


def derive_infinity_eq(a: SetTerm, alpha: OrdTerm, op: Optional[DOperator] = None) -> Certificate:
    """op |-^0_0 not M_alpha(a), (a in omega <-> FinOrd[a])."""
    s = Sequent.of(NegMAtom(alpha, a), infinity(a))
    return leaf(s, controlled(op, *s), axiom=RSAxiom.INFINITY)


def derive_ca(
    body: Formula, var: str, rel: str, context: Context = (), op: Optional[DOperator] = None
) -> Certificate:
    """
    op |-^0_0 not M_beta(b)..., exists Z (forall x in omega)(Z(x) <-> forall Y D).

    Raises:
        PreconditionError: If the matrix is not Delta0.
    """
    if not is_delta0(body):
        raise PreconditionError("derive_ca", f"{body} is not Delta0")
    s = Sequent(m_atoms(context) + (pi11_ca_axiom(body, var, rel),))
    return leaf(s, controlled(op, *s), axiom=RSAxiom.COMPREHENSION)


# Axiom instance, lifting and a cut


def _lifted(
    name: str,
    f: UnbEx,
    level: OrdTerm,
    side: Tuple[Formula, ...],
    axiom: RSAxiom,
    alpha: OrdTerm,
    rho: OrdTerm,
    op: DOperator,
) -> Certificate:
    ranked = RankedEx(level, f.var, f.body)
    instance = leaf(side + (ranked,), op, axiom=axiom)
    lifting = derive_lifting(f, level, op)
    if compare(rank(ranked), rho) is not Comparison.LESS:
        raise PreconditionError(name, f"cut rank {rank(ranked)} is not below {rho}")
    return Certificate(
        Sequent(side + (f,)),
        alpha,
        rho,
        op,
        RuleTag.CUT,
        Premises.of(instance, lifting),
        cut_formula=ranked,
    )


def derive_pair(
    a: SetTerm, alpha: OrdTerm, b: SetTerm, beta: OrdTerm, op: Optional[DOperator] = None
) -> Certificate:
    """
    op[alpha, beta] |-^(omega^(beta+2))_(omega*beta+omega+omega)
    not M_alpha(a), not M_beta(b), exists z (a in z and b in z), where beta
    is the larger level.
    """
    top = max_ord(alpha, beta)
    f = pair_axiom(a, b)
    side = (NegMAtom(alpha, a), NegMAtom(beta, b))
    rho = nf_sum(nf_sum(omega_times(top), OMEGA), OMEGA)
    op = controlled(op, *side)
    return _lifted("derive_pair", f, succ(top), side, RSAxiom.PAIR, omega_pow(_plus(top, 2)), rho, op)


def derive_union(a: SetTerm, alpha: OrdTerm, op: Optional[DOperator] = None) -> Certificate:
    """op[alpha] |-^(omega^(alpha+2))_(omega*alpha+omega) not M_alpha(a), exists z Union(a, z)."""
    f = union_axiom(a)
    side = (NegMAtom(alpha, a),)
    rho = nf_sum(omega_times(alpha), OMEGA)
    op = controlled(op, *side)
    return _lifted("derive_union", f, alpha, side, RSAxiom.UNION, omega_pow(_plus(alpha, 2)), rho, op)


def derive_sep(
    a: SetTerm,
    alpha: OrdTerm,
    var: str,
    body: Formula,
    context: Context = (),
    op: Optional[DOperator] = None,
) -> Certificate:
    """
    op[alpha, beta...] |-^(omega^(max(alpha, beta...)+2))_Omega
    not M_alpha(a), not M_beta(b)..., exists z (z = {x in a : A}).

    Raises:
        PreconditionError: If A is not Delta0.
    """
    if not is_delta0(body):
        raise PreconditionError("derive_sep", f"{body} is not Delta0")
    f = sep_axiom(a, var, body)
    side = (NegMAtom(alpha, a),) + m_atoms(context)
    top = max_ord(alpha, *(beta for beta, _ in context))
    op = controlled(op, *side)
    label = omega_pow(_plus(top, 2))
    return _lifted("derive_sep", f, succ(alpha), side, RSAxiom.SEPARATION, label, BIG_OMEGA, op)


def derive_s0_ref(formula: Formula, context: Context = (), op: Optional[DOperator] = None) -> Certificate:
    """
    op[alpha...] |-^sigma_0 not M_alpha(a)..., A -> exists z A^(z) with
    sigma = omega^(rk(A)+1).

    Raises:
        PreconditionError: If A is not in S0.
    """
    if not class_of(formula).is_s0:
        raise PreconditionError("derive_s0_ref", f"{formula} is not an S0 formula")
    side = m_atoms(context)
    refl = reflection(formula)
    goal = implies(formula, refl)
    op = controlled(op, goal, *side)
    tnd = derive_tnd(formula, op)
    reflected = Certificate(
        Sequent(side + (negate(formula), refl)),
        succ(tnd.alpha),
        ZERO,
        op,
        RuleTag.S0_REF,
        Premises.of(tnd),
        principal=refl,
        source=formula,
    )
    return Certificate(
        Sequent(side + (goal,)),
        omega_pow(succ(rank(formula))),
        ZERO,
        op,
        RuleTag.OR,
        Premises.of(reflected),
        principal=goal,
    )


BUILDERS = (
    "tnd",
    "lifting",
    "eps_ind",
    "empty",
    "empty_set",
    "omega",
    "infinity",
    "pair",
    "union",
    "sep",
    "ca",
    "s0_ref",
)
