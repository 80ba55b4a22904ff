"""
Embedding Module

Turns a checked finitary Tait proof of Gamma[u...] into an RS* certificate

    H[...] |-^(omega^(Omega+m))_(Omega+n) not M_alpha(u)..., Gamma

where every free variable u of Gamma is read as a set of level alpha. The
certificate of a step is built for an environment assigning each free
variable a level and a term; infinitary rules instantiate eigenvariables
through that environment. Nothing below the root is built until asked for.

Example::

    from pybhw.embedding import embed
    from pybhw.loader import ProofFileLoader

    result = embed(ProofFileLoader("proof.json").load())
    result.m, result.n, result.p_len
"""

import logging
from typing import Callable, Dict, Hashable, Iterable, List, Mapping, NamedTuple, Optional, Tuple

from .builders import (
    derive_ca,
    derive_empty_set,
    derive_eps_ind,
    derive_infinity_eq,
    derive_pair,
    derive_s0_ref,
    derive_sep,
    derive_tnd,
    derive_union,
)
from .certificate import Certificate, Key, Premises, leaf, rs_check_axiom, universal_minor
from .exceptions import EmbeddingError, PreconditionError
from .formulas import (
    EMPTY,
    OMEGA_SET,
    And,
    Formula,
    MAtom,
    MemberOf,
    NegMAtom,
    NotMemberOf,
    SetTerm,
    Var,
    collection_axiom,
    free_vars,
    instantiate,
    negate,
    params,
    rank,
    substitute_all,
)
from .operators import DOperator, Free
from .ordinals import (
    BIG_OMEGA,
    OMEGA,
    ONE,
    OrdTerm,
    classify,
    compare,
    from_int,
    max_ord,
    nf_sum,
    omega_offset,
    omega_pow,
    pred,
    render,
    sorted_terms,
    succ,
)
from .proof import TaitProof
from .sequent import Sequent
from .taitkp import RuleMatch, Witnesses, axiom_instance, check_proof
from .tags import Comparison, OrdClass, RSAxiom, RuleTag, TaitAxiom, TaitRule
from .transforms import weaken

log = logging.getLogger(__name__)

OMEGA_LEVEL = succ(OMEGA)

# largest m or n the static pass will look for
_EXPONENT_MAX = 1024

Binding = Tuple[OrdTerm, SetTerm]


class Embedding(NamedTuple):
    """Result of ``embed``: the root certificate and its exponents."""

    certificate: Certificate
    m: int
    n: int
    p_len: int


def label_for(m: int) -> OrdTerm:
    """omega^(Omega+m)."""
    return omega_pow(nf_sum(BIG_OMEGA, from_int(m)))


def rank_for(n: int) -> OrdTerm:
    """Omega+n."""
    return nf_sum(BIG_OMEGA, from_int(n))


def _least(bound: Callable[[int], OrdTerm], t: OrdTerm, what: str) -> int:
    for k in range(_EXPONENT_MAX):
        if compare(t, bound(k)) is not Comparison.GREATER:
            return k
    raise EmbeddingError(None, f"{what} {render(t)} is out of range")


def _const_level(t: SetTerm) -> Optional[OrdTerm]:
    if t == EMPTY:
        return ONE
    if t == OMEGA_SET:
        return OMEGA_LEVEL
    return None


class _Scope:
    """
    Environment of one node: set variables to (level, term) bindings and
    relation variables to relation variables.
    """

    def __init__(self, sets: Mapping[str, Binding], rels: Mapping[str, str]) -> None:
        self.sets = dict(sets)
        self.rels = dict(rels)
        self.key: Hashable = (
            tuple(sorted(self.sets.items(), key=lambda kv: kv[0])),
            tuple(sorted(self.rels.items())),
        )

    def formula(self, f: Formula, bound: Iterable[str] = (), bound_rels: Iterable[str] = ()) -> Formula:
        bound, bound_rels = set(bound), set(bound_rels)
        sets = {v: t for v, (_, t) in self.sets.items() if v not in bound}
        rels = {r: u for r, u in self.rels.items() if r not in bound_rels}
        return substitute_all(f, sets=sets, rels=rels)

    def term(self, t: SetTerm) -> SetTerm:
        if isinstance(t, Var) and t.name in self.sets:
            return self.sets[t.name][1]
        return t

    def level(self, t: SetTerm) -> OrdTerm:
        if isinstance(t, Var):
            if t.name not in self.sets:
                raise EmbeddingError(None, f"no level for free variable {t.name}")
            return self.sets[t.name][0]
        return _const_level(t)

    def levels(self) -> List[OrdTerm]:
        return [lvl for lvl, _ in self.sets.values()]

    def atoms(self) -> List[Formula]:
        return [NegMAtom(lvl, t) for _, (lvl, t) in sorted(self.sets.items(), key=lambda kv: kv[0])]

    def theta(self, seq: Sequent) -> Sequent:
        """not M_alpha(a)..., Gamma[a...]."""
        return Sequent(self.atoms() + [self.formula(f) for f in seq])


class _Embedder:
    def __init__(self, proof: TaitProof, matches: Mapping[int, RuleMatch]) -> None:
        self.proof = proof
        self.matches = matches
        found = set()
        for step in proof:
            for f in step.seq:
                found |= params(f)
        self.base = Free().extend(*sorted_terms(found))
        self._exponents: Dict[int, Tuple[int, int]] = {}
        self._nodes: Dict[Tuple[int, Hashable], Certificate] = {}

    # static pass

    def exponents(self, root: int) -> Tuple[int, int]:
        """(m, n) of step root; independent of the environment."""
        reachable, stack = set(), [root]
        while stack:
            i = stack.pop()
            if i in reachable:
                continue
            reachable.add(i)
            stack.extend(self.proof[i].premises)
        for i in sorted(reachable):
            if i not in self._exponents:
                self._exponents[i] = self._step_exponents(i)
        return self._exponents[root]

    def _step_exponents(self, i: int) -> Tuple[int, int]:
        step = self.proof[i]
        if step.by.is_axiom:
            scope = _Scope({v: (ONE, Var(v)) for v in step.seq.free_vars()}, {})
            cert = self._axiom(i, scope)
            return _least(label_for, cert.alpha, "label"), _least(rank_for, cert.rho, "cut rank")
        below = [self._exponents[j] for j in step.premises]
        m = max(e[0] for e in below) + 1
        n = max(e[1] for e in below)
        match = self.matches[i]
        if match.rule is TaitRule.CUT and match.cut_formula is not None:
            k = omega_offset(rank(match.cut_formula))
            if k is not None:
                n = max(n, k + 1)
        return m, n

    # certificates

    def op(self, scope: _Scope) -> DOperator:
        return self.base.extend(*scope.levels())

    def node(self, i: int, scope: _Scope) -> Certificate:
        key = (i, scope.key)
        if key not in self._nodes:
            self._nodes[key] = self._build(i, scope)
        return self._nodes[key]

    def _build(self, i: int, scope: _Scope) -> Certificate:
        m, n = self.exponents(i)
        step = self.proof[i]
        theta = scope.theta(step.seq)
        alpha, rho, op = label_for(m), rank_for(n), self.op(scope)
        if step.by.is_axiom:
            cert = self._axiom(i, scope)
            return self._weaken(i, cert, theta, alpha, rho, op)
        return self._rule(i, scope, theta, alpha, rho, op)

    def _weaken(self, i, cert, theta, alpha, rho, op) -> Certificate:
        try:
            return weaken(cert, alpha=alpha, rho=rho, extra=theta, op=op)
        except PreconditionError as e:
            raise EmbeddingError(i, e.reason) from e

    def premise_scope(
        self,
        j: int,
        scope: _Scope,
        bind: Optional[Tuple[str, Binding]] = None,
        bind_rel: Optional[Tuple[str, str]] = None,
    ) -> _Scope:
        """
        Scope of premise j: the variables it shares with the conclusion keep
        their bindings, an eigenvariable takes ``bind`` and any other free
        variable becomes the empty set at level 1.
        """
        seq = self.proof[j].seq
        sets: Dict[str, Binding] = {}
        for v in seq.free_vars():
            if bind is not None and v == bind[0]:
                sets[v] = bind[1]
            elif v in scope.sets:
                sets[v] = scope.sets[v]
            else:
                sets[v] = (ONE, EMPTY)
        rels = {r: scope.rels[r] for r in seq.free_rels() if r in scope.rels}
        if bind_rel is not None and bind_rel[0] in seq.free_rels():
            rels[bind_rel[0]] = bind_rel[1]
        return _Scope(sets, rels)

    def fit(self, i: int, cert: Certificate, theta: Sequent, minors: Iterable[Formula] = ()) -> Certificate:
        """Cut away the level atoms of constants that cert has beyond theta and minors."""
        for f in cert.conclusion.missing_from(theta, tuple(minors)):
            if f == NegMAtom(ONE, EMPTY):
                positive, axiom = MAtom(ONE, EMPTY), RSAxiom.M_EMPTY
            elif f == NegMAtom(OMEGA_LEVEL, OMEGA_SET):
                positive, axiom = MAtom(OMEGA_LEVEL, OMEGA_SET), RSAxiom.M_OMEGA
            else:
                raise EmbeddingError(i, f"stray formula {f}")
            cert = Certificate(
                cert.conclusion.without(f),
                succ(cert.alpha),
                max_ord(cert.rho, BIG_OMEGA),
                cert.op,
                RuleTag.CUT,
                Premises.of(leaf((positive,), cert.op, axiom=axiom), cert),
                cut_formula=positive,
            )
        return cert

    # axioms

    def _axiom(self, i: int, scope: _Scope) -> Certificate:
        step = self.proof[i]
        name = step.by.name
        w = Witnesses(name, step.witness)
        op = self.op(scope)
        theta = scope.theta(step.seq)
        if name == TaitAxiom.TND.value:
            cert = derive_tnd(scope.formula(w.formula()), op)
        elif name in (TaitAxiom.EQUALITY.value, TaitAxiom.SUB_OMEGA.value):
            s = Sequent(scope.formula(f) for f in axiom_instance(name, step.witness))
            axiom = rs_check_axiom(s)
            if axiom is None:
                raise EmbeddingError(i, f"{name} instance is not an RS* axiom")
            cert = leaf(s, op, axiom=axiom)
        elif name == TaitAxiom.EMPTY_SET.value:
            cert = derive_empty_set(op)
        elif name == TaitAxiom.PAIR.value:
            a, b = w.term("a"), w.term("b")
            cert = derive_pair(scope.term(a), scope.level(a), scope.term(b), scope.level(b), op)
        elif name == TaitAxiom.UNION.value:
            a = w.term("a")
            cert = derive_union(scope.term(a), scope.level(a), op)
        elif name == TaitAxiom.INFINITY.value:
            a = w.term("a")
            cert = derive_infinity_eq(scope.term(a), scope.level(a), op)
        elif name == TaitAxiom.DELTA0_SEP.value:
            a, var = w.term("a"), w.name("var")
            body = w.formula(delta0=True)
            context = [scope.sets[v] for v in sorted(free_vars(body) - {var}) if v in scope.sets]
            cert = derive_sep(scope.term(a), scope.level(a), var, scope.formula(body, {var}), context, op)
        elif name == TaitAxiom.DELTA0_COL.value:
            instance = collection_axiom(w.term("a"), w.name("var"), w.name("var2"), w.formula(delta0=True))
            # A -> exists z A^z, so the instance is the reflection of its premise
            premise = negate(scope.formula(instance).left)
            cert = derive_s0_ref(premise, op=op)
        elif name == TaitAxiom.EPS_IND.value:
            var = w.name("var")
            cert = derive_eps_ind(scope.formula(w.formula(), {var}), var, op)
        elif name == TaitAxiom.PI11_CA.value:
            var, rel = w.name("var"), w.name("rel")
            cert = derive_ca(scope.formula(w.formula(delta0=True), {var}, {rel}), var, rel, op=op)
        else:
            raise EmbeddingError(i, f"no RS* derivation for axiom schema {name}")
        return self.fit(i, cert, theta)

    # rules

    def _rule(self, i, scope, theta, alpha, rho, op) -> Certificate:
        step = self.proof[i]
        match = self.matches[i]
        rule = match.rule
        first = step.premises[0]
        principal = scope.formula(match.principal) if match.principal is not None else None

        def weakened() -> Certificate:
            d = self.node(first, self.premise_scope(first, scope))
            return self._weaken(i, self.fit(i, d, theta), theta, alpha, rho, op)

        if rule is TaitRule.OR:
            pscope = self.premise_scope(first, scope)
            d = self.fit(i, self.node(first, pscope), theta, (principal.left, principal.right))
            return Certificate(theta, alpha, rho, op, RuleTag.OR, Premises.of(d), principal=principal)
        if rule is TaitRule.AND:
            second = step.premises[1]
            d0 = self.fit(i, self.node(first, self.premise_scope(first, scope)), theta, (principal.left,))
            d1 = self.fit(i, self.node(second, self.premise_scope(second, scope)), theta, (principal.right,))
            return Certificate(theta, alpha, rho, op, RuleTag.AND, Premises.of(d0, d1), principal=principal)
        if rule is TaitRule.EX:
            if match.term is None:
                return weakened()
            return self._ex(i, scope, theta, alpha, rho, op, principal, match.term)
        if rule is TaitRule.BEX:
            if match.term is None:
                return weakened()
            pscope = self.premise_scope(first, scope)
            t = pscope.term(match.term)
            minor = And(MemberOf(t, principal.bound), instantiate(principal, t))
            d = self.fit(i, self.node(first, pscope), theta, (minor,))
            return Certificate(
                theta, alpha, rho, op, RuleTag.BEX, Premises.of(d), principal=principal, term=t
            )
        if rule is TaitRule.EX2:
            if match.rel is None:
                return weakened()
            pscope = self.premise_scope(first, scope)
            u = pscope.rels.get(match.rel, match.rel)
            d = self.fit(i, self.node(first, pscope), theta, (instantiate(principal, u),))
            return Certificate(
                theta, alpha, rho, op, RuleTag.EX2, Premises.of(d), principal=principal, relation=u
            )
        if rule is TaitRule.ALL:
            return self._all(i, scope, theta, alpha, rho, op, principal, match.eigen)
        if rule is TaitRule.ALL2:

            def instance(u: Key) -> Certificate:
                pscope = self.premise_scope(first, scope, bind_rel=(match.eigen, u))
                return self.fit(i, self.node(first, pscope), theta, (instantiate(principal, u),))

            return Certificate(
                theta, alpha, rho, op, RuleTag.ALL2, Premises.lazy(instance), principal=principal
            )
        if rule is TaitRule.BALL:
            level = scope.level(match.principal.bound)
            ball = _BoundedUniversal(self, i, scope, theta, rho, op, principal, level, match.eigen)
            return ball.node(alpha)
        if match.cut_formula is None:
            return weakened()
        second = step.premises[1]
        left, right = self.premise_scope(first, scope), self.premise_scope(second, scope)
        c = left.formula(match.cut_formula)
        d0 = self.fit(i, self.node(first, left), theta, (c,))
        d1 = self.fit(i, self.node(second, right), theta, (negate(c),))
        return Certificate(theta, alpha, rho, op, RuleTag.CUT, Premises.of(d0, d1), cut_formula=c)

    def _ex(self, i, scope, theta, alpha, rho, op, principal, witness) -> Certificate:
        first = self.proof[i].premises[0]
        pscope = self.premise_scope(first, scope)
        t, level = pscope.term(witness), pscope.level(witness)
        body = instantiate(principal, t)
        d = self.fit(i, self.node(first, pscope), theta, (body,))
        if NegMAtom(level, t) in theta:
            side = leaf((NegMAtom(level, t), MAtom(level, t)), op, axiom=RSAxiom.M_MONO)
        else:
            axiom = RSAxiom.M_EMPTY if t == EMPTY else RSAxiom.M_OMEGA
            side = leaf((MAtom(level, t),), op, axiom=axiom)
        conj = And(MAtom(level, t), body)
        both = Certificate(
            theta.add(conj), succ(d.alpha), rho, op, RuleTag.AND, Premises.of(side, d), principal=conj
        )
        return Certificate(
            theta, alpha, rho, op, RuleTag.EX, Premises.of(both), principal=principal, level=level, term=t
        )

    def _all(self, i, scope, theta, alpha, rho, op, principal, eigen) -> Certificate:
        first = self.proof[i].premises[0]

        def instance(key: Key) -> Certificate:
            beta, b = key
            minor = universal_minor(principal, key)
            pscope = self.premise_scope(first, scope, bind=(eigen, (beta, b)))
            d = self.fit(i, self.node(first, pscope), theta, (minor.left, minor.right))
            return Certificate(
                theta.add(minor),
                succ(d.alpha),
                rho,
                op.extend(beta),
                RuleTag.OR,
                Premises.of(d),
                principal=minor,
            )

        return Certificate(theta, alpha, rho, op, RuleTag.ALL, Premises.lazy(instance), principal=principal)


class _BoundedUniversal:
    """
    (ball) for (forall x in a) A with a of level alpha. The premise at b comes
    from not M_alpha(a), b not in a, (b not in a or A[b]), proved by
    recursion on alpha: axiom 4 at zero, (notM) at limits, and at gamma+1 a
    cut on M_gamma(b) against axiom 12 with the embedded premise for b at
    level gamma.
    """

    def __init__(self, embedder, i, scope, theta, rho, op, principal, level, eigen) -> None:
        self.e = embedder
        self.i = i
        self.first = embedder.proof[i].premises[0]
        self.scope = scope
        self.theta = theta
        self.rho = rho
        self.op = op
        self.principal = principal
        self.level = level
        self.eigen = eigen
        self.base = label_for(embedder.exponents(self.first)[0])
        self._memo: Dict[Tuple[OrdTerm, Hashable], Certificate] = {}

    def node(self, alpha: OrdTerm) -> Certificate:
        return Certificate(
            self.theta,
            alpha,
            self.rho,
            self.op,
            RuleTag.BALL,
            Premises.lazy(self.instance),
            principal=self.principal,
        )

    def instance(self, b: Key) -> Certificate:
        minor = universal_minor(self.principal, b)
        bound = NegMAtom(self.level, self.principal.bound)
        h = self.helper(self.level, b)
        d = Certificate(
            self.theta.add(bound, minor),
            succ(h.alpha),
            self.rho,
            self.op,
            RuleTag.OR,
            Premises.of(h),
            principal=minor,
        )
        return self.e.fit(self.i, d, self.theta, (minor,))

    def helper(self, gamma: OrdTerm, b: SetTerm) -> Certificate:
        key = (gamma, b)
        if key not in self._memo:
            self._memo[key] = self._helper(gamma, b)
        return self._memo[key]

    def _helper(self, gamma: OrdTerm, b: SetTerm) -> Certificate:
        a = self.principal.bound
        minor = universal_minor(self.principal, b)
        outside = NotMemberOf(b, a)
        conclusion = self.theta.add(NegMAtom(gamma, a), outside, minor)
        label = nf_sum(nf_sum(self.base, omega_pow(gamma)), ONE)
        op = self.op.extend(gamma)
        kind = classify(gamma)
        if kind is OrdClass.ZERO:
            return leaf(conclusion, op, alpha=label, rho=self.rho, axiom=RSAxiom.M_ZERO)
        if kind is OrdClass.LIMIT:
            return Certificate(
                conclusion,
                label,
                self.rho,
                op,
                RuleTag.NOT_M,
                Premises.lazy(lambda delta: self.helper(delta, b)),
                principal=NegMAtom(gamma, a),
            )
        below = pred(gamma)
        level_b = MAtom(below, b)
        side = leaf((NegMAtom(gamma, a), outside, level_b), op, axiom=RSAxiom.M_SUCC)
        pscope = self.e.premise_scope(self.first, self.scope, bind=(self.eigen, (below, b)))
        allowed = (NegMAtom(gamma, a), outside, minor, negate(level_b))
        d = self.e.fit(self.i, self.e.node(self.first, pscope), self.theta, allowed)
        return Certificate(
            conclusion, label, self.rho, op, RuleTag.CUT, Premises.of(side, d), cut_formula=level_b
        )


def embed(p: TaitProof, levels: Optional[Mapping[str, OrdTerm]] = None) -> Embedding:
    """
    Embed a Tait proof of Gamma into RS*.

    Args:
        p: The proof; it is checked first.
        levels: Level of each free variable of Gamma; 1 when absent.

    Returns:
        The certificate of not M_alpha(u)..., Gamma with label
        omega^(Omega+m) and cut rank Omega+n, together with m, n and the
        largest formula length of the proof.

    Raises:
        EmbeddingError: If the proof does not check, a level is not below
            Omega or an axiom schema has no RS* counterpart.
    """
    report = check_proof(p)
    if not report.ok:
        first = report.failures[0]
        raise EmbeddingError(first.step, f"{first.error}: {first.reason}")
    levels = dict(levels or {})
    for v, lvl in levels.items():
        if compare(lvl, BIG_OMEGA) is not Comparison.LESS:
            raise EmbeddingError(None, f"level {render(lvl)} of {v} is not below Omega")
    embedder = _Embedder(p, report.matches)
    root = len(p) - 1
    scope = _Scope({v: (levels.get(v, ONE), Var(v)) for v in p.conclusion.free_vars()}, {})
    m, n = embedder.exponents(root)
    cert = embedder.node(root, scope)
    log.info("embedded %d steps: m = %d, n = %d", len(p), m, n)
    return Embedding(cert, m, n, report.max_formula_length)

