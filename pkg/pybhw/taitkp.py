"""
Tait Checker Module

Checks proofs in the Tait-style sequent calculus for KP + (Pi11-CA*). Axiom
steps name their schema and the witnesses that instantiate it; the checker
builds the instance and requires it to be contained in the step's sequent.
Rule steps name their premises; the checker finds the principal formula in the
conclusion and verifies that each premise adds at most the rule's minor
formulas.

Functions:
    register_schema: Add an axiom family to the registry.
    check_axiom: Does a sequent contain the schema instance named by witnesses?
    check_rule: Match a rule application, returning a ``RuleMatch``.
    check_proof: Check every step, collecting failures in a ``Report``.

Example::

    from pybhw.loader import ProofFileLoader
    from pybhw.taitkp import check_proof

    report = check_proof(ProofFileLoader("tests/data/pair.json").load())
    if not report.ok:
        for failure in report.failures:
            print(failure.step, failure.reason)

Notes:
    - Weakening is implicit: a step may carry side formulas beyond the schema
      instance or the rule's principal formula.
    - The checker never searches for schema instantiations; witnesses are
      mandatory.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .exceptions import (
    BHWError,
    CutFormulaMissing,
    EigenvariableViolation,
    MissingWitness,
    NonDelta0Witness,
    ShapeMismatch,
    TaitCheckError,
    UnknownAxiom,
)
from .formulas import (
    EMPTY,
    OMEGA_SET,
    And,
    BoundedAll,
    BoundedEx,
    Formula,
    MemberOf,
    NegRelApp,
    NotMemberOf,
    Or,
    RelAll,
    RelEx,
    SetTerm,
    UnbAll,
    UnbEx,
    Var,
    alpha_equal,
    collection_axiom,
    empty_axiom,
    eps_ind_axiom,
    free_rels,
    free_vars,
    infinity,
    instantiate,
    is_delta0,
    class_of,
    negate,
    pair_axiom,
    pi11_ca_axiom,
    sep_axiom,
    set_neq,
    substitute,
    union_axiom,
)
from .proof import TaitProof, TaitStep
from .sequent import Sequent
from .sexpr import read_formula, read_term, render_formula
from .tags import TaitAxiom, TaitRule

log = logging.getLogger(__name__)


# Axiom schemas


class Witnesses:
    """Typed access to the text witnesses of an axiom step."""

    def __init__(self, axiom: str, raw: Mapping[str, str]) -> None:
        self.axiom = axiom
        self.raw = dict(raw)

    def _get(self, key: str) -> str:
        try:
            value = self.raw[key]
        except KeyError as e:
            raise MissingWitness(self.axiom, key) from e
        if not isinstance(value, str):
            raise MissingWitness(self.axiom, key)
        return value

    def formula(self, key: str = "formula", delta0: bool = False) -> Formula:
        f = read_formula(self._get(key))
        if delta0 and not is_delta0(f):
            raise NonDelta0Witness(self.axiom, render_formula(f))
        return f

    def term(self, key: str) -> SetTerm:
        return read_term(self._get(key))

    def name(self, key: str) -> str:
        return self._get(key)


InstanceBuilder = Callable[[Witnesses], Sequence[Formula]]


@dataclass(frozen=True)
class AxiomSchema:
    """
    A registered axiom family.

    Attributes:
        name: Name used in ``"axiom:<name>"`` justifications.
        build: Maps witnesses to the formulas of the instance.
        delta0: Whether the ``formula`` witness must be Delta0.
    """

    name: str
    build: InstanceBuilder
    delta0: bool = False


_REGISTRY: Dict[str, AxiomSchema] = {}


def register_schema(name: str, instance_builder: InstanceBuilder, delta0: bool = False) -> AxiomSchema:
    """
    Register an axiom family. Re-registering a name replaces it.

    Args:
        name: Schema name.
        instance_builder: Receives a ``Witnesses`` object and returns the
            formulas the step's sequent must contain.
        delta0: Require the ``formula`` witness to be Delta0 before the
            builder runs.
    """
    schema = AxiomSchema(name, instance_builder, delta0)
    _REGISTRY[name] = schema
    log.debug("registered axiom schema %s", name)
    return schema


def unregister_schema(name: str) -> None:
    if name in {ax.value for ax in TaitAxiom}:
        raise ValueError(f"built-in schema {name} cannot be removed")
    _REGISTRY.pop(name, None)


def get_schema(name: str) -> AxiomSchema:
    try:
        return _REGISTRY[name]
    except KeyError as e:
        raise UnknownAxiom(name) from e


def registered_schemas() -> List[str]:
    return list(_REGISTRY)


def _tnd(w: Witnesses) -> Sequence[Formula]:
    d = w.formula(delta0=True)
    return [negate(d), d]


def _equality(w: Witnesses) -> Sequence[Formula]:
    d = w.formula(delta0=True)
    u = w.name("var")
    a, b = w.term("a"), w.term("b")
    return [set_neq(a, b), negate(substitute(d, u, a)), substitute(d, u, b)]


def _sub_omega(w: Witnesses) -> Sequence[Formula]:
    a = w.term("a")
    return [NegRelApp(w.name("rel"), a), MemberOf(a, OMEGA_SET)]


def _sep(w: Witnesses) -> Sequence[Formula]:
    d = w.formula(delta0=True)
    return [sep_axiom(w.term("a"), w.name("var"), d)]


def _col(w: Witnesses) -> Sequence[Formula]:
    d = w.formula(delta0=True)
    return [collection_axiom(w.term("a"), w.name("var"), w.name("var2"), d)]


def _eps_ind(w: Witnesses) -> Sequence[Formula]:
    a = w.formula()
    if not class_of(a).is_l2set:
        raise NonDelta0Witness(w.axiom, render_formula(a))
    return [eps_ind_axiom(a, w.name("var"))]


def _ca(w: Witnesses) -> Sequence[Formula]:
    d = w.formula(delta0=True)
    return [pi11_ca_axiom(d, w.name("var"), w.name("rel"))]


def _install_builtins() -> None:
    register_schema(TaitAxiom.TND.value, _tnd, delta0=True)
    register_schema(TaitAxiom.EQUALITY.value, _equality, delta0=True)
    register_schema(TaitAxiom.SUB_OMEGA.value, _sub_omega)
    register_schema(TaitAxiom.PAIR.value, lambda w: [pair_axiom(w.term("a"), w.term("b"))])
    register_schema(TaitAxiom.UNION.value, lambda w: [union_axiom(w.term("a"))])
    register_schema(TaitAxiom.EMPTY_SET.value, lambda w: [empty_axiom()])
    register_schema(TaitAxiom.INFINITY.value, lambda w: [infinity(w.term("a"))])
    register_schema(TaitAxiom.DELTA0_SEP.value, _sep, delta0=True)
    register_schema(TaitAxiom.DELTA0_COL.value, _col, delta0=True)
    register_schema(TaitAxiom.EPS_IND.value, _eps_ind)
    register_schema(TaitAxiom.PI11_CA.value, _ca, delta0=True)


_install_builtins()


def axiom_instance(name: str, witness: Mapping[str, str]) -> List[Formula]:
    """
    The formulas of the named schema instance.

    Raises:
        UnknownAxiom: If no schema has that name.
        MissingWitness: If a witness the schema needs is absent.
        NonDelta0Witness: If a Delta0 side condition fails.
    """
    schema = get_schema(name)
    w = Witnesses(name, witness)
    if schema.delta0 and "formula" in witness:
        w.formula(delta0=True)
    return list(schema.build(w))


def check_axiom(s: Sequent, ax: Union[str, TaitAxiom], witnesses: Mapping[str, str]) -> bool:
    """True iff s contains the instance of ax given by witnesses."""
    name = ax.value if isinstance(ax, TaitAxiom) else ax
    return all(f in s for f in axiom_instance(name, witnesses))


# Rules


@dataclass(frozen=True)
class RuleMatch:
    """
    How a rule step was matched.

    Attributes:
        rule: The rule.
        principal: Principal formula in the conclusion, or None for a cut.
        term: Witness term of (ex) or (bex), if one was needed.
        rel: Witness relation of (ex2), if one was needed.
        eigen: Eigenvariable of a universal rule.
        cut_formula: The formula C with premises (Gamma, C) and
            (Gamma, not C); None when neither premise needs it.
    """

    rule: TaitRule
    principal: Optional[Formula] = None
    term: Optional[SetTerm] = None
    rel: Optional[str] = None
    eigen: Optional[str] = None
    cut_formula: Optional[Formula] = None

    def __bool__(self) -> bool:
        return True


_ARITY = {
    TaitRule.OR: 1,
    TaitRule.AND: 2,
    TaitRule.EX: 1,
    TaitRule.ALL: 1,
    TaitRule.BEX: 1,
    TaitRule.BALL: 1,
    TaitRule.EX2: 1,
    TaitRule.ALL2: 1,
    TaitRule.CUT: 2,
}


def _extras(premise: Sequent, concl: Sequent) -> List[Formula]:
    return premise.missing_from(concl)


def _covered(extras: Sequence[Formula], allowed: Iterable[Formula]) -> bool:
    allowed = list(allowed)
    return all(any(alpha_equal(e, a) for a in allowed) for e in extras)


def _candidates(concl: Sequent, cls: type) -> List[Formula]:
    return [f for f in concl if isinstance(f, cls)]


def _term_candidates(extras: Sequence[Formula], hint: Optional[SetTerm]) -> List[SetTerm]:
    if hint is not None:
        return [hint]
    names: FrozenSet[str] = frozenset()
    for e in extras:
        names |= free_vars(e)
    return [Var(n) for n in sorted(names)] + [EMPTY, OMEGA_SET]


def _rel_candidates(extras: Sequence[Formula], hint: Optional[str]) -> List[str]:
    if hint is not None:
        return [hint]
    names: FrozenSet[str] = frozenset()
    for e in extras:
        names |= free_rels(e)
    return sorted(names) or ["Z"]


def check_rule(
    concl: Sequent,
    rule: Union[str, TaitRule],
    premises: Sequence[Sequent],
    eigen: Optional[str] = None,
    witness: Optional[Mapping[str, str]] = None,
) -> RuleMatch:
    """
    Match one rule application.

    Returns:
        RuleMatch: Always truthy; describes principal, witness and cut formula.

    Raises:
        ShapeMismatch: If premises and conclusion do not fit the rule.
        EigenvariableViolation: If the eigenvariable is free in the conclusion.
        CutFormulaMissing: If cut premises do not differ by a complementary pair.
    """
    try:
        rule = TaitRule(rule)
    except ValueError as e:
        raise ShapeMismatch(str(rule), "unknown rule") from e
    witness = witness or {}
    if len(premises) != _ARITY[rule]:
        raise ShapeMismatch(rule.value, f"expects {_ARITY[rule]} premise(s), got {len(premises)}")

    if rule is TaitRule.CUT:
        return _match_cut(concl, premises, witness)
    if rule is TaitRule.AND:
        return _match_and(concl, premises)

    extras = _extras(premises[0], concl)
    if rule is TaitRule.OR:
        for f in _candidates(concl, Or):
            if _covered(extras, (f.left, f.right)):
                return RuleMatch(rule, f)
        raise ShapeMismatch(rule.value, "no disjunction in the conclusion covers the premise")

    if rule in (TaitRule.ALL, TaitRule.BALL, TaitRule.ALL2):
        return _match_universal(rule, concl, extras, eigen)

    hint_term = read_term(witness["term"]) if "term" in witness else None
    if rule is TaitRule.EX2:
        hint_rel = witness.get("rel")
        for f in _candidates(concl, RelEx):
            for v in _rel_candidates(extras, hint_rel):
                if _covered(extras, (instantiate(f, v),)):
                    return RuleMatch(rule, f, rel=v if extras else None)
        raise ShapeMismatch(rule.value, "no relation quantifier in the conclusion covers the premise")

    cls = UnbEx if rule is TaitRule.EX else BoundedEx
    for f in _candidates(concl, cls):
        for t in _term_candidates(extras, hint_term):
            minor = instantiate(f, t)
            if cls is BoundedEx:
                minor = And(MemberOf(t, f.bound), minor)
            if _covered(extras, (minor,)):
                return RuleMatch(rule, f, term=t if extras else None)
    raise ShapeMismatch(rule.value, "no existential formula in the conclusion covers the premise")


def _match_and(concl: Sequent, premises: Sequence[Sequent]) -> RuleMatch:
    left, right = _extras(premises[0], concl), _extras(premises[1], concl)
    for f in _candidates(concl, And):
        if _covered(left, (f.left,)) and _covered(right, (f.right,)):
            return RuleMatch(TaitRule.AND, f)
    raise ShapeMismatch("and", "no conjunction in the conclusion covers both premises")


def _match_universal(
    rule: TaitRule, concl: Sequent, extras: Sequence[Formula], eigen: Optional[str]
) -> RuleMatch:
    if not eigen:
        raise ShapeMismatch(rule.value, "an eigenvariable is required")
    if rule is TaitRule.ALL2:
        if eigen in concl.free_rels():
            raise EigenvariableViolation(rule.value, eigen)
        for f in _candidates(concl, RelAll):
            if _covered(extras, (instantiate(f, eigen),)):
                return RuleMatch(rule, f, eigen=eigen)
        raise ShapeMismatch(rule.value, "no relation universal in the conclusion covers the premise")
    if eigen in concl.free_vars():
        raise EigenvariableViolation(rule.value, eigen)
    u = Var(eigen)
    cls = UnbAll if rule is TaitRule.ALL else BoundedAll
    for f in _candidates(concl, cls):
        minor = instantiate(f, u)
        if cls is BoundedAll:
            minor = Or(NotMemberOf(u, f.bound), minor)
        if _covered(extras, (minor,)):
            return RuleMatch(rule, f, eigen=eigen)
    raise ShapeMismatch(rule.value, "no universal formula in the conclusion covers the premise")


def _match_cut(concl: Sequent, premises: Sequence[Sequent], witness: Mapping[str, str]) -> RuleMatch:
    left, right = _extras(premises[0], concl), _extras(premises[1], concl)
    if "formula" in witness:
        c = read_formula(witness["formula"])
        if _covered(left, (c,)) and _covered(right, (negate(c),)):
            return RuleMatch(TaitRule.CUT, cut_formula=c)
        raise CutFormulaMissing([str(f) for f in left], [str(f) for f in right])
    if len(left) > 1 or len(right) > 1:
        raise CutFormulaMissing([str(f) for f in left], [str(f) for f in right])
    if left:
        c = left[0]
        if _covered(right, (negate(c),)):
            return RuleMatch(TaitRule.CUT, cut_formula=c)
    elif right:
        return RuleMatch(TaitRule.CUT, cut_formula=negate(right[0]))
    else:
        return RuleMatch(TaitRule.CUT)
    raise CutFormulaMissing([str(f) for f in left], [str(f) for f in right])


# Proofs


@dataclass(frozen=True)
class StepFailure:
    step: int
    error: str
    reason: str

    def to_dict(self) -> Dict[str, Any]:
        return {"step": self.step, "error": self.error, "reason": self.reason}


@dataclass
class Report:
    """
    Result of ``check_proof``.

    Attributes:
        ok: Every step is an axiom instance or a correct rule application.
        length_k: Number of steps.
        max_formula_length: Largest formula length in the proof.
        failures: One entry per failing step.
        matches: Rule matches of the rule steps that passed, by index.
    """

    ok: bool
    length_k: int
    max_formula_length: int
    failures: List[StepFailure] = field(default_factory=list)
    matches: Dict[int, RuleMatch] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ok": self.ok,
            "lengthK": self.length_k,
            "maxFormulaLength": self.max_formula_length,
            "failures": [f.to_dict() for f in self.failures],
        }


def check_step(proof: TaitProof, index: int) -> Optional[RuleMatch]:
    """
    Check one step; returns the rule match for rule steps, None for axioms.

    Raises:
        TaitCheckError: Or another BHWError describing the failure.
    """
    step = proof[index]
    if step.by.is_axiom:
        if not check_axiom(step.seq, step.by.name, step.witness):
            raise ShapeMismatch(f"axiom:{step.by.name}", "sequent does not contain the schema instance")
        return None
    for j in step.premises:
        if not isinstance(j, int) or not 0 <= j < index:
            raise ShapeMismatch(step.by.name, f"premise {j} is not an earlier step")
    premises = [proof[j].seq for j in step.premises]
    return check_rule(step.seq, step.by.name, premises, step.eigen, step.witness)


def check_proof(p: TaitProof) -> Report:
    """Check every step and collect failures; never raises for a bad step."""
    failures: List[StepFailure] = []
    matches: Dict[int, RuleMatch] = {}
    for i in range(len(p)):
        try:
            match = check_step(p, i)
        except BHWError as e:
            log.debug("step %d rejected: %s", i, e)
            failures.append(StepFailure(i, type(e).__name__, str(e)))
            continue
        if match is not None:
            matches[i] = match
    if not len(p):
        failures.append(StepFailure(0, "ShapeMismatch", "empty proof"))
    report = Report(
        ok=not failures,
        length_k=len(p),
        max_formula_length=p.max_formula_length(),
        failures=failures,
        matches=matches,
    )
    log.info("checked %d steps: %s", len(p), "ok" if report.ok else f"{len(failures)} failure(s)")
    return report
