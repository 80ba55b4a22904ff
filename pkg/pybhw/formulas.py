"""
Formula Module

Abstract syntax for the language of second order set theory and its ramified
extension with level predicates M_alpha and ranked quantifiers. Formulas are
kept in negation normal form: there is no negation node, ``negate`` pushes
negation to the atoms.

Classes:
    Var, EmptySet, OmegaConst: Set terms.
    MemberOf, NotMemberOf, RelApp, NegRelApp, MAtom, NegMAtom: Atoms.
    Or, And: Connectives.
    BoundedEx, BoundedAll: (Qx in a) quantifiers.
    RankedEx, RankedAll: Qx^alpha quantifiers ranging over M_alpha.
    UnbEx, UnbAll: Unbounded set quantifiers.
    RelEx, RelAll: Relation quantifiers.
    FormulaClass: Class membership flags returned by ``class_of``.

Functions:
    negate, rank, params, level, length, class_of
    bound_exists (F^beta), relativize (F^(a))
    substitute, substitute_rel, substitute_all, free_vars, free_rels
    alpha_key, alpha_equal
    derived plus the constructors it dispatches to

Example:
    Building and measuring a formula::

        from pybhw.formulas import UnbEx, MemberOf, Var, rank, class_of

        x, a = Var("x"), Var("a")
        f = UnbEx("x", MemberOf(x, a))
        rank(f)                 # W
        class_of(f).is_s0       # True

Notes:
    - Variables are named; binders are renamed on demand to avoid capture.
    - Two formulas are treated as the same sequent member when their
      ``alpha_key`` agree, i.e. up to renaming of bound variables.
    - Level annotations must lie below Omega; this is checked on construction.
"""

import functools
import itertools
import re
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Hashable, Iterable, Mapping, Optional, Tuple, Union

from .exceptions import FormulaClassError, FormulaError, OrdinalRangeError
from .ordinals import (
    BIG_OMEGA,
    ONE,
    ZERO,
    OrdTerm,
    from_int,
    max_ord,
    nf_sum,
    omega_times,
    render,
    succ,
)


# Terms


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class EmptySet:
    def __str__(self) -> str:
        return "empty"


@dataclass(frozen=True)
class OmegaConst:
    def __str__(self) -> str:
        return "omega"


SetTerm = Union[Var, EmptySet, OmegaConst]

EMPTY = EmptySet()
OMEGA_SET = OmegaConst()


def _check_level(level: OrdTerm) -> None:
    if not isinstance(level, OrdTerm):
        raise FormulaError(f"level annotation must be an ordinal term, got {level!r}")
    if not level < BIG_OMEGA:
        raise OrdinalRangeError(render(level))


class Formula:
    """Base class of all formula nodes."""

    __slots__ = ()

    def __str__(self) -> str:
        from .sexpr import render_formula

        return render_formula(self)


# Atoms


@dataclass(frozen=True)
class MemberOf(Formula):
    left: SetTerm
    right: SetTerm


@dataclass(frozen=True)
class NotMemberOf(Formula):
    left: SetTerm
    right: SetTerm


@dataclass(frozen=True)
class RelApp(Formula):
    rel: str
    arg: SetTerm


@dataclass(frozen=True)
class NegRelApp(Formula):
    rel: str
    arg: SetTerm


@dataclass(frozen=True)
class MAtom(Formula):
    level: OrdTerm
    arg: SetTerm

    def __post_init__(self) -> None:
        _check_level(self.level)


@dataclass(frozen=True)
class NegMAtom(Formula):
    level: OrdTerm
    arg: SetTerm

    def __post_init__(self) -> None:
        _check_level(self.level)


# Connectives


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


# Quantifiers


@dataclass(frozen=True)
class BoundedEx(Formula):
    var: str
    bound: SetTerm
    body: Formula


@dataclass(frozen=True)
class BoundedAll(Formula):
    var: str
    bound: SetTerm
    body: Formula


@dataclass(frozen=True)
class RankedEx(Formula):
    level: OrdTerm
    var: str
    body: Formula

    def __post_init__(self) -> None:
        _check_level(self.level)


@dataclass(frozen=True)
class RankedAll(Formula):
    level: OrdTerm
    var: str
    body: Formula

    def __post_init__(self) -> None:
        _check_level(self.level)


@dataclass(frozen=True)
class UnbEx(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class UnbAll(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class RelEx(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class RelAll(Formula):
    var: str
    body: Formula


SET_ATOMS = (MemberOf, NotMemberOf)
REL_ATOMS = (RelApp, NegRelApp)
M_ATOMS = (MAtom, NegMAtom)
ATOMS = SET_ATOMS + REL_ATOMS + M_ATOMS
BINARY = (Or, And)
BOUNDED = (BoundedEx, BoundedAll)
RANKED = (RankedEx, RankedAll)
UNBOUNDED = (UnbEx, UnbAll)
REL_QUANTIFIERS = (RelEx, RelAll)
SET_BINDERS = BOUNDED + RANKED + UNBOUNDED

_DUAL = {
    MemberOf: NotMemberOf,
    NotMemberOf: MemberOf,
    RelApp: NegRelApp,
    NegRelApp: RelApp,
    MAtom: NegMAtom,
    NegMAtom: MAtom,
    Or: And,
    And: Or,
    BoundedEx: BoundedAll,
    BoundedAll: BoundedEx,
    RankedEx: RankedAll,
    RankedAll: RankedEx,
    UnbEx: UnbAll,
    UnbAll: UnbEx,
    RelEx: RelAll,
    RelAll: RelEx,
}

EXISTENTIAL = (Or, BoundedEx, RankedEx, UnbEx, RelEx)


def negate(f: Formula) -> Formula:
    """De Morgan dual; an involution."""
    dual = _DUAL[type(f)]
    if isinstance(f, SET_ATOMS):
        return dual(f.left, f.right)
    if isinstance(f, REL_ATOMS):
        return dual(f.rel, f.arg)
    if isinstance(f, M_ATOMS):
        return dual(f.level, f.arg)
    if isinstance(f, BINARY):
        return dual(negate(f.left), negate(f.right))
    if isinstance(f, BOUNDED):
        return dual(f.var, f.bound, negate(f.body))
    if isinstance(f, RANKED):
        return dual(f.level, f.var, negate(f.body))
    return dual(f.var, negate(f.body))


# Syntactic measures


@functools.lru_cache(maxsize=1 << 16)
def rank(f: Formula) -> OrdTerm:
    """
    The rank rk(F).

    Atoms of set theory have rank 0, M_alpha atoms omega*alpha, connectives
    add one, bounded and ranked quantifiers add two to the rank of their
    matrix (ranked ones first taking the maximum with omega*alpha), unbounded
    quantifiers give Omega over a Delta0 matrix and max(Omega+1, rk+3)
    otherwise, relation quantifiers add one.
    """
    if isinstance(f, SET_ATOMS + REL_ATOMS):
        return ZERO
    if isinstance(f, M_ATOMS):
        return omega_times(f.level)
    if isinstance(f, BINARY):
        return succ(max_ord(rank(f.left), rank(f.right)))
    if isinstance(f, BOUNDED):
        return nf_sum(rank(f.body), from_int(2))
    if isinstance(f, RANKED):
        return nf_sum(max_ord(omega_times(f.level), rank(f.body)), from_int(2))
    if isinstance(f, UNBOUNDED):
        if is_delta0(f.body):
            return BIG_OMEGA
        return max_ord(succ(BIG_OMEGA), nf_sum(rank(f.body), from_int(3)))
    return succ(rank(f.body))


@functools.lru_cache(maxsize=1 << 16)
def params(f: Formula) -> FrozenSet[OrdTerm]:
    """|F|: levels of M atoms and ranked quantifiers, plus 0 for set atoms."""
    if isinstance(f, SET_ATOMS + REL_ATOMS):
        return frozenset((ZERO,))
    if isinstance(f, M_ATOMS):
        return frozenset((f.level,))
    if isinstance(f, BINARY):
        return params(f.left) | params(f.right)
    if isinstance(f, BOUNDED):
        return frozenset((ZERO,)) | params(f.body)
    if isinstance(f, RANKED):
        return frozenset((f.level,)) | params(f.body)
    return params(f.body)


def level(f: Formula) -> OrdTerm:
    if rank(f) < BIG_OMEGA:
        return max_ord(*params(f))
    return BIG_OMEGA


def length(f: Formula) -> int:
    if isinstance(f, ATOMS):
        return 0
    if isinstance(f, BINARY):
        return max(length(f.left), length(f.right)) + 1
    return length(f.body) + 1


def size(f: Formula) -> int:
    """Number of AST nodes, counting terms and level annotations as leaves."""
    if isinstance(f, ATOMS):
        return 1
    if isinstance(f, BINARY):
        return 1 + size(f.left) + size(f.right)
    return 1 + size(f.body)


@dataclass(frozen=True)
class FormulaClass:
    """Membership of a formula in the syntactic classes."""

    is_l2set: bool
    is_delta0: bool
    is_d: bool
    is_s: bool
    is_s0: bool
    is_b: bool
    is_sigma: bool

    def to_dict(self) -> Dict[str, bool]:
        return {
            "isDelta0": self.is_delta0,
            "isD": self.is_d,
            "isS": self.is_s,
            "isS0": self.is_s0,
            "isB": self.is_b,
            "isSigmaL2set": self.is_sigma,
        }


@functools.lru_cache(maxsize=1 << 16)
def _features(f: Formula) -> FrozenSet[type]:
    """Node types occurring in f that matter for class membership."""
    if isinstance(f, M_ATOMS):
        return frozenset((MAtom,))
    if isinstance(f, ATOMS):
        return frozenset()
    if isinstance(f, BINARY):
        return _features(f.left) | _features(f.right)
    mine = frozenset((MAtom,)) if isinstance(f, RANKED) else frozenset((type(f),))
    if isinstance(f, BOUNDED):
        mine = frozenset()
    if isinstance(f, REL_QUANTIFIERS):
        mine = frozenset((RelEx,))
    return mine | _features(f.body)


def class_of(f: Formula) -> FormulaClass:
    feats = _features(f)
    has_m = MAtom in feats
    unb_ex = UnbEx in feats
    unb_all = UnbAll in feats
    rel_q = RelEx in feats
    is_l2set = not has_m
    is_delta0 = is_l2set and not (unb_ex or unb_all or rel_q)
    is_s = not (unb_all or rel_q)
    is_sigma = is_l2set and is_s
    return FormulaClass(
        is_l2set=is_l2set,
        is_delta0=is_delta0,
        is_d=not (unb_ex or unb_all or rel_q),
        is_s=is_s,
        is_s0=is_sigma and not is_delta0,
        is_b=not (unb_ex or unb_all),
        is_sigma=is_sigma,
    )


def is_delta0(f: Formula) -> bool:
    return class_of(f).is_delta0


def in_b(f: Formula) -> bool:
    return class_of(f).is_b


def in_s(f: Formula) -> bool:
    return class_of(f).is_s


# Variables and substitution


def term_vars(t: SetTerm) -> FrozenSet[str]:
    return frozenset((t.name,)) if isinstance(t, Var) else frozenset()


@functools.lru_cache(maxsize=1 << 16)
def free_vars(f: Formula) -> FrozenSet[str]:
    """Free set variables."""
    if isinstance(f, SET_ATOMS):
        return term_vars(f.left) | term_vars(f.right)
    if isinstance(f, REL_ATOMS + M_ATOMS):
        return term_vars(f.arg)
    if isinstance(f, BINARY):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, BOUNDED):
        return term_vars(f.bound) | (free_vars(f.body) - {f.var})
    if isinstance(f, RANKED + UNBOUNDED):
        return free_vars(f.body) - {f.var}
    return free_vars(f.body)


@functools.lru_cache(maxsize=1 << 16)
def free_rels(f: Formula) -> FrozenSet[str]:
    """Free relation variables."""
    if isinstance(f, REL_ATOMS):
        return frozenset((f.rel,))
    if isinstance(f, ATOMS):
        return frozenset()
    if isinstance(f, BINARY):
        return free_rels(f.left) | free_rels(f.right)
    if isinstance(f, REL_QUANTIFIERS):
        return free_rels(f.body) - {f.var}
    return free_rels(f.body)


def all_names(f: Formula) -> FrozenSet[str]:
    """Every identifier in f, bound or free."""
    if isinstance(f, SET_ATOMS):
        return term_vars(f.left) | term_vars(f.right)
    if isinstance(f, REL_ATOMS):
        return frozenset((f.rel,)) | term_vars(f.arg)
    if isinstance(f, M_ATOMS):
        return term_vars(f.arg)
    if isinstance(f, BINARY):
        return all_names(f.left) | all_names(f.right)
    extra = term_vars(f.bound) if isinstance(f, BOUNDED) else frozenset()
    return frozenset((f.var,)) | extra | all_names(f.body)


_SUFFIX = re.compile(r"^(.*?)(\d*)$")


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    """A variant of base not in avoid: base itself, else base1, base2, ..."""
    avoid = set(avoid)
    if base not in avoid:
        return base
    stem = _SUFFIX.match(base).group(1) or "v"
    for i in itertools.count(1):
        candidate = f"{stem}{i}"
        if candidate not in avoid:
            return candidate
    raise AssertionError("unreachable")


def _subst_term(t: SetTerm, sets: Mapping[str, SetTerm]) -> SetTerm:
    if isinstance(t, Var) and t.name in sets:
        return sets[t.name]
    return t


def substitute_all(
    f: Formula,
    sets: Optional[Mapping[str, SetTerm]] = None,
    rels: Optional[Mapping[str, str]] = None,
) -> Formula:
    """
    Simultaneous capture-avoiding substitution of set terms for set variables
    and relation variables for relation variables.
    """
    sets = {k: v for k, v in (sets or {}).items() if v != Var(k)}
    rels = {k: v for k, v in (rels or {}).items() if v != k}
    if not sets and not rels:
        return f
    return _subst(f, sets, rels)


def _subst(f: Formula, sets: Dict[str, SetTerm], rels: Dict[str, str]) -> Formula:
    if not sets and not rels:
        return f
    if isinstance(f, SET_ATOMS):
        return type(f)(_subst_term(f.left, sets), _subst_term(f.right, sets))
    if isinstance(f, REL_ATOMS):
        return type(f)(rels.get(f.rel, f.rel), _subst_term(f.arg, sets))
    if isinstance(f, M_ATOMS):
        return type(f)(f.level, _subst_term(f.arg, sets))
    if isinstance(f, BINARY):
        return type(f)(_subst(f.left, sets, rels), _subst(f.right, sets, rels))
    if isinstance(f, REL_QUANTIFIERS):
        inner = {k: v for k, v in rels.items() if k != f.var}
        var = f.var
        live = free_rels(f.body)
        incoming = {inner[k] for k in live if k in inner}
        inner_sets = sets
        if var in incoming:
            var = fresh_name(f.var, incoming | all_names(f.body) | set(inner.values()))
            inner = dict(inner)
            inner[f.var] = var
        return type(f)(var, _subst(f.body, inner_sets, inner))
    # set binders
    inner_sets = {k: v for k, v in sets.items() if k != f.var}
    live = free_vars(f.body)
    incoming = set()
    for k in live:
        if k in inner_sets:
            incoming |= term_vars(inner_sets[k])
    var = f.var
    if var in incoming:
        targets = set()
        for v in inner_sets.values():
            targets |= term_vars(v)
        var = fresh_name(f.var, incoming | all_names(f.body) | targets)
        inner_sets = dict(inner_sets)
        inner_sets[f.var] = Var(var)
    body = _subst(f.body, inner_sets, rels)
    if isinstance(f, BOUNDED):
        return type(f)(var, _subst_term(f.bound, sets), body)
    if isinstance(f, RANKED):
        return type(f)(f.level, var, body)
    return type(f)(var, body)


def substitute(f: Formula, var: str, term: SetTerm) -> Formula:
    """F[t/x], renaming binders that would capture t."""
    return substitute_all(f, sets={var: term})


def substitute_rel(f: Formula, var: str, rel: str) -> Formula:
    return substitute_all(f, rels={var: rel})


def instantiate(f: Formula, term: Union[SetTerm, str]) -> Formula:
    """Body of a quantified formula with its bound variable replaced."""
    if isinstance(f, REL_QUANTIFIERS):
        return substitute_rel(f.body, f.var, term)
    return substitute(f.body, f.var, term)


# Alpha equivalence


def _term_key(t: SetTerm, env: Mapping[str, int], depth: int) -> Hashable:
    if isinstance(t, Var):
        if t.name in env:
            return ("b", depth - env[t.name])
        return ("v", t.name)
    if isinstance(t, EmptySet):
        return ("e",)
    return ("w",)


@functools.lru_cache(maxsize=1 << 17)
def alpha_key(f: Formula) -> Hashable:
    """A hashable key identifying f up to renaming of bound variables."""
    return _alpha(f, {}, {}, 0)


def _alpha(f: Formula, env: Dict[str, int], renv: Dict[str, int], depth: int) -> Hashable:
    tag = type(f).__name__
    if isinstance(f, SET_ATOMS):
        return (tag, _term_key(f.left, env, depth), _term_key(f.right, env, depth))
    if isinstance(f, REL_ATOMS):
        rel = ("b", depth - renv[f.rel]) if f.rel in renv else ("v", f.rel)
        return (tag, rel, _term_key(f.arg, env, depth))
    if isinstance(f, M_ATOMS):
        return (tag, f.level, _term_key(f.arg, env, depth))
    if isinstance(f, BINARY):
        return (tag, _alpha(f.left, env, renv, depth), _alpha(f.right, env, renv, depth))
    if isinstance(f, REL_QUANTIFIERS):
        inner = dict(renv)
        inner[f.var] = depth + 1
        return (tag, _alpha(f.body, env, inner, depth + 1))
    inner = dict(env)
    inner[f.var] = depth + 1
    body = _alpha(f.body, inner, renv, depth + 1)
    if isinstance(f, BOUNDED):
        return (tag, _term_key(f.bound, env, depth), body)
    if isinstance(f, RANKED):
        return (tag, f.level, body)
    return (tag, body)


def alpha_equal(f: Formula, g: Formula) -> bool:
    return f is g or alpha_key(f) == alpha_key(g)


# Transforms


def bound_exists(f: Formula, beta: OrdTerm) -> Formula:
    """
    F^beta: every unbounded existential quantifier becomes ranked at beta.

    Raises:
        FormulaClassError: If F is not in class S.
    """
    if not in_s(f):
        raise FormulaClassError(str(f), "S")
    return _bound(f, beta)


def _bound(f: Formula, beta: OrdTerm) -> Formula:
    if UnbEx not in _features(f):
        return f
    if isinstance(f, BINARY):
        return type(f)(_bound(f.left, beta), _bound(f.right, beta))
    if isinstance(f, UnbEx):
        return RankedEx(beta, f.var, _bound(f.body, beta))
    if isinstance(f, BOUNDED):
        return type(f)(f.var, f.bound, _bound(f.body, beta))
    if isinstance(f, RANKED):
        return type(f)(f.level, f.var, _bound(f.body, beta))
    return type(f)(f.var, _bound(f.body, beta))


def relativize(f: Formula, a: SetTerm) -> Formula:
    """
    F^(a): unbounded set quantifiers are restricted to a, relation quantifiers
    are left alone.
    """
    return _relativize(f, a, term_vars(a))


def _relativize(f: Formula, a: SetTerm, clash: FrozenSet[str]) -> Formula:
    if isinstance(f, ATOMS):
        return f
    if isinstance(f, BINARY):
        return type(f)(_relativize(f.left, a, clash), _relativize(f.right, a, clash))
    if isinstance(f, REL_QUANTIFIERS):
        return type(f)(f.var, _relativize(f.body, a, clash))
    var, body = f.var, f.body
    if var in clash:
        var = fresh_name(var, clash | all_names(body))
        body = substitute(body, f.var, Var(var))
    body = _relativize(body, a, clash)
    if isinstance(f, UnbEx):
        return BoundedEx(var, a, body)
    if isinstance(f, UnbAll):
        return BoundedAll(var, a, body)
    if isinstance(f, BOUNDED):
        return type(f)(var, f.bound, body)
    return type(f)(f.level, var, body)


# Derived formulas


def _fresh(avoid: Iterable[str], *bases: str) -> Tuple[str, ...]:
    taken = set(avoid)
    names = []
    for base in bases:
        name = fresh_name(base, taken)
        taken.add(name)
        names.append(name)
    return tuple(names)


def _vars_of(*items: Union[SetTerm, Formula, str]) -> FrozenSet[str]:
    out: FrozenSet[str] = frozenset()
    for item in items:
        if isinstance(item, Formula):
            out |= all_names(item)
        elif isinstance(item, str):
            out |= {item}
        else:
            out |= term_vars(item)
    return out


def implies(a: Formula, b: Formula) -> Formula:
    """A -> B := not A or B."""
    return Or(negate(a), b)


def iff(a: Formula, b: Formula) -> Formula:
    """A <-> B := (A -> B) and (B -> A)."""
    return And(implies(a, b), implies(b, a))


def set_eq(a: SetTerm, b: SetTerm) -> Formula:
    """a = b := (forall x in a)(x in b) and (forall x in b)(x in a)."""
    (x,) = _fresh(_vars_of(a, b), "x")
    return And(
        BoundedAll(x, a, MemberOf(Var(x), b)),
        BoundedAll(x, b, MemberOf(Var(x), a)),
    )


def set_neq(a: SetTerm, b: SetTerm) -> Formula:
    return negate(set_eq(a, b))


def rel_eq(u: str, v: str) -> Formula:
    """U = V := (forall x in omega)(U(x) <-> V(x))."""
    (x,) = _fresh({u, v}, "x")
    return BoundedAll(x, OMEGA_SET, iff(RelApp(u, Var(x)), RelApp(v, Var(x))))


def tran(a: SetTerm) -> Formula:
    x, y = _fresh(_vars_of(a), "x", "y")
    return BoundedAll(x, a, BoundedAll(y, Var(x), MemberOf(Var(y), a)))


def ord_(a: SetTerm) -> Formula:
    (x,) = _fresh(_vars_of(a), "x")
    return And(tran(a), BoundedAll(x, a, tran(Var(x))))


def succ_of(b: SetTerm, a: SetTerm) -> Formula:
    """b = a cup {a}: every y in b is in a or equals a, a is a subset of b, a is in b."""
    (y,) = _fresh(_vars_of(a, b), "y")
    return And(
        And(
            BoundedAll(y, b, Or(MemberOf(Var(y), a), set_eq(Var(y), a))),
            BoundedAll(y, a, MemberOf(Var(y), b)),
        ),
        MemberOf(a, b),
    )


def succ_(a: SetTerm) -> Formula:
    """Succ[a] := Ord[a] and (exists x in a)(a = x cup {x})."""
    (x,) = _fresh(_vars_of(a), "x")
    return And(ord_(a), BoundedEx(x, a, succ_of(a, Var(x))))


def fin_ord(a: SetTerm) -> Formula:
    (x,) = _fresh(_vars_of(a), "x")
    return And(
        And(ord_(a), Or(set_eq(a, EMPTY), succ_(a))),
        BoundedAll(x, a, Or(set_eq(Var(x), EMPTY), succ_(Var(x)))),
    )


def sep_eq(z: SetTerm, a: SetTerm, x: str, body: Formula) -> Formula:
    """
    z = {x in a : D[x]} :=
    (forall x in z)(x in a and D[x]) and (forall x in a)(D[x] -> x in z).
    """
    (v,) = _fresh(_vars_of(z, a, body) | {x}, x)
    d = substitute(body, x, Var(v))
    return And(
        BoundedAll(v, z, And(MemberOf(Var(v), a), d)),
        BoundedAll(v, a, Or(negate(d), MemberOf(Var(v), z))),
    )


def union_body(a: SetTerm, z: SetTerm) -> Formula:
    """(forall y in a)(forall x in y)(x in z)."""
    y, x = _fresh(_vars_of(a, z), "y", "x")
    return BoundedAll(y, a, BoundedAll(x, Var(y), MemberOf(Var(x), z)))


def pair_body(a: SetTerm, b: SetTerm, z: SetTerm) -> Formula:
    return And(MemberOf(a, z), MemberOf(b, z))


def infinity(a: SetTerm) -> Formula:
    """a in omega <-> FinOrd[a], expanded."""
    return iff(MemberOf(a, OMEGA_SET), fin_ord(a))


def empty_axiom() -> Formula:
    """(forall x in empty)(x != x)."""
    return BoundedAll("x", EMPTY, set_neq(Var("x"), Var("x")))


def pair_axiom(a: SetTerm, b: SetTerm) -> Formula:
    (z,) = _fresh(_vars_of(a, b), "z")
    return UnbEx(z, pair_body(a, b, Var(z)))


def union_axiom(a: SetTerm) -> Formula:
    (z,) = _fresh(_vars_of(a), "z")
    return UnbEx(z, union_body(a, Var(z)))


def sep_axiom(a: SetTerm, x: str, body: Formula) -> Formula:
    (z,) = _fresh(_vars_of(a, body) | {x}, "z")
    return UnbEx(z, sep_eq(Var(z), a, x, body))


def collection_premise(a: SetTerm, x: str, y: str, body: Formula) -> Formula:
    """(forall x in a) exists y D[x, y]."""
    return BoundedAll(x, a, UnbEx(y, body))


def collection_axiom(a: SetTerm, x: str, y: str, body: Formula) -> Formula:
    """(forall x in a) exists y D -> exists z (forall x in a)(exists y in z) D."""
    premise = collection_premise(a, x, y, body)
    (z,) = _fresh(_vars_of(a, body) | {x, y}, "z")
    return implies(premise, UnbEx(z, relativize(premise, Var(z))))


def eps_ind_hypothesis(body: Formula, x: str) -> Formula:
    """G := forall x((forall y in x) A[y] -> A[x])."""
    (y,) = _fresh(all_names(body) | {x}, "y")
    return UnbAll(x, implies(BoundedAll(y, Var(x), substitute(body, x, Var(y))), body))


def eps_ind_axiom(body: Formula, x: str) -> Formula:
    return implies(eps_ind_hypothesis(body, x), UnbAll(x, body))


def pi11_ca_axiom(body: Formula, x: str, rel: str, new_rel: str = "Z") -> Formula:
    """exists Z (forall x in omega)(Z(x) <-> forall Y D[x, Y])."""
    (z,) = _fresh(all_names(body) | {x, rel}, new_rel)
    return RelEx(z, BoundedAll(x, OMEGA_SET, iff(RelApp(z, Var(x)), RelAll(rel, body))))


_DERIVED: Dict[str, Tuple[int, Callable[..., Formula]]] = {
    "Tran": (1, tran),
    "Ord": (1, ord_),
    "Succ": (1, succ_),
    "FinOrd": (1, fin_ord),
    "SetEq": (2, set_eq),
    "SetNeq": (2, set_neq),
    "RelEq": (2, rel_eq),
    "Iff": (2, iff),
    "Implies": (2, implies),
    "SuccOf": (2, succ_of),
}


def derived(name: str, *args: Union[SetTerm, Formula, str]) -> Formula:
    """
    Expand a defined predicate.

    Args:
        name: One of Tran, Ord, Succ, FinOrd, SetEq, SetNeq, RelEq, Iff,
            Implies, SuccOf.
        args: Set terms, relation names or formulas as the predicate needs.

    Raises:
        FormulaError: For an unknown name or a wrong number of arguments.
    """
    try:
        arity, build = _DERIVED[name]
    except KeyError as e:
        raise FormulaError(f"unknown derived formula {name!r}") from e
    if len(args) != arity:
        raise FormulaError(f"{name} takes {arity} arguments, got {len(args)}")
    return build(*args)


def m_atoms(pairs: Iterable[Tuple[OrdTerm, SetTerm]]) -> Tuple[Formula, ...]:
    """The negated level atoms not M_alpha(a) for (alpha, a) pairs."""
    return tuple(NegMAtom(alpha, a) for alpha, a in pairs)


ONE_LEVEL = ONE
