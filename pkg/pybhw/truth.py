"""
Truth Module

Three-valued truth of B formulas under assignments of trees to variables.
Set atoms are read through =* and in*, level atoms M_alpha(a) through alpha
trees, and U(a) as T_a in* T_U with T_U a subset of omega*. The constants
empty and omega denote the leaf and omega*.

Bounded quantifiers range over the immediate subtrees of their bound, which
is exact except for omega*, where only the first ``witness_max`` subtrees are
visited. Ranked and relation quantifiers search a finite pool of candidate
trees; when the pool is not the whole domain and no witness settles the
question, the answer is ``Truth.UNKNOWN``. Connectives follow Kleene's
strong three-valued logic.

Example::

    from pybhw.sexpr import read_formula
    from pybhw.trees import NStar
    from pybhw.truth import eval_truth

    eval_truth(read_formula("(in a omega)"), {"a": NStar(3)})    # Truth.TRUE

Notes:
    - Unbounded set quantifiers are rejected; the evaluator covers class B.
    - ``eval_truth(negate(F))`` is always ``eval_truth(F).negate()``.
"""

import functools
import itertools
import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Iterator, List, Mapping, Optional, Tuple

from .config import Settings
from .exceptions import EvaluationError
from .formulas import (
    And,
    BoundedAll,
    BoundedEx,
    EmptySet,
    Formula,
    MAtom,
    MemberOf,
    NegMAtom,
    NegRelApp,
    NotMemberOf,
    OmegaConst,
    Or,
    RankedAll,
    RankedEx,
    RelAll,
    RelApp,
    RelEx,
    SetTerm,
    UnbAll,
    UnbEx,
    free_rels,
    in_b,
    negate,
)
from .ordinals import OrdTerm, to_int
from .tags import Truth
from .trees import (
    LEAF,
    OMEGA_STAR,
    Finite,
    NStar,
    OmegaStar,
    TreeSet,
    alpha_tree,
    children,
    codes_natural,
    hf_code,
    mem_star,
    node_count,
    nstar_nodes,
    subtree,
)

log = logging.getLogger(__name__)

Assignment = Mapping[str, TreeSet]


@dataclass(frozen=True)
class Budget:
    tree_size_max: int = Settings.tree_size_max
    witness_max: int = Settings.witness_max
    materialize_max: int = Settings.materialize_max
    exact_rank: int = Settings.exact_rank

    @classmethod
    def from_settings(cls, settings: Settings) -> "Budget":
        return cls(
            tree_size_max=settings.tree_size_max,
            witness_max=settings.witness_max,
            materialize_max=settings.materialize_max,
            exact_rank=settings.exact_rank,
        )


def _or(values: Iterable[Truth]) -> Truth:
    result = Truth.FALSE
    for v in values:
        if v is Truth.TRUE:
            return Truth.TRUE
        if v is Truth.UNKNOWN:
            result = Truth.UNKNOWN
    return result


# Candidate trees


def _hf_key(s: FrozenSet) -> Tuple:
    return tuple(sorted(_hf_key(e) for e in s))


def tree_of_hf(s: FrozenSet) -> Finite:
    """The canonical tree of a hereditarily finite set."""
    nodes = {()}

    def grow(prefix: Tuple[int, ...], value: FrozenSet) -> None:
        for i, element in enumerate(sorted(value, key=_hf_key)):
            node = prefix + (i,)
            nodes.add(node)
            grow(node, element)

    grow((), s)
    return Finite(frozenset(nodes))


@functools.lru_cache(maxsize=None)
def hf_below_rank(r: int) -> Tuple[FrozenSet, ...]:
    """All hereditarily finite sets of rank below r."""
    if r <= 0:
        return ()
    lower = hf_below_rank(r - 1)
    return tuple(
        frozenset(c)
        for k in range(len(lower) + 1)
        for c in itertools.combinations(lower, k)
    )


def _ranked_pool(alpha: OrdTerm, assign: Assignment, budget: Budget) -> Tuple[List[TreeSet], bool]:
    """Candidate alpha-trees and whether they exhaust the domain up to =*."""
    n = to_int(alpha)
    exact_rank = min(n, budget.exact_rank) if n is not None else budget.exact_rank
    pool: List[TreeSet] = []
    exhaustive = n is not None and n <= budget.exact_rank
    for s in hf_below_rank(exact_rank):
        tree = tree_of_hf(s)
        if len(tree.nodes) <= budget.tree_size_max:
            pool.append(tree)
        else:
            exhaustive = False
    if not exhaustive:
        for k in range(budget.witness_max):
            pool.append(NStar(k))
        pool.append(OMEGA_STAR)
        for tree in assign.values():
            pool.extend(_subtrees(tree, budget))
    seen = set()
    members: List[TreeSet] = []
    for tree in pool:
        key = _identity(tree, budget)
        if key in seen:
            continue
        seen.add(key)
        if alpha_tree(tree, alpha, limit=budget.materialize_max) is not None:
            members.append(tree)
    return members, exhaustive


def _identity(tree: TreeSet, budget: Budget) -> object:
    count = node_count(tree)
    if count is None or count > budget.materialize_max:
        return tree
    return hf_code(tree, budget.materialize_max)


def _subtrees(tree: TreeSet, budget: Budget) -> Iterator[TreeSet]:
    if isinstance(tree, Finite):
        for node in tree.nodes:
            yield subtree(tree, node)
    elif isinstance(tree, NStar):
        yield from (NStar(k) for k in range(tree.n + 1))


def _rel_pool(budget: Budget) -> List[TreeSet]:
    """Trees coding subsets of {0, ..., witness_max - 1}, and omega* itself."""
    pool: List[TreeSet] = []
    naturals = list(range(budget.witness_max))
    for k in range(len(naturals) + 1):
        for subset in itertools.combinations(naturals, k):
            nodes = {()}
            for label, n in enumerate(subset):
                nodes.update((label,) + s for s in nstar_nodes(n))
            if len(nodes) <= budget.materialize_max:
                pool.append(Finite(frozenset(nodes)))
    pool.append(OMEGA_STAR)
    return pool


# Evaluation


class _Evaluator:
    def __init__(self, assign: Assignment, budget: Budget) -> None:
        self.assign = dict(assign)
        self.budget = budget

    def tree(self, t: SetTerm) -> TreeSet:
        if isinstance(t, EmptySet):
            return LEAF
        if isinstance(t, OmegaConst):
            return OMEGA_STAR
        try:
            return self.assign[t.name]
        except KeyError as e:
            raise EvaluationError(f"variable {t.name} has no tree assigned") from e

    def rel(self, name: str) -> TreeSet:
        try:
            return self.assign[name]
        except KeyError as e:
            raise EvaluationError(f"relation {name} has no tree assigned") from e

    def mem(self, a: TreeSet, b: TreeSet) -> bool:
        return mem_star(a, b, self.budget.materialize_max)

    def rel_holds(self, u: TreeSet, a: TreeSet) -> bool:
        within_omega = isinstance(u, OmegaStar) or all(
            codes_natural(c, self.budget.materialize_max) is not None for c in children(u)
        )
        return within_omega and self.mem(a, u)

    def bound_domain(self, bound: TreeSet) -> Tuple[List[TreeSet], bool]:
        if isinstance(bound, OmegaStar):
            return [NStar(k) for k in range(self.budget.witness_max)], False
        return list(children(bound)), True

    def with_binding(self, name: str, tree: TreeSet) -> "_Evaluator":
        inner = _Evaluator(self.assign, self.budget)
        inner.assign[name] = tree
        return inner

    def exists(self, var: str, body: Formula, domain: List[TreeSet], exhaustive: bool) -> Truth:
        result = _or(self.with_binding(var, t).eval(body) for t in domain)
        if result is Truth.FALSE and not exhaustive:
            return Truth.UNKNOWN
        return result

    def eval(self, f: Formula) -> Truth:
        if isinstance(f, MemberOf):
            return Truth.of(self.mem(self.tree(f.left), self.tree(f.right)))
        if isinstance(f, RelApp):
            return Truth.of(self.rel_holds(self.rel(f.rel), self.tree(f.arg)))
        if isinstance(f, MAtom):
            ranking = alpha_tree(self.tree(f.arg), f.level, limit=self.budget.materialize_max)
            return Truth.of(ranking is not None)
        if isinstance(f, Or):
            return _or((self.eval(f.left), self.eval(f.right)))
        if isinstance(f, BoundedEx):
            domain, exhaustive = self.bound_domain(self.tree(f.bound))
            return self.exists(f.var, f.body, domain, exhaustive)
        if isinstance(f, RankedEx):
            domain, exhaustive = _ranked_pool(f.level, self.assign, self.budget)
            return self.exists(f.var, f.body, domain, exhaustive)
        if isinstance(f, RelEx):
            if f.var not in free_rels(f.body):
                return self.with_binding(f.var, LEAF).eval(f.body)
            return self.exists(f.var, f.body, _rel_pool(self.budget), False)
        if isinstance(f, (UnbEx, UnbAll)):
            raise EvaluationError(f"unbounded quantifier in {f}; only B formulas are evaluated")
        # the remaining nodes are duals of the cases above
        return self.eval(negate(f)).negate()


def eval_truth(f: Formula, assign: Assignment, budget: Optional[Budget] = None) -> Truth:
    """
    Evaluate a B formula.

    Raises:
        EvaluationError: If f is not in B or a free variable is unassigned.
    """
    if not in_b(f):
        raise EvaluationError(f"{f} is not in class B")
    result = _Evaluator(assign, budget or Budget()).eval(f)
    log.debug("%s evaluates to %s", f, result.value)
    return result


def eval_sequent(s: Iterable[Formula], assign: Assignment, budget: Optional[Budget] = None) -> Truth:
    """Disjunction of the members; the empty sequent is false."""
    return _or(eval_truth(f, assign, budget) for f in s)
