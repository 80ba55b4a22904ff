"""
Self-test Module

Property suites run by ``bhw selftest``. Each suite enumerates a finite
universe (ordinal terms, formulas, trees) up to a size budget, checks a law
on every instance and reports the number of checks and any violations.

Suites:
    order_laws: Trichotomy, antisymmetry and transitivity of ``compare``.
    psi_monotone: psi(a) < psi(b) for a < b with a in C(b, 0).
    in_c_oracle: ``in_C`` against saturation of the closure conditions.
    rank_lemma: Rank identities and inequalities on generated formulas.
    sigma_monotone: H_sigma membership grows with sigma.
    collapsing_order: psi(omega_n(Omega+1) + omega^(Omega+d)) below
        psi(omega_(n+1)(Omega+1)) and the bound H_sigma(0) cap Omega below
        psi(sigma+1).
    tree_laws: =* and in* against hereditarily finite codes on every small
        tree, transport along =*, n* membership and agreement of the two
        alpha-tree algorithms.
    eval_coherence: F and not F are never both true; quantifier-free values
        do not depend on the budget.

Example::

    from pybhw.selftest import run_suites

    results = run_suites(quick=True)
    all(r.ok for r in results)
"""

import functools
import itertools
import logging
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from .config import Settings
from .formulas import (
    EMPTY,
    BoundedAll,
    BoundedEx,
    Formula,
    MAtom,
    MemberOf,
    NegMAtom,
    NotMemberOf,
    Or,
    And,
    RankedAll,
    RankedEx,
    RelAll,
    RelApp,
    RelEx,
    UnbAll,
    UnbEx,
    Var,
    in_b,
    instantiate,
    is_delta0,
    level,
    negate,
    rank,
)
from .operators import Sigma, h_mem
from .ordinals import (
    BIG_OMEGA,
    OMEGA,
    ONE,
    ZERO,
    BigOmega,
    OrdTerm,
    Psi,
    WPow,
    compare,
    enumerate_upto,
    from_int,
    in_C,
    nf_sum,
    omega_pow,
    omega_times,
    omega_tower,
    psi,
    render,
    succ,
)
from .tags import Comparison, Truth
from .trees import (
    OMEGA_STAR,
    Finite,
    NStar,
    alpha_tree,
    children,
    enumerate_trees,
    eq_star,
    hf_code,
    mem_star,
)
from .truth import Budget, eval_truth

log = logging.getLogger(__name__)

_DEFAULTS = Settings()

# most violations kept per suite
_EXAMPLES_MAX = 5

_OPPOSITE = {
    Comparison.LESS: Comparison.GREATER,
    Comparison.EQUAL: Comparison.EQUAL,
    Comparison.GREATER: Comparison.LESS,
}


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    violations: int = 0
    examples: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def check(self, holds: bool, example: Callable[[], str]) -> None:
        self.checked += 1
        if not holds:
            self.violations += 1
            if len(self.examples) < _EXAMPLES_MAX:
                self.examples.append(example())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.name,
            "ok": self.ok,
            "checked": self.checked,
            "violations": self.violations,
            "examples": list(self.examples),
        }


# Ordinals


def order_laws(max_size: int = 7, triples: int = 20000, seed: int = 0) -> SuiteResult:
    """
    Every pair is compared both ways; the sorted order is checked along
    neighbours and transitivity on a seeded sample of triples.
    """
    result = SuiteResult("order_laws")
    terms = list(enumerate_upto(max_size))
    for a, b in itertools.combinations(terms, 2):
        ab, ba = compare(a, b), compare(b, a)
        result.check(ab is _OPPOSITE[ba], lambda: f"{render(a)} vs {render(b)}: {ab.value}/{ba.value}")
        result.check((ab is Comparison.EQUAL) == (a == b), lambda: f"{render(a)} = {render(b)}")
    for a in terms:
        result.check(compare(a, a) is Comparison.EQUAL, lambda: f"{render(a)} is not equal to itself")
    ordered = sorted(terms, key=functools.cmp_to_key(lambda x, y: _sign(compare(x, y))))
    for a, b in zip(ordered, ordered[1:]):
        result.check(compare(a, b) is Comparison.LESS, lambda: f"sorted neighbours {render(a)}, {render(b)}")
    rng = random.Random(seed)
    for _ in range(triples if len(terms) > 2 else 0):
        a, b, c = rng.sample(terms, 3)
        if compare(a, b) is Comparison.LESS and compare(b, c) is Comparison.LESS:
            result.check(compare(a, c) is Comparison.LESS, lambda: f"{render(a)} < {render(b)} < {render(c)}")
    return result


def _sign(c: Comparison) -> int:
    return {Comparison.LESS: -1, Comparison.EQUAL: 0, Comparison.GREATER: 1}[c]


def psi_monotone(max_size: int = 5) -> SuiteResult:
    result = SuiteResult("psi_monotone")
    # psi is only defined on arguments in C of themselves
    terms = [a for a in enumerate_upto(max_size) if in_C(a, a)]
    for a in terms:
        result.check(compare(psi(a), BIG_OMEGA) is Comparison.LESS, lambda: f"psi({render(a)}) >= Omega")
        result.check(omega_pow(psi(a)) == psi(a), lambda: f"psi({render(a)}) is not an epsilon number")
        for b in terms:
            ab = compare(a, b)
            if ab is Comparison.GREATER:
                continue
            pab = compare(psi(a), psi(b))
            result.check(pab is not Comparison.GREATER, lambda: f"psi({render(a)}) > psi({render(b)})")
            if ab is Comparison.LESS and in_C(a, b):
                result.check(pab is Comparison.LESS, lambda: f"psi({render(a)}) not below psi({render(b)})")
    return result


def _components(t: OrdTerm) -> Iterator[OrdTerm]:
    yield t
    for p in t.terms:
        yield OrdTerm((p,))
        if isinstance(p, WPow):
            yield from _components(p.exp)
        elif isinstance(p, Psi):
            yield from _components(p.arg)


def in_c_saturated(t: OrdTerm, a: OrdTerm) -> bool:
    """
    Membership of t in C(a, 0) by saturation: starting from 0 and Omega,
    add sums, omega-powers and psi(c) for c < a among the subterms of t
    until nothing changes.
    """
    pool = set(_components(t))
    known = {ZERO, BIG_OMEGA}

    def derivable(s: OrdTerm) -> bool:
        if len(s.terms) > 1:
            return all(OrdTerm((p,)) in known for p in s.terms)
        (p,) = s.terms
        if isinstance(p, BigOmega):
            return True
        if isinstance(p, WPow):
            return p.exp in known
        return p.arg in known and compare(p.arg, a) is Comparison.LESS

    changed = True
    while changed:
        changed = False
        for s in pool - known:
            if derivable(s):
                known.add(s)
                changed = True
    return t in known


def in_c_oracle(max_size: int = 5) -> SuiteResult:
    result = SuiteResult("in_c_oracle")
    terms = list(enumerate_upto(max_size))
    for t in terms:
        for a in terms:
            fast = in_C(t, a)
            result.check(fast == in_c_saturated(t, a), lambda: f"in_C({render(t)}, {render(a)}) = {fast}")
    return result


# Formulas

_LEVEL_POOL = (ZERO, ONE, OMEGA, succ(OMEGA))


def _atoms() -> Tuple[Formula, ...]:
    x, a = Var("x"), Var("a")
    out: List[Formula] = [MemberOf(x, a), NotMemberOf(x, a), MemberOf(a, x), RelApp("U", x)]
    for lvl in _LEVEL_POOL:
        out += [MAtom(lvl, x), NegMAtom(lvl, x)]
    return tuple(out)


def _wrap(body: Formula) -> Iterator[Formula]:
    yield BoundedEx("x", Var("a"), body)
    yield BoundedAll("x", EMPTY, body)
    for lvl in (ONE, succ(OMEGA)):
        yield RankedEx(lvl, "x", body)
        yield RankedAll(lvl, "x", body)
    yield UnbEx("x", body)
    yield UnbAll("x", body)
    yield RelEx("U", body)
    yield RelAll("U", body)


def _of_size(n: int) -> Iterator[Formula]:
    if n < 1:
        return
    if n == 1:
        yield from _atoms()
        return
    for body in formulas_of_size(n - 1):
        yield from _wrap(body)
    for k in range(1, n - 1):
        for left in formulas_of_size(k):
            for right in formulas_of_size(n - 1 - k):
                yield Or(left, right)
                yield And(left, right)


@functools.lru_cache(maxsize=None)
def formulas_of_size(n: int) -> Tuple[Formula, ...]:
    """Generated formulas with exactly n AST nodes over a fixed atom and level pool."""
    return tuple(_of_size(n))


def generated_formulas(max_size: int) -> Iterator[Formula]:
    """Every generated formula up to max_size nodes; the largest size is streamed, not cached."""
    for n in range(1, max_size):
        yield from formulas_of_size(n)
    yield from _of_size(max_size)


def rank_lemma(max_size: int = 6) -> SuiteResult:
    """
    rk(F) = rk(not F); rk(F) < omega*lev(F) + omega below Omega and
    rk(F) < Omega + omega above; rk(F) < Omega iff F is in B; and the
    quantifier inequalities for the minor formulas of each rule.
    """
    result = SuiteResult("rank_lemma")
    a = Var("a")
    for f in generated_formulas(max_size):
        r = rank(f)
        result.check(rank(negate(f)) == r, lambda: f"rk of {f} and its negation differ")
        below = compare(r, BIG_OMEGA) is Comparison.LESS
        result.check(below == in_b(f), lambda: f"rk({f}) = {render(r)} against class B")
        cap = nf_sum(omega_times(level(f)), OMEGA) if below else nf_sum(BIG_OMEGA, OMEGA)
        result.check(compare(r, cap) is Comparison.LESS, lambda: f"rk({f}) not below {render(cap)}")
        if isinstance(f, RankedEx):
            minor = And(MAtom(f.level, a), instantiate(f, a))
            result.check(rank(minor) < r, lambda: f"minor of {f} is not of smaller rank")
            result.check(r < rank(UnbEx(f.var, f.body)), lambda: f"{f} not below its unbounded form")
        elif isinstance(f, BoundedEx):
            minor = And(MemberOf(a, f.bound), instantiate(f, a))
            result.check(rank(minor) < r, lambda: f"minor of {f} is not of smaller rank")
        elif isinstance(f, UnbEx):
            minor = And(MAtom(ONE, a), instantiate(f, a))
            result.check(rank(minor) < r, lambda: f"minor of {f} is not of smaller rank")
        elif isinstance(f, RelEx):
            result.check(rank(instantiate(f, "V")) < r, lambda: f"instance of {f} is not of smaller rank")
    return result


# Operators and collapsing

_SIGMA_POOL = (ZERO, ONE, OMEGA, BIG_OMEGA, succ(BIG_OMEGA), omega_pow(succ(BIG_OMEGA)))


def sigma_monotone(max_size: int = 4) -> SuiteResult:
    result = SuiteResult("sigma_monotone")
    terms = list(enumerate_upto(max_size))
    generators = (frozenset(), frozenset((ONE,)), frozenset((OMEGA,)))
    for m in generators:
        for s, t in itertools.combinations(_SIGMA_POOL, 2):
            low, high = Sigma(s, m), Sigma(t, m)
            for x in terms:
                if h_mem(x, low):
                    result.check(h_mem(x, high), lambda: f"{render(x)} in {low} but not in {high}")
    return result


def collapsing_order(max_n: int = 3, max_delta: int = 3, max_size: int = 4) -> SuiteResult:
    result = SuiteResult("collapsing_order")
    base = succ(BIG_OMEGA)
    for n in range(1, max_n + 1):
        upper = psi(omega_tower(n + 1, base))
        for d in range(max_delta + 1):
            arg = nf_sum(omega_tower(n, base), omega_pow(nf_sum(BIG_OMEGA, from_int(d))))
            result.check(
                compare(psi(arg), upper) is Comparison.LESS,
                lambda: f"psi({render(arg)}) not below {render(upper)}",
            )
    terms = list(enumerate_upto(max_size))
    for s in _SIGMA_POOL:
        cap = psi(succ(s))
        op = Sigma(s)
        for x in terms:
            if compare(x, BIG_OMEGA) is Comparison.LESS and h_mem(x, op):
                result.check(
                    compare(x, cap) is Comparison.LESS,
                    lambda: f"{render(x)} in {op} is not below {render(cap)}",
                )
    return result


# Trees


def tree_laws(max_nodes: int = 6, labels: int = 4, naturals: int = 6) -> SuiteResult:
    """
    Exhaustive over every tree with at most max_nodes nodes and labels below
    labels, grouped by hereditarily finite code. Within a group every tree
    is =* its first member and across groups no representatives are. Every
    tree is in* each representative, and each representative in* it, exactly
    when the codes say so, which gives transport of in* along =* on both
    sides. S in* T iff S =* some immediate subtree of T, and S in* omega*
    iff S codes a natural. n* membership is exact below naturals, and the
    two alpha-tree algorithms agree on every tree.
    """
    result = SuiteResult("tree_laws")
    groups: Dict[FrozenSet, List[Finite]] = {}
    for t in enumerate_trees(max_nodes, labels):
        groups.setdefault(hf_code(t), []).append(t)
    reps = [(code, members[0]) for code, members in groups.items()]
    natural_codes = {hf_code(NStar(k)) for k in range(max_nodes)}
    log.debug("tree_laws: %d trees in %d classes", sum(map(len, groups.values())), len(reps))
    for code, members in groups.items():
        first = members[0]
        for t in members:
            result.check(eq_star(t, first), lambda: f"{t} is not =* {first}")
            result.check(mem_star(t, OMEGA_STAR) == (code in natural_codes), lambda: f"in* omega* on {t}")
            for other_code, other in reps:
                result.check(mem_star(t, other) == (code in other_code), lambda: f"in* on {t}, {other}")
                result.check(mem_star(other, t) == (other_code in code), lambda: f"in* on {other}, {t}")
    for code_s, s in reps:
        for code_t, t in reps:
            result.check(eq_star(s, t) == (code_s == code_t), lambda: f"=* on {s}, {t}")
            via_children = any(eq_star(s, c) for c in children(t))
            result.check(mem_star(s, t) == via_children, lambda: f"in* on {s}, {t} against its subtrees")
    for m in range(naturals):
        for n in range(naturals):
            result.check(mem_star(NStar(m), NStar(n)) == (m < n), lambda: f"{m}* in* {n}*")
    alphas = [from_int(k) for k in range(1, max_nodes + 1)] + [OMEGA, succ(OMEGA)]
    for members in groups.values():
        for t in members:
            for alpha in alphas:
                by_height = alpha_tree(t, alpha, "height")
                by_stages = alpha_tree(t, alpha, "stages")
                same = (by_height is None) == (by_stages is None)
                if same and by_height is not None:
                    same = by_height.to_dict() == by_stages.to_dict()
                result.check(same, lambda: f"alpha-tree methods disagree on {t} at {render(alpha)}")
    result.check(alpha_tree(OMEGA_STAR, succ(OMEGA)) is not None, lambda: "omega* is not an (omega+1)-tree")
    return result


def _path(height: int) -> Finite:
    return Finite.of([(0,) * k for k in range(height + 1)])


# budgets the quantifier-free part of eval_coherence compares
_SMALL_BUDGET = Budget(tree_size_max=4, witness_max=2, materialize_max=64, exact_rank=2)
_LARGE_BUDGET = Budget.from_settings(_DEFAULTS)


def eval_coherence(samples: int = 1000, max_size: int = 4, seed: int = 0) -> SuiteResult:
    """
    F and not F are never both true. Quantifier-free formulas are two-valued
    and take the same value under a small and a large budget, also on tall
    thin trees whose heights exceed what the small budget can expand as n*.
    """
    result = SuiteResult("eval_coherence")
    pool = [f for f in generated_formulas(max_size) if in_b(f)]
    trees = list(enumerate_trees(4, 3)) + [_path(h) for h in (5, 6, 13)] + [NStar(5), NStar(6)]
    relations = [NStar(2), OMEGA_STAR, Finite.of([(), (0,), (1,), (1, 0)])]
    rng = random.Random(seed)
    for _ in range(samples if pool else 0):
        f = rng.choice(pool)
        assign = {"a": rng.choice(trees), "x": rng.choice(trees), "U": rng.choice(relations)}
        value, dual = eval_truth(f, assign, _LARGE_BUDGET), eval_truth(negate(f), assign, _LARGE_BUDGET)
        both = value is Truth.TRUE and dual is Truth.TRUE
        result.check(not both, lambda: f"{f} and its negation both hold")
        if is_delta0(f) and _quantifier_free(f):
            result.check(value is not Truth.UNKNOWN, lambda: f"{f} is undetermined")
            small = eval_truth(f, assign, _SMALL_BUDGET)
            result.check(small is value, lambda: f"{f} changes value with the budget")
    return result


def _quantifier_free(f: Formula) -> bool:
    if isinstance(f, (Or, And)):
        return _quantifier_free(f.left) and _quantifier_free(f.right)
    return not hasattr(f, "body")


# Runner


def run_suites(
    quick: bool = False, seed: int = _DEFAULTS.seed, only: Optional[Sequence[str]] = None
) -> List[SuiteResult]:
    """
    Run every suite, or those named in ``only``. ``quick`` uses the reduced
    budgets of the unit tests.
    """
    suites: Dict[str, Callable[[], SuiteResult]] = {
        "order_laws": lambda: order_laws(4 if quick else 7, 2000 if quick else 20000, seed),
        "psi_monotone": lambda: psi_monotone(3 if quick else 5),
        "in_c_oracle": lambda: in_c_oracle(3 if quick else 5),
        "rank_lemma": lambda: rank_lemma(3 if quick else 6),
        "sigma_monotone": lambda: sigma_monotone(3 if quick else 4),
        "collapsing_order": lambda: collapsing_order(),
        "tree_laws": lambda: tree_laws(4 if quick else 6, 3 if quick else 4),
        "eval_coherence": lambda: eval_coherence(100 if quick else 1000, 3 if quick else 4, seed),
    }
    results = []
    for name, run in suites.items():
        if only and name not in only:
            continue
        r = run()
        log.info("suite %s: %d checks, %d violations", name, r.checked, r.violations)
        results.append(r)
    return results


SUITES = (
    "order_laws",
    "psi_monotone",
    "in_c_oracle",
    "rank_lemma",
    "sigma_monotone",
    "collapsing_order",
    "tree_laws",
    "eval_coherence",
)
