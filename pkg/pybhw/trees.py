"""
Suitable Tree Module

Sets coded as well-founded trees of finite sequences of naturals. A tree codes
the set whose elements are coded by its immediate subtrees, so two trees code
the same set exactly when the root nodes of their disjoint union are bisimilar.

Classes:
    Finite: An explicit tree given by its nodes.
    NStar: The canonical tree n* of the natural number n.
    OmegaStar: The canonical tree omega* of the set of naturals; never expanded.
    Bisim: The bisimulation of a finite tree.
    Ranking: A strictly order-reversing labelling of tree nodes by ordinals.

Functions:
    subtree, oplus, iso, eq_star, mem_star, is_suitable
    alpha_tree, merge_family, enumerate_trees, parse_tree

Example::

    from pybhw.trees import NStar, Finite, eq_star, mem_star

    mem_star(NStar(2), NStar(5))                                  # True
    eq_star(NStar(2), Finite.of([(), (5,), (7,), (7, 3)]))         # True

Notes:
    - n* has 2**n nodes; operations that need explicit nodes refuse to expand
      beyond ``materialize_max`` and raise ``MaterializationLimit``.
    - omega* is handled through subtree(omega*, <n>) = n*.
"""

import functools
import itertools
import json
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Set, Tuple

from .config import Settings
from .exceptions import MaterializationLimit, NotSuitable, TreeError, TreeSyntaxError
from .ordinals import OMEGA, ZERO, OrdTerm, from_int, nf_sum, render

log = logging.getLogger(__name__)

Seq = Tuple[int, ...]

_DEFAULTS = Settings()


class TreeSet:
    """Base class of tree codes."""

    __slots__ = ()


@dataclass(frozen=True)
class Finite(TreeSet):
    """
    An explicit tree. Construction does not validate; ``Finite.of`` does.

    Attributes:
        nodes: The set of sequences in the tree.
    """

    nodes: FrozenSet[Seq]

    @classmethod
    def of(cls, nodes: Iterable[Iterable[int]]) -> "Finite":
        """
        Raises:
            NotSuitable: If the nodes are empty, lack the root or are not
                closed under initial segments.
        """
        tree = cls(frozenset(tuple(n) for n in nodes))
        reason = _unsuitable(tree.nodes)
        if reason:
            raise NotSuitable(reason)
        return tree

    def __str__(self) -> str:
        return json.dumps(sorted(list(n) for n in self.nodes))


@dataclass(frozen=True)
class NStar(TreeSet):
    n: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise TreeError(f"n* needs a natural number, got {self.n}")

    def __str__(self) -> str:
        return f"n*:{self.n}"


@dataclass(frozen=True)
class OmegaStar(TreeSet):
    def __str__(self) -> str:
        return "omega*"


LEAF = Finite(frozenset([()]))
OMEGA_STAR = OmegaStar()


def _unsuitable(nodes: FrozenSet[Seq]) -> str:
    if not nodes:
        return "tree is empty"
    if () not in nodes:
        return "tree lacks the root <>"
    for node in nodes:
        if any(k < 0 for k in node):
            return f"node {list(node)} has a negative label"
        if node and node[:-1] not in nodes:
            return f"node {list(node)} has no parent in the tree"
    return ""


def is_suitable(t: TreeSet) -> bool:
    """Finite trees are checked; n* and omega* are suitable by construction."""
    if isinstance(t, Finite):
        return not _unsuitable(t.nodes)
    return True


# Materialization


@functools.lru_cache(maxsize=64)
def nstar_nodes(n: int) -> FrozenSet[Seq]:
    """Nodes of n* = {<>} with <k>*s for k < n and s in k*."""
    nodes: Set[Seq] = {()}
    for k in range(n):
        nodes.update((k,) + s for s in nstar_nodes(k))
    return frozenset(nodes)


def node_count(t: TreeSet) -> Optional[int]:
    """Number of nodes, None for omega*."""
    if isinstance(t, Finite):
        return len(t.nodes)
    if isinstance(t, NStar):
        return 2**t.n
    return None


def materialize(t: TreeSet, limit: int = _DEFAULTS.materialize_max) -> Finite:
    """
    Raises:
        MaterializationLimit: For omega* or a tree with more than limit nodes.
    """
    count = node_count(t)
    if count is None or count > limit:
        raise MaterializationLimit(str(t), limit)
    if isinstance(t, Finite):
        return t
    return Finite(nstar_nodes(t.n))


# Navigation


def child_labels(t: TreeSet) -> Iterator[int]:
    """Labels k with <k> in t, ascending; infinite for omega*."""
    if isinstance(t, Finite):
        return iter(sorted(node[0] for node in t.nodes if len(node) == 1))
    if isinstance(t, NStar):
        return iter(range(t.n))
    return itertools.count()


def subtree(t: TreeSet, sigma: Seq) -> TreeSet:
    """
    T^sigma = {tau | sigma * tau in T}.

    Raises:
        TreeError: If sigma is not a node of t.
    """
    sigma = tuple(sigma)
    if not sigma:
        return t
    if isinstance(t, Finite):
        if sigma not in t.nodes:
            raise TreeError(f"{list(sigma)} is not a node of the tree")
        k = len(sigma)
        return Finite(frozenset(node[k:] for node in t.nodes if node[:k] == sigma))
    head, rest = sigma[0], sigma[1:]
    if isinstance(t, NStar) and head >= t.n:
        raise TreeError(f"{list(sigma)} is not a node of {t}")
    return subtree(NStar(head), rest)


def children(t: TreeSet) -> Iterator[TreeSet]:
    for k in child_labels(t):
        yield subtree(t, (k,))


def height(t: TreeSet) -> OrdTerm:
    """Height of the root: 0 for a leaf, omega for omega*."""
    if isinstance(t, OmegaStar):
        return OMEGA
    if isinstance(t, NStar):
        return from_int(t.n)
    return from_int(max(len(node) for node in t.nodes))


def oplus(s: TreeSet, t: TreeSet, limit: int = _DEFAULTS.materialize_max) -> Finite:
    """S + T := {<>} with <0>*sigma for sigma in S and <1>*tau for tau in T."""
    left, right = materialize(s, limit), materialize(t, limit)
    nodes = {()}
    nodes.update((0,) + n for n in left.nodes)
    nodes.update((1,) + n for n in right.nodes)
    return Finite(frozenset(nodes))


# Bisimulation


class PartitionRefinement:
    """
    Partition refinement over hashable items. Every item starts in one block;
    ``refine(S)`` splits each block A into A & S and A - S.
    """

    def __init__(self, items: Iterable[Seq]) -> None:
        first = set(items)
        self.sets: Dict[int, Set[Seq]] = {id(first): first}
        self.partition: Dict[Seq, Set[Seq]] = {x: first for x in first}

    def refine(self, splitter: Iterable[Seq]) -> List[Tuple[int, int]]:
        hit: Dict[int, Set[Seq]] = {}
        output = []
        for x in splitter:
            if x in self.partition:
                block = self.partition[x]
                hit.setdefault(id(block), set()).add(x)
        for key, inside in hit.items():
            block = self.sets[key]
            if inside != block:
                self.sets[id(inside)] = inside
                for x in inside:
                    self.partition[x] = inside
                block -= inside
                output.append((id(inside), id(block)))
        return output

    def blocks(self) -> List[Set[Seq]]:
        return list(self.sets.values())


@dataclass(frozen=True)
class Bisim:
    """
    The greatest relation X on the nodes of a tree with (s, t) in X iff every
    child of s is related to some child of t and vice versa.

    It is an equivalence relation; ``block`` numbers its classes.
    """

    tree: Finite
    block: Mapping[Seq, int] = field(repr=False)

    def related(self, s: Seq, t: Seq) -> bool:
        return self.block[tuple(s)] == self.block[tuple(t)]

    def __contains__(self, pair: Tuple[Seq, Seq]) -> bool:
        s, t = pair
        return tuple(s) in self.block and tuple(t) in self.block and self.related(s, t)

    @property
    def pairs(self) -> FrozenSet[Tuple[Seq, Seq]]:
        classes: Dict[int, List[Seq]] = {}
        for node, b in self.block.items():
            classes.setdefault(b, []).append(node)
        return frozenset((s, t) for members in classes.values() for s in members for t in members)

    @property
    def classes(self) -> int:
        return len(set(self.block.values()))


def iso(t: TreeSet, limit: int = _DEFAULTS.materialize_max) -> Bisim:
    """
    The unique X with Iso(X, T), as the coarsest partition of the nodes in
    which nodes of one block have children in the same blocks.
    """
    tree = materialize(t, limit)
    parents: Dict[Seq, Seq] = {n: n[:-1] for n in tree.nodes if n}
    refinement = PartitionRefinement(tree.nodes)
    rounds = 0
    changed = True
    while changed:
        changed = False
        rounds += 1
        for block in [set(b) for b in refinement.blocks()]:
            having_child = {parents[n] for n in block if n in parents}
            if refinement.refine(having_child):
                changed = True
    blocks = sorted((sorted(b) for b in refinement.blocks()), key=lambda b: b[0])
    numbering = {node: i for i, members in enumerate(blocks) for node in members}
    log.debug("bisimulation on %d nodes: %d classes after %d rounds", len(tree.nodes), len(blocks), rounds)
    return Bisim(tree, numbering)


def codes_natural(t: TreeSet, limit: int = _DEFAULTS.materialize_max) -> Optional[int]:
    """n when t =* n*, otherwise None."""
    if isinstance(t, NStar):
        return t.n
    if isinstance(t, OmegaStar):
        return None
    n = len(max(t.nodes, key=len))
    # a tree =* n* has at least the 2**n nodes of n*
    if len(t.nodes) < 2**n:
        return None
    return n if eq_star(t, NStar(n), limit) else None


def eq_star(s: TreeSet, t: TreeSet, limit: int = _DEFAULTS.materialize_max) -> bool:
    """S =* T iff (<0>, <1>) is in the bisimulation of S + T."""
    if isinstance(s, OmegaStar) or isinstance(t, OmegaStar):
        if isinstance(s, OmegaStar) and isinstance(t, OmegaStar):
            return True
        # omega* has infinitely many pairwise distinct immediate subtrees
        return False
    if isinstance(s, NStar) and isinstance(t, NStar):
        return s.n == t.n
    if height(s) != height(t):
        return False
    return ((0,), (1,)) in iso(oplus(s, t, limit), limit)


def mem_star(s: TreeSet, t: TreeSet, limit: int = _DEFAULTS.materialize_max) -> bool:
    """S in* T iff S =* T^<n> for some n."""
    if isinstance(t, OmegaStar):
        return codes_natural(s, limit) is not None
    if isinstance(t, NStar):
        n = codes_natural(s, limit)
        return n is not None and n < t.n
    return any(eq_star(s, child, limit) for child in children(t))


# Alpha trees


@dataclass(frozen=True)
class Ranking:
    """
    Ordinal labels of tree nodes, decreasing along every branch.

    Either ``table`` lists the labels of a finite tree or ``rule`` computes the
    label of any node of a canonical tree.
    """

    table: Mapping[Seq, OrdTerm] = field(default_factory=dict)
    rule: Optional[Callable[[Seq], OrdTerm]] = field(default=None, compare=False)

    def __call__(self, sigma: Seq) -> OrdTerm:
        sigma = tuple(sigma)
        if sigma in self.table:
            return self.table[sigma]
        if self.rule is not None:
            return self.rule(sigma)
        raise TreeError(f"{list(sigma)} is not ranked")

    @property
    def root(self) -> OrdTerm:
        return self(())

    def to_dict(self) -> Dict[str, str]:
        return {" ".join(map(str, k)): render(v) for k, v in sorted(self.table.items())}


def _canonical_ranking(t: TreeSet) -> Ranking:
    top = height(t)
    return Ranking(rule=lambda s: from_int(s[-1]) if s else top)


def is_ranking(t: TreeSet, f: Ranking, alpha: OrdTerm, limit: int = _DEFAULTS.materialize_max) -> bool:
    """Does f decrease along the edges of t and stay below alpha?"""
    tree = materialize(t, limit)
    for node in tree.nodes:
        if not f(node) < alpha:
            return False
        if node and not f(node) < f(node[:-1]):
            return False
    return True


def _height_ranking(tree: Finite) -> Dict[Seq, OrdTerm]:
    heights: Dict[Seq, int] = {}
    for node in sorted(tree.nodes, key=len, reverse=True):
        heights.setdefault(node, 0)
        if node:
            parent = node[:-1]
            heights[parent] = max(heights.get(parent, 0), heights[node] + 1)
    return {node: from_int(h) for node, h in heights.items()}


def _stage_ranking(tree: Finite, alpha: OrdTerm) -> Optional[Dict[Seq, OrdTerm]]:
    """
    g(beta) = nodes all of whose children lie in earlier stages; f(sigma) is
    the least beta with sigma in g(beta).
    """
    kids: Dict[Seq, List[Seq]] = {n: [] for n in tree.nodes}
    for n in tree.nodes:
        if n:
            kids[n[:-1]].append(n)
    ranked: Dict[Seq, OrdTerm] = {}
    beta = 0
    while len(ranked) < len(tree.nodes):
        stage = from_int(beta)
        if not stage < alpha:
            return None
        earlier = set(ranked)
        new = [n for n in tree.nodes if n not in ranked and all(c in earlier for c in kids[n])]
        for n in new:
            ranked[n] = stage
        beta += 1
    return ranked


def alpha_tree(
    t: TreeSet,
    alpha: OrdTerm,
    method: str = "height",
    limit: int = _DEFAULTS.materialize_max,
) -> Optional[Ranking]:
    """
    A ranking of t into the ordinals below alpha, or None when t is not an
    alpha-tree.

    Args:
        method: ``"height"`` labels each node with the height of its subtree;
            ``"stages"`` runs the stage recursion g. Both give the least
            ranking.
    """
    if method not in ("height", "stages"):
        raise ValueError(f"unknown method {method!r}")
    if isinstance(t, OmegaStar) or (isinstance(t, NStar) and 2**t.n > limit):
        return _canonical_ranking(t) if height(t) < alpha else None
    tree = materialize(t, limit)
    if method == "height":
        table = _height_ranking(tree)
        return Ranking(table) if table[()] < alpha else None
    table = _stage_ranking(tree, alpha)
    return Ranking(table) if table is not None else None


def merge_family(
    family: Mapping[Tuple[int, int], TreeSet],
    alpha: OrdTerm,
    l0: int,
    rankings: Optional[Mapping[Tuple[int, int], Ranking]] = None,
    limit: int = _DEFAULTS.materialize_max,
) -> Tuple[Finite, Ranking]:
    """
    Merge a family of (alpha + l0)-trees under one root.

    The child indexed (n, k) hangs below the label 2**n * 3**k. The root is
    labelled alpha + l0 and every other node keeps its label from the child.

    Raises:
        NotSuitable: If a child is not an (alpha + l0)-tree or its given
            ranking is not one.
    """
    top = nf_sum(alpha, from_int(l0))
    nodes: Set[Seq] = {()}
    table: Dict[Seq, OrdTerm] = {(): top}
    for (n, k), child in sorted(family.items()):
        if n < 0 or k < 0:
            raise NotSuitable(f"family index ({n}, {k}) is negative")
        f = (rankings or {}).get((n, k)) or alpha_tree(child, top, limit=limit)
        if f is None or not is_ranking(child, f, top, limit):
            raise NotSuitable(f"member ({n}, {k}) is not a {render(top)}-tree")
        label = 2**n * 3**k
        for node in materialize(child, limit).nodes:
            nodes.add((label,) + node)
            table[(label,) + node] = f(node)
    return Finite(frozenset(nodes)), Ranking(table)


# Enumeration and literals


@functools.lru_cache(maxsize=None)
def _shapes(max_nodes: int, labels: int) -> Tuple[FrozenSet[Seq], ...]:
    if max_nodes < 1:
        return ()
    out = []
    for forest in _forests(0, max_nodes - 1, labels):
        nodes: Set[Seq] = {()}
        for label, child in forest:
            nodes.update((label,) + s for s in child)
        out.append(frozenset(nodes))
    return tuple(out)


def _forests(start: int, budget: int, labels: int) -> Iterator[Tuple[Tuple[int, FrozenSet[Seq]], ...]]:
    yield ()
    for label in range(start, labels):
        for child in _shapes(budget, labels):
            for rest in _forests(label + 1, budget - len(child), labels):
                yield ((label, child),) + rest


def enumerate_trees(max_nodes: int, labels: int) -> Iterator[Finite]:
    """Every tree with at most max_nodes nodes and child labels below labels, once."""
    for nodes in _shapes(max_nodes, labels):
        yield Finite(nodes)


def hf_code(t: TreeSet, limit: int = _DEFAULTS.materialize_max) -> FrozenSet:
    """The hereditarily finite set coded by a tree, as nested frozensets."""
    tree = materialize(t, limit)

    def code(node: Seq) -> FrozenSet:
        return frozenset(code(c) for c in tree.nodes if len(c) == len(node) + 1 and c[:-1] == node)

    return code(())


def parse_tree(text: str) -> TreeSet:
    """
    A tree literal: ``n*:k``, ``omega*`` or a JSON list of node lists.

    Raises:
        TreeSyntaxError: If text is none of these.
        NotSuitable: If a node list is not a suitable tree.
    """
    text = text.strip()
    if text == "omega*":
        return OMEGA_STAR
    if text.startswith("n*:"):
        digits = text[3:]
        if not digits.isdigit():
            raise TreeSyntaxError(text, "expected n*:<natural>")
        return NStar(int(digits))
    if text.startswith("["):
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as e:
            raise TreeSyntaxError(text, str(e)) from e
        if not isinstance(raw, list) or not all(
            isinstance(n, list) and all(isinstance(k, int) for k in n) for n in raw
        ):
            raise TreeSyntaxError(text, "expected a list of lists of naturals")
        return Finite.of(raw)
    raise TreeSyntaxError(text, "expected n*:k, omega* or a JSON node list")
