"""
Derivation Operator Module

Operators that control which ordinals may occur in an infinitary derivation.
``Free(m)`` is the closure of {0, Omega} and the finite set m under sums,
omega-powers and decomposition into summands and exponents. ``Sigma(s, m)``
additionally closes under psi(xi) for xi <= s, which gives the operator
H_s[m]; with m empty its values are exactly C(s + 1, 0).

Example::

    from pybhw.operators import Free, Sigma, h_mem
    from pybhw.ordinals import ZERO, psi

    h_mem(psi(ZERO), Sigma(ZERO))         # True
    psi(ZERO) in Free()                   # False
"""

import functools
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, Iterator

from .ordinals import OrdTerm, Psi, WPow, ZERO, compare, in_C, max_ord, render, sorted_terms, succ
from .tags import Comparison


def psi_leaves(t: OrdTerm) -> Iterator[OrdTerm]:
    """The psi terms reached through sums and exponents, not inside psi arguments."""
    for p in t.terms:
        if isinstance(p, WPow):
            yield from psi_leaves(p.exp)
        elif isinstance(p, Psi):
            yield OrdTerm((p,))


def _leaf_set(m: Iterable[OrdTerm]) -> FrozenSet[OrdTerm]:
    out = set()
    for g in m:
        out.update(psi_leaves(g))
    return frozenset(out)


class DOperator:
    """Base class; members are tested with ``in``."""

    m: FrozenSet[OrdTerm]

    def __contains__(self, t: object) -> bool:
        return isinstance(t, OrdTerm) and h_mem(t, self)

    def extend(self, *ords: OrdTerm) -> "DOperator":
        raise NotImplementedError

    def within(self, other: "DOperator") -> bool:
        raise NotImplementedError

    def join(self, other: "DOperator") -> "DOperator":
        """The least operator of the two kinds that contains both."""
        sigmas = [op.sigma for op in (self, other) if isinstance(op, Sigma)]
        m = self.m | other.m
        if sigmas:
            return Sigma(max_ord(*sigmas), m)
        return Free(m)

    def _new(self, ords: Iterable[OrdTerm]) -> FrozenSet[OrdTerm]:
        return frozenset(t for t in ords if t not in self)


@dataclass(frozen=True)
class Free(DOperator):
    """H[m] for the least d-operator H."""

    m: FrozenSet[OrdTerm] = field(default_factory=frozenset)

    def extend(self, *ords: OrdTerm) -> "Free":
        new = self._new(ords)
        return Free(self.m | new) if new else self

    def within(self, other: DOperator) -> bool:
        return all(g in other for g in self.m)

    def __str__(self) -> str:
        return f"H[{', '.join(render(t) for t in sorted_terms(self.m))}]"


@dataclass(frozen=True)
class Sigma(DOperator):
    """H_sigma[m]."""

    sigma: OrdTerm = ZERO
    m: FrozenSet[OrdTerm] = field(default_factory=frozenset)

    def extend(self, *ords: OrdTerm) -> "Sigma":
        new = self._new(ords)
        return Sigma(self.sigma, self.m | new) if new else self

    def lift(self, sigma: OrdTerm) -> "Sigma":
        """The same generators under a larger (never smaller) sigma."""
        return Sigma(max_ord(self.sigma, sigma), self.m)

    def within(self, other: DOperator) -> bool:
        if not isinstance(other, Sigma):
            return False
        if compare(self.sigma, other.sigma) is Comparison.GREATER:
            return False
        return all(g in other for g in self.m)

    def __str__(self) -> str:
        gens = ", ".join(render(t) for t in sorted_terms(self.m))
        return f"H_{render(self.sigma)}[{gens}]"


@functools.lru_cache(maxsize=1 << 16)
def h_mem(t: OrdTerm, op: DOperator) -> bool:
    """
    Membership of t in op(empty).

    A term belongs when each of its psi leaves does: a leaf of a generator
    always does, and under ``Sigma(s, m)`` so does psi(xi) for a member
    xi <= s.
    """
    if isinstance(op, Sigma) and not op.m:
        return in_C(t, succ(op.sigma))
    generated = _leaf_set(op.m)
    for leaf in psi_leaves(t):
        if leaf in generated:
            continue
        if not isinstance(op, Sigma):
            return False
        xi = leaf.terms[0].arg
        if compare(xi, op.sigma) is Comparison.GREATER or not h_mem(xi, op):
            return False
    return True
