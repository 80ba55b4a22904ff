"""
Sequent Module

Finite sets of formulas read disjunctively. Membership is decided up to
renaming of bound variables, so ``(ex x (in x a))`` and ``(ex y (in y a))``
are the same member.

Example::

    from pybhw.sequent import Sequent

    s = Sequent.of(f, negate(f))
    s.contains(f)                 # True
    s.without(f).union([g])
"""

from typing import Dict, FrozenSet, Hashable, Iterable, Iterator, List, Optional

from .formulas import Formula, alpha_key, free_rels, free_vars, length, params
from .ordinals import OrdTerm


class Sequent:
    """
    An immutable finite set of formulas keyed by alpha equivalence.

    Iteration yields one representative per class in insertion order.
    """

    __slots__ = ("_members", "_hash")

    def __init__(self, formulas: Iterable[Formula] = ()) -> None:
        members: Dict[Hashable, Formula] = {}
        for f in formulas:
            members.setdefault(alpha_key(f), f)
        self._members = members
        self._hash: Optional[int] = None

    @classmethod
    def of(cls, *formulas: Formula) -> "Sequent":
        return cls(formulas)

    def __iter__(self) -> Iterator[Formula]:
        return iter(self._members.values())

    def __len__(self) -> int:
        return len(self._members)

    def __contains__(self, f: object) -> bool:
        return isinstance(f, Formula) and alpha_key(f) in self._members

    def contains(self, f: Formula) -> bool:
        return f in self

    def keys(self) -> FrozenSet[Hashable]:
        return frozenset(self._members)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Sequent):
            return NotImplemented
        return self._members.keys() == other._members.keys()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._members))
        return self._hash

    def __repr__(self) -> str:
        return f"Sequent({[str(f) for f in self]})"

    def __str__(self) -> str:
        return ", ".join(str(f) for f in self)

    def union(self, other: Iterable[Formula]) -> "Sequent":
        return Sequent(list(self) + list(other))

    def __or__(self, other: Iterable[Formula]) -> "Sequent":
        return self.union(other)

    def add(self, *formulas: Formula) -> "Sequent":
        return self.union(formulas)

    def without(self, *formulas: Formula) -> "Sequent":
        drop = {alpha_key(f) for f in formulas}
        return Sequent(f for k, f in self._members.items() if k not in drop)

    def issubset(self, other: "Sequent", extra: Iterable[Formula] = ()) -> bool:
        """Is self contained in other together with the extra formulas?"""
        allowed = set(other._members) | {alpha_key(f) for f in extra}
        return all(k in allowed for k in self._members)

    def missing_from(self, other: "Sequent", extra: Iterable[Formula] = ()) -> List[Formula]:
        """Members of self not covered by other plus extra."""
        allowed = set(other._members) | {alpha_key(f) for f in extra}
        return [f for k, f in self._members.items() if k not in allowed]

    def params(self) -> FrozenSet[OrdTerm]:
        out: FrozenSet[OrdTerm] = frozenset()
        for f in self:
            out |= params(f)
        return out

    def free_vars(self) -> FrozenSet[str]:
        out: FrozenSet[str] = frozenset()
        for f in self:
            out |= free_vars(f)
        return out

    def free_rels(self) -> FrozenSet[str]:
        out: FrozenSet[str] = frozenset()
        for f in self:
            out |= free_rels(f)
        return out

    def max_length(self) -> int:
        return max((length(f) for f in self), default=0)


EMPTY_SEQUENT = Sequent()
