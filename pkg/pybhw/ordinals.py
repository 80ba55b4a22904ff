"""
Ordinal Notation Module

Normal-form notations for the ordinals in C(epsilon_{Omega+1}, 0): sums of
principal terms built from Omega, the collapsing function psi and
omega-exponentiation. This is the ordinal layer under every label, cut rank
and level annotation in pybhw.

A term is an ``OrdTerm`` holding a non-increasing tuple of principal terms.
The empty tuple is 0. Each principal term is one of:

    BigOmega      the ordinal Omega
    Psi(a)        psi(a), defined only when a is in C(a, 0)
    WPow(e)       omega^e, never with e a single Omega or psi term

Every constructor validates its input, so any ``OrdTerm`` that exists is in
normal form and structural equality coincides with ordinal equality.

Classes:
    BigOmega, Psi, WPow: Principal terms.
    OrdTerm: Normal-form sum of principal terms.
    OrdBound: A (depth, rank) pair with an optional length limit.

Functions:
    compare: Total order on normal forms.
    nf_sum, natural_sum: Ordinary and natural (Hessenberg) sums.
    omega_pow, omega_times: omega^e and omega * a.
    psi, in_C: Collapsing and membership in C(a, 0).
    classify, omega_tower: Zero/successor/limit and iterated exponentials.
    enumerate_upto: Every normal form up to a size budget.
    parse, render: Text syntax.

Example:
    Comparing and collapsing::

        from pybhw.ordinals import parse, psi, compare, BIG_OMEGA

        a = parse("W + w^(W)")
        compare(psi(a), BIG_OMEGA)        # Comparison.LESS
        render(omega_pow(psi(ZERO)))      # 'p(0)'

Notes:
    - The grammar is ``0``, ``W``, ``w^(t)``, ``p(t)``, ``t + t``; natural
      numbers and bare ``w`` are accepted as sugar, and ``t # t`` is accepted
      only with ``allow_natural=True``.
    - There is no general multiplication; ``omega_times`` covers what the
      rank calculus needs.
"""

import functools
import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Tuple, Union

from .exceptions import NotInC, NotNormalForm, OrdinalSyntaxError
from .tags import Comparison, OrdClass


@dataclass(frozen=True)
class BigOmega:
    """The first uncountable ordinal."""

    def __repr__(self) -> str:
        return "BigOmega()"


@dataclass(frozen=True)
class Psi:
    """psi(arg); construction checks that arg lies in C(arg, 0)."""

    arg: "OrdTerm"

    def __post_init__(self) -> None:
        witness = _psi_violation(self.arg, self.arg)
        if witness is not None:
            raise NotInC(render(self.arg), render(OrdTerm((witness,))))


@dataclass(frozen=True)
class WPow:
    """omega^exp for an exponent that is not an epsilon number."""

    exp: "OrdTerm"

    def __post_init__(self) -> None:
        if self.exp.is_epsilon:
            raise NotNormalForm(
                f"w^({render(self.exp)})", "omega to an epsilon number is that number"
            )


Principal = Union[BigOmega, Psi, WPow]


@functools.total_ordering
@dataclass(frozen=True)
class OrdTerm:
    """
    A normal-form ordinal: a non-increasing sum of principal terms.

    Attributes:
        terms: The principal terms, largest first; empty for 0.

    Raises:
        NotNormalForm: If the terms increase somewhere.
    """

    terms: Tuple[Principal, ...] = ()
    _hash: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        for left, right in zip(self.terms, self.terms[1:]):
            if _cmp_principal(left, right) < 0:
                raise NotNormalForm(
                    " + ".join(_render_principal(p) for p in self.terms),
                    "summands must be non-increasing",
                )
        object.__setattr__(self, "_hash", hash(self.terms))

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "OrdTerm") -> bool:
        if not isinstance(other, OrdTerm):
            return NotImplemented
        return _cmp(self, other) < 0

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __str__(self) -> str:
        return render(self)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_principal(self) -> bool:
        return len(self.terms) == 1

    @property
    def is_epsilon(self) -> bool:
        """True for a single Omega or psi term."""
        return len(self.terms) == 1 and isinstance(self.terms[0], (BigOmega, Psi))

    @property
    def leading(self) -> Optional[Principal]:
        return self.terms[0] if self.terms else None


@dataclass(frozen=True)
class OrdBound:
    """
    The ordinal bookkeeping of a derivation: depth, cut rank and an optional
    strict bound on formula lengths.
    """

    depth: OrdTerm
    rank: OrdTerm
    length_limit: Optional[int] = None

    def to_dict(self) -> Dict[str, Optional[object]]:
        return {
            "depth": render(self.depth),
            "rank": render(self.rank),
            "lengthLimit": self.length_limit,
        }


ZERO = OrdTerm(())
BIG_OMEGA = OrdTerm((BigOmega(),))
ONE = OrdTerm((WPow(ZERO),))
OMEGA = OrdTerm((WPow(ONE),))


# Comparison


def _log(p: Principal) -> OrdTerm:
    """The exponent e with p = omega^e."""
    if isinstance(p, WPow):
        return p.exp
    return OrdTerm((p,))


def _cmp_principal(x: Principal, y: Principal) -> int:
    if isinstance(x, WPow) and isinstance(y, WPow):
        return _cmp(x.exp, y.exp)
    if isinstance(x, WPow) or isinstance(y, WPow):
        return _cmp(_log(x), _log(y))
    if isinstance(x, BigOmega):
        return 0 if isinstance(y, BigOmega) else 1
    if isinstance(y, BigOmega):
        return -1
    return _cmp(x.arg, y.arg)


@functools.lru_cache(maxsize=1 << 16)
def _cmp(a: OrdTerm, b: OrdTerm) -> int:
    for x, y in zip(a.terms, b.terms):
        if x is y:
            continue
        c = _cmp_principal(x, y)
        if c:
            return c
    return (len(a.terms) > len(b.terms)) - (len(a.terms) < len(b.terms))


def compare(a: OrdTerm, b: OrdTerm) -> Comparison:
    """
    Compare two normal forms.

    Sums compare lexicographically. Principal terms compare through their
    omega-logarithms, psi(a) against psi(b) through a against b, and every
    psi term lies below Omega.

    Args:
        a: Left operand.
        b: Right operand.

    Returns:
        Comparison.LESS, EQUAL or GREATER.

    Raises:
        NotNormalForm: If either argument is not an OrdTerm.
    """
    for t in (a, b):
        if not isinstance(t, OrdTerm):
            raise NotNormalForm(repr(t), "not an ordinal term")
    c = _cmp(a, b)
    if c < 0:
        return Comparison.LESS
    if c > 0:
        return Comparison.GREATER
    return Comparison.EQUAL


def max_ord(*terms: OrdTerm) -> OrdTerm:
    result = ZERO
    for t in terms:
        if _cmp(t, result) > 0:
            result = t
    return result


def min_ord(first: OrdTerm, *rest: OrdTerm) -> OrdTerm:
    result = first
    for t in rest:
        if _cmp(t, result) < 0:
            result = t
    return result


# Arithmetic


def nf_sum(a: OrdTerm, b: OrdTerm) -> OrdTerm:
    """Ordinal sum a + b; summands of a below the leading term of b vanish."""
    if b.is_zero:
        return a
    lead = b.terms[0]
    keep: List[Principal] = []
    for p in a.terms:
        if _cmp_principal(p, lead) < 0:
            break
        keep.append(p)
    return OrdTerm(tuple(keep) + b.terms)


def sum_of(*terms: OrdTerm) -> OrdTerm:
    """Left-associated ordinal sum of any number of terms."""
    return functools.reduce(nf_sum, terms, ZERO)


def natural_sum(a: OrdTerm, b: OrdTerm) -> OrdTerm:
    """Hessenberg sum: merge both summand sequences."""
    merged: List[Principal] = []
    i = j = 0
    while i < len(a.terms) and j < len(b.terms):
        if _cmp_principal(a.terms[i], b.terms[j]) >= 0:
            merged.append(a.terms[i])
            i += 1
        else:
            merged.append(b.terms[j])
            j += 1
    merged.extend(a.terms[i:])
    merged.extend(b.terms[j:])
    return OrdTerm(tuple(merged))


def omega_pow(e: OrdTerm) -> OrdTerm:
    """omega^e, collapsing the epsilon fixed points omega^Omega and omega^psi(a)."""
    if e.is_epsilon:
        return e
    return OrdTerm((WPow(e),))


def omega_times(a: OrdTerm) -> OrdTerm:
    """
    Left product omega * a.

    Each summand omega^e becomes omega^(1+e), so epsilon numbers are fixed and
    omega * 0 = 0.
    """
    return OrdTerm(tuple(omega_pow(nf_sum(ONE, _log(p))).terms[0] for p in a.terms))


def succ(a: OrdTerm) -> OrdTerm:
    return nf_sum(a, ONE)


def pred(a: OrdTerm) -> OrdTerm:
    """Predecessor of a successor ordinal."""
    if classify(a) is not OrdClass.SUCCESSOR:
        raise NotNormalForm(render(a), "has no predecessor")
    return OrdTerm(a.terms[:-1])


def from_int(n: int) -> OrdTerm:
    if n < 0:
        raise ValueError(f"negative natural number: {n}")
    return OrdTerm((WPow(ZERO),) * n)


def to_int(a: OrdTerm) -> Optional[int]:
    """The natural number denoted by a, or None when a is infinite."""
    if all(isinstance(p, WPow) and p.exp.is_zero for p in a.terms):
        return len(a.terms)
    return None


def split_finite(a: OrdTerm) -> Tuple[OrdTerm, int]:
    """Split a into (b, k) with a = b + k and b zero or a limit."""
    k = 0
    terms = a.terms
    while terms and isinstance(terms[-1], WPow) and terms[-1].exp.is_zero:
        terms = terms[:-1]
        k += 1
    return OrdTerm(terms), k


def omega_offset(a: OrdTerm) -> Optional[int]:
    """k when a = Omega + k, otherwise None."""
    base, k = split_finite(a)
    return k if base == BIG_OMEGA else None


def psi(a: OrdTerm) -> OrdTerm:
    """
    The collapse psi(a) as a one-term sum.

    Raises:
        NotInC: If a contains a psi(c) with c not below a.
    """
    return OrdTerm((Psi(a),))


def _psi_violation(t: OrdTerm, a: OrdTerm) -> Optional[Principal]:
    for p in t.terms:
        if isinstance(p, WPow):
            found = _psi_violation(p.exp, a)
            if found is not None:
                return found
        elif isinstance(p, Psi) and _cmp(p.arg, a) >= 0:
            return p
    return None


def in_C(t: OrdTerm, a: OrdTerm) -> bool:
    """
    Membership of t in C(a, 0).

    0 and Omega are generators, sums and omega-powers are closed under, and
    psi(c) belongs exactly when c < a. On normal forms the argument c need
    not be inspected further.
    """
    return _psi_violation(t, a) is None


def classify(t: OrdTerm) -> OrdClass:
    if t.is_zero:
        return OrdClass.ZERO
    last = t.terms[-1]
    if isinstance(last, WPow) and last.exp.is_zero:
        return OrdClass.SUCCESSOR
    return OrdClass.LIMIT


def omega_tower(n: int, xi: OrdTerm) -> OrdTerm:
    """omega_0[xi] = xi and omega_{k+1}[xi] = omega^(omega_k[xi])."""
    if n < 0:
        raise ValueError(f"tower height must be a natural number, got {n}")
    result = xi
    for _ in range(n):
        result = omega_pow(result)
    return result


def psi_subterms(t: OrdTerm) -> Iterator[OrdTerm]:
    """Every psi term occurring in t, including inside psi arguments."""
    for p in t.terms:
        if isinstance(p, WPow):
            yield from psi_subterms(p.exp)
        elif isinstance(p, Psi):
            yield OrdTerm((p,))
            yield from psi_subterms(p.arg)


# Enumeration


def size(t: OrdTerm) -> int:
    """Number of AST nodes: 0 and Omega count 1, sums count their joins."""
    if t.is_zero:
        return 1
    return sum(_principal_size(p) for p in t.terms) + len(t.terms) - 1


def _principal_size(p: Principal) -> int:
    if isinstance(p, BigOmega):
        return 1
    return 1 + size(p.arg if isinstance(p, Psi) else p.exp)


@functools.lru_cache(maxsize=None)
def _principals_of_size(s: int) -> Tuple[Principal, ...]:
    if s < 1:
        return ()
    if s == 1:
        return (BigOmega(),)
    found: List[Principal] = []
    for a in _terms_of_size(s - 1):
        if in_C(a, a):
            found.append(Psi(a))
    for e in _terms_of_size(s - 1):
        if not e.is_epsilon:
            found.append(WPow(e))
    return tuple(found)


@functools.lru_cache(maxsize=None)
def _terms_of_size(s: int) -> Tuple[OrdTerm, ...]:
    found: List[OrdTerm] = [ZERO] if s == 1 else []
    found.extend(OrdTerm((p,)) for p in _principals_of_size(s))
    # Sums of k >= 2 summands: sizes add, plus k - 1 joins.
    pool = sorted(
        (p for k in range(1, s - 1) for p in _principals_of_size(k)),
        key=functools.cmp_to_key(lambda x, y: -_cmp_principal(x, y)),
    )
    sizes = [_principal_size(p) for p in pool]

    def extend(start: int, remaining: int, chosen: List[Principal]) -> Iterator[OrdTerm]:
        if remaining == 0 and len(chosen) >= 2:
            yield OrdTerm(tuple(chosen))
            return
        for i in range(start, len(pool)):
            cost = sizes[i] + (1 if chosen else 0)
            if cost <= remaining:
                chosen.append(pool[i])
                yield from extend(i, remaining - cost, chosen)
                chosen.pop()

    found.extend(extend(0, s, []))
    return tuple(found)


def enumerate_upto(size_budget: int) -> Iterator[OrdTerm]:
    """
    Every normal form with at most size_budget AST nodes, each exactly once,
    smallest sizes first, in a fixed order.
    """
    for s in range(1, size_budget + 1):
        yield from _terms_of_size(s)


# Text syntax


_TOKEN = re.compile(r"\s*(?:(\d+)|(w\^\()|(p\()|(W)|(w)|([()+#]))")


class _Reader:
    def __init__(self, text: str, allow_natural: bool) -> None:
        self.text = text
        self.pos = 0
        self.allow_natural = allow_natural

    def peek(self) -> Optional[str]:
        m = _TOKEN.match(self.text, self.pos)
        return m.group(0).strip() if m else None

    def take(self, expected: str) -> str:
        m = _TOKEN.match(self.text, self.pos)
        if m is None:
            raise OrdinalSyntaxError(self.text, self.pos, expected)
        self.pos = m.end()
        return m.group(0).strip()

    def expr(self) -> OrdTerm:
        result = self.sum()
        while self.peek() == "#":
            if not self.allow_natural:
                raise OrdinalSyntaxError(self.text, self.pos, "'+' (natural sum disabled)")
            self.take("#")
            result = natural_sum(result, self.sum())
        return result

    def sum(self) -> OrdTerm:
        result = self.atom()
        while self.peek() == "+":
            self.take("+")
            result = nf_sum(result, self.atom())
        return result

    def atom(self) -> OrdTerm:
        start = self.pos
        tok = self.take("a term")
        if tok.isdigit():
            return from_int(int(tok))
        if tok == "W":
            return BIG_OMEGA
        if tok == "w":
            return OMEGA
        if tok in ("w^(", "p(", "("):
            inner = self.expr()
            if self.take("')'") != ")":
                raise OrdinalSyntaxError(self.text, self.pos, "')'")
            if tok == "w^(":
                return omega_pow(inner)
            if tok == "p(":
                return psi(inner)
            return inner
        raise OrdinalSyntaxError(self.text, start, "a term")


def parse(text: str, allow_natural: bool = False) -> OrdTerm:
    """
    Read ordinal text and normalize it.

    Args:
        text: Text in the ordinal grammar.
        allow_natural: Accept ``#`` for the natural sum.

    Raises:
        OrdinalSyntaxError: On malformed text.
        NotInC: If a psi argument is outside its C-set.
    """
    reader = _Reader(text, allow_natural)
    result = reader.expr()
    if text[reader.pos :].strip():
        raise OrdinalSyntaxError(text, reader.pos, "end of input")
    return result


def _render_principal(p: Principal) -> str:
    if isinstance(p, BigOmega):
        return "W"
    if isinstance(p, Psi):
        return f"p({render(p.arg)})"
    return f"w^({render(p.exp)})"


def render(t: OrdTerm) -> str:
    """Canonical spelling; ``parse(render(t)) == t``."""
    if t.is_zero:
        return "0"
    return " + ".join(_render_principal(p) for p in t.terms)


def render_short(t: OrdTerm) -> str:
    """Compact spelling that prints naturals as digits and omega as ``w``."""
    n = to_int(t)
    if n is not None:
        return str(n)
    if t == OMEGA:
        return "w"
    return render(t)


def sorted_terms(terms: Iterable[OrdTerm]) -> List[OrdTerm]:
    return sorted(terms, key=functools.cmp_to_key(_cmp))
