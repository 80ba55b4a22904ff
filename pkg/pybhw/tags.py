"""
pybhw Tag Definitions Module

Enumerations for the names that appear in proof files, certificates and
command line output. String-valued members are the exact spellings used on the
wire, so ``TaitAxiom("TnD")`` parses the ``"axiom:TnD"`` justification of a
proof step and ``Comparison.LESS.value`` is what ``bhw ord cmp`` prints.

Classes:
    TaitAxiom: Axiom schemas of the Tait calculus for KP + (Pi11-CA*).
    TaitRule: Inference rules of the Tait calculus.
    RuleTag: Rules of the infinitary system RS*.
    RSAxiom: Numbered axioms of RS*.
    OrdClass: Zero, successor or limit.
    Comparison: Result of comparing two ordinal terms.
    Truth: Three-valued truth for the tree evaluator.

Example:
    Reading a justification::

        from pybhw.tags import TaitAxiom, TaitRule

        kind, name = "axiom:Pair".split(":")
        schema = TaitAxiom(name)          # TaitAxiom.PAIR
        rule = TaitRule("or")             # TaitRule.OR

    Listing the axiom schemas::

        names = [ax.value for ax in TaitAxiom]
"""

from enum import Enum, IntEnum


class TaitAxiom(str, Enum):
    """Axiom schemas of the finitary Tait calculus."""

    TND = "TnD"
    EQUALITY = "Equality"
    SUB_OMEGA = "SubOmega"
    PAIR = "Pair"
    UNION = "Union"
    EMPTY_SET = "EmptySet"
    INFINITY = "Infinity"
    DELTA0_SEP = "Delta0Sep"
    DELTA0_COL = "Delta0Col"
    EPS_IND = "EpsInd"
    PI11_CA = "Pi11CAstar"


class TaitRule(str, Enum):
    """Inference rules of the finitary Tait calculus."""

    OR = "or"
    AND = "and"
    EX = "ex"
    ALL = "all"
    BEX = "bex"
    BALL = "ball"
    EX2 = "ex2"
    ALL2 = "all2"
    CUT = "cut"


class RuleTag(str, Enum):
    """
    Rules of RS*.

    ``AXIOM`` marks leaves; every other member is an inference rule. The
    ``NOT_M`` rule is the only one indexed by ordinals below a limit, ``ALL``
    and ``RALL`` are indexed by (level, term) pairs, ``BALL`` by terms and
    ``ALL2`` by relation variables.
    """

    AXIOM = "axiom"
    OR = "or"
    AND = "and"
    NOT_M = "notM"
    EX = "ex"
    ALL = "all"
    REX = "rex"
    RALL = "rall"
    BEX = "bex"
    BALL = "ball"
    EX2 = "ex2"
    ALL2 = "all2"
    CUT = "cut"
    S0_REF = "s0ref"
    BC = "bc"

    @property
    def is_infinitary(self) -> bool:
        return self in (RuleTag.NOT_M, RuleTag.ALL, RuleTag.RALL, RuleTag.BALL, RuleTag.ALL2)


class RSAxiom(IntEnum):
    """Numbered axioms of RS*; numbers 7 and 11 are not used."""

    TND = 1
    EQUALITY = 2
    SUB_OMEGA = 3
    M_ZERO = 4
    M_EMPTY = 5
    EMPTY = 6
    M_OMEGA = 8
    INFINITY = 9
    M_MONO = 10
    M_SUCC = 12
    PAIR = 13
    UNION = 14
    SEPARATION = 15
    COMPREHENSION = 16


class OrdClass(str, Enum):
    ZERO = "Zero"
    SUCCESSOR = "Successor"
    LIMIT = "Limit"


class Comparison(str, Enum):
    """Outcome of ``compare``; values are the CLI tokens."""

    LESS = "LT"
    EQUAL = "EQ"
    GREATER = "GT"


class Truth(str, Enum):
    """Kleene truth values."""

    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    def negate(self) -> "Truth":
        if self is Truth.TRUE:
            return Truth.FALSE
        if self is Truth.FALSE:
            return Truth.TRUE
        return Truth.UNKNOWN

    @staticmethod
    def of(value: bool) -> "Truth":
        return Truth.TRUE if value else Truth.FALSE
