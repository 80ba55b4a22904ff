"""
S-Expression Module

Reader and printer for the textual formula syntax used in proof files, tree
assignments and on the command line.

Syntax::

    term     := symbol | empty | omega
    ordinal  := integer | W | w | "ordinal text"
    formula  := (in t t) | (nin t t)
              | (rel U t) | (nrel U t)
              | (M ordinal t) | (nM ordinal t)
              | (or F G ...) | (and F G ...)
              | (bex x t F) | (ball x t F)
              | (rex ordinal x F) | (rall ordinal x F)
              | (ex x F) | (all x F)
              | (ex2 X F) | (all2 X F)

Sugar expanded at read time::

    (not F) (imp F G) (iff F G) (eq a b) (neq a b) (Req U V)
    (Tran a) (Ord a) (Succ a) (FinOrd a)

Example::

    from pybhw.sexpr import read_formula, render_formula

    f = read_formula("(ex x (in x a))")
    render_formula(f)    # '(ex x (in x a))'

Notes:
    - ``;`` starts a comment that runs to the end of the line.
    - Connectives with more than two arguments associate to the right.
"""

from typing import Callable, Dict, List, Optional, Tuple, Union

from .exceptions import FormulaSyntaxError, OrdinalError
from .formulas import (
    EMPTY,
    OMEGA_SET,
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
    Var,
    fin_ord,
    iff,
    implies,
    negate,
    ord_,
    rel_eq,
    set_eq,
    set_neq,
    succ_,
    tran,
)
from .ordinals import BIG_OMEGA, OMEGA, OrdTerm, from_int, parse, render_short

# tokens
T_EOF, T_OPEN, T_CLOSE, T_SYMBOL, T_STRING, T_INTEGER = range(6)

_DELIMITERS = " \t\r\n;()\""


class Quoted(str):
    """A string token that was written between double quotes."""


SExpr = Union[str, int, Quoted, List["SExpr"]]


class SexprReader:
    """A small s-expression tokenizer and list reader."""

    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def _error(self, reason: str) -> FormulaSyntaxError:
        return FormulaSyntaxError(self.text, f"{reason} at offset {self.pos}")

    def get_token(self) -> Tuple[int, Optional[Union[str, int]]]:
        text = self.text
        while self.pos < len(text):
            c = text[self.pos]
            if c in " \t\r\n":
                self.pos += 1
            elif c == ";":
                while self.pos < len(text) and text[self.pos] != "\n":
                    self.pos += 1
            else:
                break
        if self.pos >= len(text):
            return T_EOF, None
        c = text[self.pos]
        if c == "(":
            self.pos += 1
            return T_OPEN, None
        if c == ")":
            self.pos += 1
            return T_CLOSE, None
        if c == '"':
            end = text.find('"', self.pos + 1)
            if end < 0:
                raise self._error("unterminated string")
            value = text[self.pos + 1 : end]
            self.pos = end + 1
            return T_STRING, value
        start = self.pos
        while self.pos < len(text) and text[self.pos] not in _DELIMITERS:
            self.pos += 1
        token = text[start : self.pos]
        if token.isdigit():
            return T_INTEGER, int(token)
        return T_SYMBOL, token

    def read(self) -> SExpr:
        """Read exactly one expression and require the input to end after it."""
        value = self._read(self.get_token())
        kind, _ = self.get_token()
        if kind != T_EOF:
            raise self._error("trailing input")
        return value

    def _read(self, token: Tuple[int, Optional[Union[str, int]]]) -> SExpr:
        kind, value = token
        if kind == T_EOF:
            raise self._error("unexpected end of input")
        if kind == T_CLOSE:
            raise self._error("unexpected )")
        if kind == T_STRING:
            return Quoted(value)
        if kind != T_OPEN:
            return value
        items: List[SExpr] = []
        while True:
            token = self.get_token()
            if token[0] == T_CLOSE:
                return items
            if token[0] == T_EOF:
                raise self._error("end of input inside list")
            items.append(self._read(token))


def read_sexpr(text: str) -> SExpr:
    return SexprReader(text).read()


# Reading formulas


def _term(text: str, x: SExpr) -> SetTerm:
    if isinstance(x, str) and not isinstance(x, Quoted):
        if x == "empty":
            return EMPTY
        if x == "omega":
            return OMEGA_SET
        return Var(x)
    raise FormulaSyntaxError(text, f"expected a set term, got {x!r}")


def _name(text: str, x: SExpr) -> str:
    if isinstance(x, str) and not isinstance(x, Quoted) and x not in ("empty", "omega"):
        return x
    raise FormulaSyntaxError(text, f"expected a variable name, got {x!r}")


def read_ordinal(text: str, x: SExpr) -> OrdTerm:
    """An ordinal annotation: integer, W, w or quoted ordinal text."""
    if isinstance(x, int):
        return from_int(x)
    if isinstance(x, Quoted):
        try:
            return parse(x)
        except OrdinalError as e:
            raise FormulaSyntaxError(text, str(e)) from e
    if x == "W":
        return BIG_OMEGA
    if x == "w":
        return OMEGA
    raise FormulaSyntaxError(text, f"expected an ordinal, got {x!r}")


def _fold(cls: Callable[[Formula, Formula], Formula], parts: List[Formula]) -> Formula:
    result = parts[-1]
    for part in reversed(parts[:-1]):
        result = cls(part, result)
    return result


_ARITY: Dict[str, int] = {
    "in": 2,
    "nin": 2,
    "rel": 2,
    "nrel": 2,
    "M": 2,
    "nM": 2,
    "bex": 3,
    "ball": 3,
    "rex": 3,
    "rall": 3,
    "ex": 2,
    "all": 2,
    "ex2": 2,
    "all2": 2,
    "not": 1,
    "imp": 2,
    "iff": 2,
    "eq": 2,
    "neq": 2,
    "Req": 2,
    "Tran": 1,
    "Ord": 1,
    "Succ": 1,
    "FinOrd": 1,
}


def formula_from_sexpr(x: SExpr, text: str = "") -> Formula:
    text = text or repr(x)
    if not isinstance(x, list) or not x:
        raise FormulaSyntaxError(text, f"expected a parenthesized formula, got {x!r}")
    head, args = x[0], x[1:]
    if not isinstance(head, str) or isinstance(head, Quoted):
        raise FormulaSyntaxError(text, f"bad operator {head!r}")
    if head in ("or", "and"):
        if len(args) < 2:
            raise FormulaSyntaxError(text, f"({head}) needs at least two arguments")
        cls = Or if head == "or" else And
        return _fold(cls, [formula_from_sexpr(a, text) for a in args])
    if head not in _ARITY:
        raise FormulaSyntaxError(text, f"unknown operator {head!r}")
    if len(args) != _ARITY[head]:
        raise FormulaSyntaxError(text, f"({head}) takes {_ARITY[head]} arguments, got {len(args)}")
    sub = lambda a: formula_from_sexpr(a, text)  # noqa: E731
    term = lambda a: _term(text, a)  # noqa: E731
    name = lambda a: _name(text, a)  # noqa: E731
    if head == "in":
        return MemberOf(term(args[0]), term(args[1]))
    if head == "nin":
        return NotMemberOf(term(args[0]), term(args[1]))
    if head == "rel":
        return RelApp(name(args[0]), term(args[1]))
    if head == "nrel":
        return NegRelApp(name(args[0]), term(args[1]))
    if head in ("M", "nM"):
        cls = MAtom if head == "M" else NegMAtom
        return cls(read_ordinal(text, args[0]), term(args[1]))
    if head in ("bex", "ball"):
        cls = BoundedEx if head == "bex" else BoundedAll
        return cls(name(args[0]), term(args[1]), sub(args[2]))
    if head in ("rex", "rall"):
        cls = RankedEx if head == "rex" else RankedAll
        return cls(read_ordinal(text, args[0]), name(args[1]), sub(args[2]))
    if head in ("ex", "all", "ex2", "all2"):
        cls = {"ex": UnbEx, "all": UnbAll, "ex2": RelEx, "all2": RelAll}[head]
        return cls(name(args[0]), sub(args[1]))
    if head == "not":
        return negate(sub(args[0]))
    if head == "imp":
        return implies(sub(args[0]), sub(args[1]))
    if head == "iff":
        return iff(sub(args[0]), sub(args[1]))
    if head == "eq":
        return set_eq(term(args[0]), term(args[1]))
    if head == "neq":
        return set_neq(term(args[0]), term(args[1]))
    if head == "Req":
        return rel_eq(name(args[0]), name(args[1]))
    predicate = {"Tran": tran, "Ord": ord_, "Succ": succ_, "FinOrd": fin_ord}[head]
    return predicate(term(args[0]))


def read_formula(text: str) -> Formula:
    """
    Parse one formula.

    Raises:
        FormulaSyntaxError: On malformed input.
        OrdinalRangeError: If a level annotation is not below W.
    """
    return formula_from_sexpr(read_sexpr(text), text)


def read_term(text: str) -> SetTerm:
    return _term(text, read_sexpr(text))


# Printing


def render_term(t: SetTerm) -> str:
    if isinstance(t, EmptySet):
        return "empty"
    if isinstance(t, OmegaConst):
        return "omega"
    return t.name


def render_ordinal(a: OrdTerm) -> str:
    short = render_short(a)
    if short == "W" or short == "w" or short.isdigit():
        return short
    return f'"{short}"'


def render_formula(f: Formula) -> str:
    """Print f in the core syntax; ``read_formula`` inverts it."""
    if isinstance(f, MemberOf):
        return f"(in {render_term(f.left)} {render_term(f.right)})"
    if isinstance(f, NotMemberOf):
        return f"(nin {render_term(f.left)} {render_term(f.right)})"
    if isinstance(f, RelApp):
        return f"(rel {f.rel} {render_term(f.arg)})"
    if isinstance(f, NegRelApp):
        return f"(nrel {f.rel} {render_term(f.arg)})"
    if isinstance(f, MAtom):
        return f"(M {render_ordinal(f.level)} {render_term(f.arg)})"
    if isinstance(f, NegMAtom):
        return f"(nM {render_ordinal(f.level)} {render_term(f.arg)})"
    if isinstance(f, Or):
        return f"(or {render_formula(f.left)} {render_formula(f.right)})"
    if isinstance(f, And):
        return f"(and {render_formula(f.left)} {render_formula(f.right)})"
    if isinstance(f, BoundedEx):
        return f"(bex {f.var} {render_term(f.bound)} {render_formula(f.body)})"
    if isinstance(f, BoundedAll):
        return f"(ball {f.var} {render_term(f.bound)} {render_formula(f.body)})"
    if isinstance(f, RankedEx):
        return f"(rex {render_ordinal(f.level)} {f.var} {render_formula(f.body)})"
    if isinstance(f, RankedAll):
        return f"(rall {render_ordinal(f.level)} {f.var} {render_formula(f.body)})"
    head = {UnbEx: "ex", UnbAll: "all", RelEx: "ex2", RelAll: "all2"}[type(f)]
    return f"({head} {f.var} {render_formula(f.body)})"
