"""Expression trees over a single complex variable.

Nodes are frozen dataclasses. Build trees with the factory functions
(:func:`add`, :func:`mul`, :func:`neg`, :func:`power`, :func:`func`,
:func:`const`) rather than the raw constructors: the factories flatten nested
sums/products, sort children into canonical order and spell ``x^(1/2)`` as
``sqrt(x)``, which is what makes ``parse(to_string(e)) == e`` hold.

Grammar accepted by :func:`parse`::

    expr   := term (('+' | '-') term)*
    term   := '-' term | factor (('*' | '/') factor)*
    factor := base ('^' exponent)?
    base   := VAR | number | 'I' | '(' expr ')' | FUNC '(' expr ')'
    number := integer ('/' integer)?
    exponent := ['-'] number | '(' ['-'] number ')'
"""

from __future__ import annotations

import re
from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import ParseError, UnknownFunction

FUNCTIONS = (
    "ln",
    "exp",
    "sqrt",
    "arcsin",
    "arccos",
    "arctan",
    "arccot",
    "arcsinh",
    "arccosh",
    "arctanh",
    "arccoth",
)

Path = tuple


class Expr:
    """Base class of all expression nodes."""

    __slots__ = ()

    def children(self) -> tuple:
        return ()

    @cached_property
    def text(self) -> str:
        return _to_string(self)

    def __str__(self) -> str:
        return self.text

    def __add__(self, other):
        return add(self, _coerce(other))

    def __radd__(self, other):
        return add(_coerce(other), self)

    def __sub__(self, other):
        return add(self, neg(_coerce(other)))

    def __rsub__(self, other):
        return add(_coerce(other), neg(self))

    def __mul__(self, other):
        return mul(self, _coerce(other))

    def __rmul__(self, other):
        return mul(_coerce(other), self)

    def __neg__(self):
        return neg(self)

    def __pow__(self, exponent):
        return power(self, Fraction(exponent))


@dataclass(frozen=True, eq=True)
class Var(Expr):
    name: str = "z"


@dataclass(frozen=True, eq=True)
class Rational(Expr):
    value: Fraction


@dataclass(frozen=True, eq=True)
class ImagUnit(Expr):
    pass


@dataclass(frozen=True, eq=True)
class Add(Expr):
    terms: tuple

    def children(self):
        return self.terms


@dataclass(frozen=True, eq=True)
class Mul(Expr):
    factors: tuple

    def children(self):
        return self.factors


@dataclass(frozen=True, eq=True)
class Neg(Expr):
    child: Expr

    def children(self):
        return (self.child,)


@dataclass(frozen=True, eq=True)
class Pow(Expr):
    base: Expr
    exponent: Fraction

    def children(self):
        return (self.base,)


@dataclass(frozen=True, eq=True)
class Func(Expr):
    name: str
    arg: Expr

    def children(self):
        return (self.arg,)


I = ImagUnit()
Z = Var("z")


def _coerce(value) -> Expr:
    if isinstance(value, Expr):
        return value
    if isinstance(value, complex):
        re_part, im_part = Fraction(value.real), Fraction(value.imag)
        return add(const(re_part), mul(const(im_part), I))
    return const(Fraction(value))


# -- factories -------------------------------------------------------------


def const(value) -> Expr:
    value = Fraction(value)
    if value < 0:
        return Neg(Rational(-value))
    return Rational(value)


def _is_constant_node(e: Expr) -> bool:
    return isinstance(e, (Rational, ImagUnit))


def _abs_text(e: Expr) -> str:
    return e.child.text if isinstance(e, Neg) else e.text


def _add_key(e: Expr):
    return (not contains_var(e), _abs_text(e), isinstance(e, Neg))


def _mul_rank(e: Expr) -> int:
    if isinstance(e, Rational):
        return 0
    if isinstance(e, ImagUnit):
        return 1
    if isinstance(e, Var) or (isinstance(e, Pow) and isinstance(e.base, Var)):
        return 2
    if isinstance(e, Pow):
        return 3
    if isinstance(e, Func):
        return 4
    return 5


def add(*terms: Expr) -> Expr:
    flat = []
    for t in terms:
        t = _coerce(t)
        if isinstance(t, Add):
            flat.extend(t.terms)
        else:
            flat.append(t)
    if not flat:
        return Rational(Fraction(0))
    if len(flat) == 1:
        return flat[0]
    return Add(tuple(sorted(flat, key=_add_key)))


def mul(*factors: Expr) -> Expr:
    flat = []
    for f in factors:
        f = _coerce(f)
        if isinstance(f, Mul):
            flat.extend(f.factors)
        else:
            flat.append(f)
    if not flat:
        return Rational(Fraction(1))
    if len(flat) == 1:
        return flat[0]
    return Mul(tuple(sorted(flat, key=lambda e: (_mul_rank(e), e.text))))


def neg(e: Expr) -> Expr:
    return Neg(_coerce(e))


def power(base: Expr, exponent) -> Expr:
    exponent = Fraction(exponent)
    base = _coerce(base)
    if exponent == Fraction(1, 2):
        return Func("sqrt", base)
    return Pow(base, exponent)


def func(name: str, arg: Expr) -> Expr:
    if name not in FUNCTIONS:
        raise UnknownFunction(f"unknown function {name!r}")
    return Func(name, _coerce(arg))


# -- traversal -------------------------------------------------------------


def walk(e: Expr, path: Path = ()) -> Iterator[tuple[Path, Expr]]:
    """Yield ``(path, node)`` pairs in pre-order; a path is a tuple of child indices."""
    yield path, e
    for i, c in enumerate(e.children()):
        yield from walk(c, path + (i,))


def contains_var(e: Expr, name: str | None = None) -> bool:
    if isinstance(e, Var):
        return name is None or e.name == name
    return any(contains_var(c, name) for c in e.children())


def substitute(e: Expr, name: str, replacement: Expr) -> Expr:
    """Replace every ``Var(name)`` in ``e`` by ``replacement``, re-canonicalizing."""
    if isinstance(e, Var):
        return replacement if e.name == name else e
    if isinstance(e, (Rational, ImagUnit)):
        return e
    if isinstance(e, Add):
        return add(*(substitute(t, name, replacement) for t in e.terms))
    if isinstance(e, Mul):
        return mul(*(substitute(f, name, replacement) for f in e.factors))
    if isinstance(e, Neg):
        return neg(substitute(e.child, name, replacement))
    if isinstance(e, Pow):
        return power(substitute(e.base, name, replacement), e.exponent)
    if isinstance(e, Func):
        return func(e.name, substitute(e.arg, name, replacement))
    raise TypeError(f"not an expression node: {e!r}")


def node_at(e: Expr, path: Path) -> Expr:
    for i in path:
        e = e.children()[i]
    return e


def is_multivalued(e: Expr) -> bool:
    """True for nodes that carry a defining branch cut of their own."""
    if isinstance(e, Func):
        return e.name != "exp"
    if isinstance(e, Pow):
        return e.exponent.denominator > 1
    return False


# -- printing --------------------------------------------------------------


def _fraction_text(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _paren(s: str) -> str:
    return f"({s})"


def _neg_text(child: Expr) -> str:
    if isinstance(child, (Add, Neg)):
        return "-" + _paren(child.text)
    return "-" + child.text


def _to_string(e: Expr) -> str:
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Rational):
        if e.value < 0:
            return "-" + _fraction_text(-e.value)
        return _fraction_text(e.value)
    if isinstance(e, ImagUnit):
        return "I"
    if isinstance(e, Neg):
        return _neg_text(e.child)
    if isinstance(e, Add):
        parts = [e.terms[0].text]
        for t in e.terms[1:]:
            if isinstance(t, Neg):
                inner = t.child
                body = _paren(inner.text) if isinstance(inner, (Add, Neg)) else inner.text
                parts.append(" - " + body)
            else:
                parts.append(" + " + t.text)
        return "".join(parts)
    if isinstance(e, Mul):
        out = []
        for f in e.factors:
            if isinstance(f, (Add, Neg)) or (isinstance(f, Rational) and f.value < 0):
                out.append(_paren(f.text))
            else:
                out.append(f.text)
        return "*".join(out)
    if isinstance(e, Pow):
        if e.exponent == Fraction(1, 2):
            return f"sqrt({e.base.text})"
        b = e.base
        needs = isinstance(b, (Add, Mul, Neg, Pow)) or (
            isinstance(b, Rational) and (b.value.denominator != 1 or b.value < 0)
        )
        base_text = _paren(b.text) if needs else b.text
        q = e.exponent
        if q.denominator == 1 and q >= 0:
            return f"{base_text}^{q.numerator}"
        return f"{base_text}^({_fraction_text(q)})"
    if isinstance(e, Func):
        return f"{e.name}({e.arg.text})"
    raise TypeError(f"not an expression node: {e!r}")


def to_string(e: Expr) -> str:
    return e.text


# -- parsing ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3))
            tokens.append(("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variable: str):
        self.tokens = _tokenize(text)
        self.i = 0
        self.variable = variable

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.take()
        if val != value or kind == "end":
            found = "end of input" if kind == "end" else repr(val)
            raise ParseError(f"expected {value!r}, found {found}", pos)

    def parse(self) -> Expr:
        e = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", pos)
        return e

    def expr(self) -> Expr:
        terms = [self.term()]
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            t = self.term()
            terms.append(t if op == "+" else neg(t))
        return add(*terms) if len(terms) > 1 else terms[0]

    def term(self) -> Expr:
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return neg(self.term())
        factors = [self.factor()]
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            f = self.factor()
            if op == "/":
                if isinstance(f, Rational):
                    if f.value == 0:
                        raise ParseError("division by zero", self.tokens[self.i - 1][2])
                    f = Rational(1 / f.value)
                else:
                    f = power(f, -1)
            factors.append(f)
        return mul(*factors) if len(factors) > 1 else factors[0]

    def factor(self) -> Expr:
        base = self.base()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            return power(base, self.exponent())
        return base

    def number(self) -> Fraction:
        kind, val, pos = self.take()
        if kind != "int":
            raise ParseError("expected an integer", pos)
        q = Fraction(int(val))
        if self.peek()[:2] == ("op", "/") and self.tokens[self.i + 1][0] == "int":
            self.take()
            den = int(self.take()[1])
            if den == 0:
                raise ParseError("zero denominator", self.tokens[self.i - 1][2])
            q = q / den
        return q

    def exponent(self) -> Fraction:
        if self.peek()[:2] == ("op", "("):
            self.take()
            q = self.signed_number()
            self.expect(")")
            return q
        return self.signed_number()

    def signed_number(self) -> Fraction:
        sign = 1
        if self.peek()[:2] == ("op", "-"):
            self.take()
            sign = -1
        return sign * self.number()

    def base(self) -> Expr:
        kind, val, pos = self.peek()
        if kind == "int":
            return Rational(self.number())
        if kind == "op" and val == "(":
            self.take()
            e = self.expr()
            self.expect(")")
            return e
        if kind == "name":
            self.take()
            if val == self.variable:
                return Var(self.variable)
            if val == "I":
                return I
            if self.peek()[:2] == ("op", "("):
                if val not in FUNCTIONS:
                    raise UnknownFunction(f"unknown function {val!r} (at position {pos})")
                self.take()
                arg = self.expr()
                self.expect(")")
                return func(val, arg)
            raise ParseError(
                f"unknown symbol {val!r}: only the variable {self.variable!r} may appear", pos
            )
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected {val!r}", pos)


def parse(text: str, variable: str = "z") -> Expr:
    """Parse ``text`` into a canonical expression tree."""
    return _Parser(text, variable).parse()


ExprLike = Expr | int | Fraction | complex
