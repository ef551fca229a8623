"""Text parsers for exact reals and g-expressions.

Exact reals::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' integer)?
    atom   := integer | decimal | 'phi' | 'silver' | 'sqrt' '(' expr ')' | '(' expr ')'

Decimals are read exactly (``1.25`` is 5/4). ``sqrt`` takes a non-negative
rational argument.

g-expressions::

    sum     := product ('+' product)*
    product := factor ('*' factor)*
    factor  := number ('/' number)? | 'x' ('^' integer)? | 'pow1m' '(' 'x' ',' integer ')'
             | 'exp' '(' sum ')' | '(' sum ')'

There is no subtraction or negation in the g grammar.
"""

import re
from fractions import Fraction

from ..errors import MixedFieldError, ParseError
from .exact import ExactReal
from .gexpr import Const, Exp, GExpr, Pow1m, Product, Sum, X

_TOKEN = re.compile(r"\s*(?:(\d+\.\d*|\.\d+|\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")

PHI = ExactReal(Fraction(1, 2), Fraction(1, 2), 5)
SILVER = ExactReal(Fraction(1), Fraction(1), 2)

_NAMED = {"phi": PHI, "silver": SILVER}


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None or match.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        number, name, symbol = match.groups()
        if number is not None:
            tokens.append(("num", number))
        elif name is not None:
            tokens.append(("name", name.lower()))
        elif symbol is not None and not symbol.isspace():
            tokens.append(("sym", symbol))
        pos = match.end()
    return tokens


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, str] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> tuple[str, str]:
        token = self.peek()
        if token is None:
            raise ParseError(f"unexpected end of input in {self.text!r}")
        self.pos += 1
        return token

    def accept(self, symbol: str) -> bool:
        token = self.peek()
        if token is not None and token[0] != "num" and token[1] == symbol:
            self.pos += 1
            return True
        return False

    def expect(self, symbol: str) -> None:
        if not self.accept(symbol):
            found = self.peek()
            raise ParseError(
                f"expected {symbol!r} in {self.text!r}, found {found[1] if found else 'end'!r}"
            )

    def integer(self) -> int:
        kind, value = self.take()
        if kind != "num" or "." in value:
            raise ParseError(f"expected an integer in {self.text!r}, found {value!r}")
        return int(value)

    def finish(self) -> None:
        if self.peek() is not None:
            raise ParseError(f"trailing input {self.peek()[1]!r} in {self.text!r}")


def _number(text: str) -> Fraction:
    # Fraction parses decimal strings exactly
    return Fraction(text)


# -- exact reals ----------------------------------------------------------------


def parse_exact(text: str) -> ExactReal:
    """Parse a rational or quadratic surd written in the exact-real grammar."""
    if not text or not text.strip():
        raise ParseError("empty number")
    cursor = _Cursor(text)
    try:
        value = _exact_expr(cursor)
    except (ZeroDivisionError, MixedFieldError) as e:
        raise ParseError(f"cannot evaluate {text!r}: {e}") from e
    cursor.finish()
    return value


def _exact_expr(cursor: _Cursor) -> ExactReal:
    value = _exact_term(cursor)
    while True:
        if cursor.accept("+"):
            value = value + _exact_term(cursor)
        elif cursor.accept("-"):
            value = value - _exact_term(cursor)
        else:
            return value


def _exact_term(cursor: _Cursor) -> ExactReal:
    value = _exact_unary(cursor)
    while True:
        if cursor.accept("*"):
            value = value * _exact_unary(cursor)
        elif cursor.accept("/"):
            value = value / _exact_unary(cursor)
        else:
            return value


def _exact_unary(cursor: _Cursor) -> ExactReal:
    if cursor.accept("-"):
        return -_exact_unary(cursor)
    if cursor.accept("+"):
        return _exact_unary(cursor)
    base = _exact_atom(cursor)
    if cursor.accept("^"):
        negative = cursor.accept("-")
        n = cursor.integer()
        return base ** (-n if negative else n)
    return base


def _exact_atom(cursor: _Cursor) -> ExactReal:
    kind, value = cursor.take()
    if kind == "num":
        return ExactReal(_number(value))
    if kind == "name":
        if value in _NAMED:
            return _NAMED[value]
        if value == "sqrt":
            cursor.expect("(")
            arg = _exact_expr(cursor)
            cursor.expect(")")
            if not arg.is_rational:
                raise ParseError(f"sqrt argument must be rational, got {arg}")
            if arg.as_fraction() < 0:
                raise ParseError(f"sqrt of negative number {arg}")
            return ExactReal.sqrt(arg.as_fraction())
        raise ParseError(f"unknown name {value!r} in {cursor.text!r}")
    if value == "(":
        inner = _exact_expr(cursor)
        cursor.expect(")")
        return inner
    raise ParseError(f"unexpected {value!r} in {cursor.text!r}")


# -- g-expressions --------------------------------------------------------------


def parse_gexpr(text: str) -> GExpr:
    """Parse a g-expression; the result is admissible by construction."""
    if not text or not text.strip():
        raise ParseError("empty g expression")
    cursor = _Cursor(text)
    node = _g_sum(cursor)
    cursor.finish()
    return node


def _g_sum(cursor: _Cursor) -> GExpr:
    node = _g_product(cursor)
    while cursor.accept("+"):
        node = Sum(node, _g_product(cursor))
    if cursor.peek() == ("sym", "-"):
        raise ParseError(
            f"subtraction is not allowed in g expressions ({cursor.text!r}); use pow1m(x,h)"
        )
    return node


def _g_product(cursor: _Cursor) -> GExpr:
    node = _g_factor(cursor)
    while cursor.accept("*"):
        node = Product(node, _g_factor(cursor))
    return node


def _g_factor(cursor: _Cursor) -> GExpr:
    kind, value = cursor.take()
    if kind == "num":
        number = _number(value)
        if cursor.accept("/"):
            kind, denominator = cursor.take()
            if kind != "num":
                raise ParseError(f"expected a denominator in {cursor.text!r}")
            number = number / _number(denominator)
        return Const(number)
    if kind == "name":
        if value == "x":
            if cursor.accept("^"):
                n = cursor.integer()
                if n < 1:
                    raise ParseError(f"x exponent must be >= 1 in {cursor.text!r}")
                node: GExpr = X()
                for _ in range(n - 1):
                    node = Product(node, X())
                return node
            return X()
        if value == "pow1m":
            cursor.expect("(")
            kind, name = cursor.take()
            if name != "x":
                raise ParseError(f"pow1m expects x as first argument in {cursor.text!r}")
            cursor.expect(",")
            h = cursor.integer()
            cursor.expect(")")
            return Pow1m(h)
        if value == "exp":
            cursor.expect("(")
            inner = _g_sum(cursor)
            cursor.expect(")")
            return Exp(inner)
        raise ParseError(f"unknown name {value!r} in g expression {cursor.text!r}")
    if value == "(":
        inner = _g_sum(cursor)
        cursor.expect(")")
        return inner
    raise ParseError(f"unexpected {value!r} in g expression {cursor.text!r}")
