"""Closure-safe expressions for g in C^2_+((1, infinity)).

The grammar only admits positive constants, x, (x^h - 1), sums, products and
exp of an admissible node. Each of these is positive with non-negative first
and second derivatives on (1, infinity), and the class is closed under the
node constructors, so every well-formed tree is admissible without any
runtime proof.

Derivatives are propagated as order-2 jets (value, first, second) over
BallReal, so evaluation at a ball returns certified enclosures of g, g' and
g''.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..errors import DomainError, ParseError
from .ball import BallReal, ball_exp, ball_pow
from .exact import ExactReal


@dataclass(frozen=True)
class Jet2:
    """A function value with its first two derivatives at one point."""

    value: BallReal
    d1: BallReal
    d2: BallReal

    @classmethod
    def constant(cls, value: BallReal) -> Jet2:
        zero = BallReal.from_int(0, value.prec)
        return cls(value, zero, zero)

    @classmethod
    def variable(cls, x: BallReal) -> Jet2:
        return cls(x, BallReal.from_int(1, x.prec), BallReal.from_int(0, x.prec))

    def __add__(self, other: Jet2) -> Jet2:
        return Jet2(self.value + other.value, self.d1 + other.d1, self.d2 + other.d2)

    def __sub__(self, other: Jet2) -> Jet2:
        return Jet2(self.value - other.value, self.d1 - other.d1, self.d2 - other.d2)

    def __mul__(self, other: Jet2) -> Jet2:
        # (uv)' = u'v + uv',  (uv)'' = u''v + 2u'v' + uv''
        value = self.value * other.value
        d1 = self.d1 * other.value + self.value * other.d1
        d2 = self.d2 * other.value + (self.d1 * other.d1) * 2 + self.value * other.d2
        return Jet2(value, d1, d2)

    def scale(self, factor: BallReal) -> Jet2:
        return Jet2(self.value * factor, self.d1 * factor, self.d2 * factor)

    def exp(self) -> Jet2:
        # (e^u)' = e^u u',  (e^u)'' = e^u (u'' + u'^2)
        e = ball_exp(self.value)
        return Jet2(e, e * self.d1, e * (self.d2 + self.d1 * self.d1))


def power_jet(x: BallReal, n: int) -> Jet2:
    """Jet of x**n for an integer n >= 0."""
    if n == 0:
        return Jet2.constant(BallReal.from_int(1, x.prec))
    value = ball_pow(x, n)
    d1 = ball_pow(x, n - 1) * n
    d2 = ball_pow(x, n - 2) * (n * (n - 1)) if n >= 2 else BallReal.from_int(0, x.prec)
    return Jet2(value, d1, d2)


class GExpr(ABC):
    """Node of the g-expression grammar."""

    @abstractmethod
    def jet(self, x: BallReal) -> Jet2:
        """Value, first and second derivative at x."""

    @abstractmethod
    def exact_value(self, x: ExactReal) -> Optional[ExactReal]:
        """Exact value at an exact point, or None when exp makes it transcendental."""

    @property
    @abstractmethod
    def uses_x(self) -> bool:
        """True when the expression depends on x."""

    def __add__(self, other: GExpr) -> GExpr:
        return Sum(self, other)

    def __mul__(self, other: GExpr) -> GExpr:
        return Product(self, other)


@dataclass(frozen=True)
class Const(GExpr):
    value: Fraction

    def __post_init__(self):
        value = Fraction(self.value)
        if value <= 0:
            raise ParseError(f"g constants must be positive, got {value}")
        object.__setattr__(self, "value", value)

    def jet(self, x: BallReal) -> Jet2:
        return Jet2.constant(BallReal.from_fraction(self.value, x.prec))

    def exact_value(self, x: ExactReal) -> ExactReal:
        return ExactReal(self.value)

    @property
    def uses_x(self) -> bool:
        return False

    def __str__(self) -> str:
        if self.value.denominator == 1:
            return str(self.value.numerator)
        return f"{self.value.numerator}/{self.value.denominator}"


@dataclass(frozen=True)
class X(GExpr):
    def jet(self, x: BallReal) -> Jet2:
        return Jet2.variable(x)

    def exact_value(self, x: ExactReal) -> ExactReal:
        return x

    @property
    def uses_x(self) -> bool:
        return True

    def __str__(self) -> str:
        return "x"


@dataclass(frozen=True)
class Pow1m(GExpr):
    """The atom x**h - 1."""

    h: int

    def __post_init__(self):
        if int(self.h) < 1:
            raise ParseError(f"pow1m exponent must be a positive integer, got {self.h}")

    def jet(self, x: BallReal) -> Jet2:
        j = power_jet(x, self.h)
        return Jet2(j.value - 1, j.d1, j.d2)

    def exact_value(self, x: ExactReal) -> ExactReal:
        return x**self.h - 1

    @property
    def uses_x(self) -> bool:
        return True

    def __str__(self) -> str:
        return f"pow1m(x,{self.h})"


@dataclass(frozen=True)
class Sum(GExpr):
    left: GExpr
    right: GExpr

    def jet(self, x: BallReal) -> Jet2:
        return self.left.jet(x) + self.right.jet(x)

    def exact_value(self, x: ExactReal) -> Optional[ExactReal]:
        left, right = self.left.exact_value(x), self.right.exact_value(x)
        if left is None or right is None:
            return None
        return left + right

    @property
    def uses_x(self) -> bool:
        return self.left.uses_x or self.right.uses_x

    def __str__(self) -> str:
        return f"{self.left} + {self.right}"


@dataclass(frozen=True)
class Product(GExpr):
    left: GExpr
    right: GExpr

    def jet(self, x: BallReal) -> Jet2:
        return self.left.jet(x) * self.right.jet(x)

    def exact_value(self, x: ExactReal) -> Optional[ExactReal]:
        left, right = self.left.exact_value(x), self.right.exact_value(x)
        if left is None or right is None:
            return None
        return left * right

    @property
    def uses_x(self) -> bool:
        return self.left.uses_x or self.right.uses_x

    def __str__(self) -> str:
        return f"{_factor_text(self.left)} * {_factor_text(self.right)}"


@dataclass(frozen=True)
class Exp(GExpr):
    arg: GExpr

    def jet(self, x: BallReal) -> Jet2:
        return self.arg.jet(x).exp()

    def exact_value(self, x: ExactReal) -> None:
        return None

    @property
    def uses_x(self) -> bool:
        return self.arg.uses_x

    def __str__(self) -> str:
        return f"exp({self.arg})"


def _factor_text(node: GExpr) -> str:
    return f"({node})" if isinstance(node, Sum) else str(node)


def eval_g_jet(g: GExpr, x: BallReal) -> Jet2:
    """Evaluate (g, g', g'') at x.

    Raises DomainError when g depends on x and the enclosure of x reaches
    (-infinity, 1].
    """
    if g.uses_x and not x.certainly_greater_than(1):
        raise DomainError(f"g = {g} evaluated at x = {x}, which is not > 1")
    return g.jet(x)
