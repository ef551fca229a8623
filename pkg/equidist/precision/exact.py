"""Exact reals: rationals and quadratic surds a + b*sqrt(d).

Arithmetic inside one field Q(sqrt(d)) is exact (division goes through the
conjugate). Mixing two different fields raises MixedFieldError; callers that
need mixed fields refine both sides to balls instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Union

from mpmath.libmp import from_man_exp, fzero, mpf_cmp

from ..errors import ArgumentError, MixedFieldError
from .ball import BallReal

Number = Union["ExactReal", int, Fraction]

# trial division bound for square factors; radicands below its cube end up square-free
_SQUARE_FACTOR_LIMIT = 100_000


def _sign(q: Fraction) -> int:
    return (q > 0) - (q < 0)


@lru_cache(maxsize=1024)
def _square_part(d: int) -> tuple[int, int]:
    """(s, core) with d = s^2 * core.

    Trial division strips primes below min(_SQUARE_FACTOR_LIMIT, cbrt(rest))
    from the cofactor rest; what remains then has at most two prime factors,
    so it is either square-free or a perfect square.
    """
    s = 1
    rest = d
    k = 2
    while k <= _SQUARE_FACTOR_LIMIT and k * k * k <= rest:
        if rest % k == 0:
            e = 0
            while rest % k == 0:
                rest //= k
                e += 1
            s *= k ** (e // 2)
        k += 1
    root = math.isqrt(rest)
    if root > 1 and root * root == rest:
        s *= root
    return s, d // (s * s)


def _normalize_surd(b: Fraction, d: int) -> tuple[Fraction, Fraction, int]:
    """Return (rational part, surd coefficient, radicand) for b*sqrt(d)."""
    if d < 0:
        raise ArgumentError(f"sqrt of negative integer {d}")
    root = math.isqrt(d)
    if root * root == d:
        return b * root, Fraction(0), 0
    s, core = _square_part(d)
    return Fraction(0), b * s, core


@dataclass(frozen=True)
class ExactReal:
    """a + b*sqrt(d) with rational a, b and square-free-ish d > 1 (d = 0 when rational)."""

    a: Fraction
    b: Fraction = field(default=Fraction(0))
    d: int = 0

    def __post_init__(self):
        a = Fraction(self.a)
        b = Fraction(self.b)
        d = int(self.d)
        if b == 0 or d == 0:
            b, d = Fraction(0), 0
        else:
            extra, b, d = _normalize_surd(b, d)
            a += extra
            if b == 0:
                d = 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def rational(cls, p: Union[int, Fraction, str], q: int = 1) -> ExactReal:
        return cls(Fraction(p) / q)

    @classmethod
    def sqrt(cls, value: Union[int, Fraction]) -> ExactReal:
        """sqrt of a non-negative rational p/q, written as sqrt(p*q)/q."""
        value = Fraction(value)
        if value < 0:
            raise ArgumentError(f"sqrt of negative rational {value}")
        return cls(Fraction(0), Fraction(1, value.denominator), value.numerator * value.denominator)

    @classmethod
    def coerce(cls, value: Number) -> ExactReal:
        if isinstance(value, ExactReal):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(Fraction(value))
        raise TypeError(f"cannot convert {type(value).__name__} to ExactReal")

    # -- properties -----------------------------------------------------------

    @property
    def kind(self) -> str:
        return "rational" if self.d == 0 else "surd"

    @property
    def is_rational(self) -> bool:
        return self.d == 0

    @property
    def is_integer(self) -> bool:
        return self.d == 0 and self.a.denominator == 1

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def as_fraction(self) -> Fraction:
        if self.d:
            raise ArgumentError(f"{self} is irrational")
        return self.a

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(d)."""
        sa, sb = _sign(self.a), _sign(self.b)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with b^2 d (never equal for non-square d)
        return sa if self.a * self.a > self.b * self.b * self.d else sb

    def conjugate(self) -> ExactReal:
        return ExactReal(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    # -- arithmetic -----------------------------------------------------------

    def in_field(self, d: int) -> ExactReal:
        """The same value written over sqrt(d).

        sqrt(e) = r / d * sqrt(d) whenever d * e = r^2, which covers radicands
        whose square factors were too large to pull out.
        """
        if self.d == 0 or self.d == d:
            return self
        r = math.isqrt(self.d * d) if d > 0 else 0
        if d == 0 or r * r != self.d * d:
            raise MixedFieldError(f"cannot combine sqrt({self.d}) and sqrt({d}) exactly")
        return ExactReal(self.a, self.b * Fraction(r, d), d)

    def _align(self, other: ExactReal) -> tuple[ExactReal, ExactReal]:
        if self.d == 0:
            return self.in_field(other.d), other
        return self, other.in_field(self.d)

    def __neg__(self) -> ExactReal:
        return ExactReal(-self.a, -self.b, self.d)

    def __add__(self, other: Number) -> ExactReal:
        x, y = self._align(ExactReal.coerce(other))
        return ExactReal(x.a + y.a, x.b + y.b, x.d or y.d)

    __radd__ = __add__

    def __sub__(self, other: Number) -> ExactReal:
        return self + (-ExactReal.coerce(other))

    def __rsub__(self, other: Number) -> ExactReal:
        return ExactReal.coerce(other) - self

    def __mul__(self, other: Number) -> ExactReal:
        x, y = self._align(ExactReal.coerce(other))
        d = x.d or y.d
        a = x.a * y.a + x.b * y.b * d
        b = x.a * y.b + x.b * y.a
        return ExactReal(a, b, d)

    __rmul__ = __mul__

    def reciprocal(self) -> ExactReal:
        if self.is_zero():
            raise ZeroDivisionError("reciprocal of zero")
        n = self.norm()
        return ExactReal(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other: Number) -> ExactReal:
        return self * ExactReal.coerce(other).reciprocal()

    def __rtruediv__(self, other: Number) -> ExactReal:
        return ExactReal.coerce(other) * self.reciprocal()

    def __pow__(self, n: int) -> ExactReal:
        if n < 0:
            return self.reciprocal() ** (-n)
        result = ExactReal(Fraction(1))
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- ordering -------------------------------------------------------------

    def __lt__(self, other: Number) -> bool:
        return (self - ExactReal.coerce(other)).sign() < 0

    def __le__(self, other: Number) -> bool:
        return (self - ExactReal.coerce(other)).sign() <= 0

    def __gt__(self, other: Number) -> bool:
        return (self - ExactReal.coerce(other)).sign() > 0

    def __ge__(self, other: Number) -> bool:
        return (self - ExactReal.coerce(other)).sign() >= 0

    # -- conversions ----------------------------------------------------------

    def __float__(self) -> float:
        if self.d == 0:
            return float(self.a)
        return float(refine(self, 64))

    def __str__(self) -> str:
        if self.d == 0:
            return _fraction_text(self.a)
        surd = f"sqrt({self.d})" if self.b == 1 else f"{_fraction_text(self.b)}*sqrt({self.d})"
        if self.b == -1:
            surd = f"-sqrt({self.d})"
        if self.a == 0:
            return surd
        joiner = "" if surd.startswith("-") else "+"
        return f"{_fraction_text(self.a)}{joiner}{surd}"


def _fraction_text(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _sqrt_ball(d: int, w: int, prec: int) -> BallReal:
    """sqrt(d) enclosed in [s, s+1] / 2**w with s = isqrt(d * 4**w)."""
    s = math.isqrt(d << (2 * w))
    mid = from_man_exp(2 * s + 1, -(w + 1))
    rad = from_man_exp(1, -(w + 1))
    return BallReal._from_raw(mid, rad, prec)


def refine(x: ExactReal, bits: int) -> BallReal:
    """Enclosure of x with radius <= 2**(1 - bits) * max(1, |x|)."""
    if bits < 2:
        raise ArgumentError(f"bits must be >= 2, got {bits}")
    if x.is_rational:
        return BallReal.from_fraction(x.a, bits)

    work = bits + 8
    a_ball = BallReal.from_fraction(x.a, work)
    b_ball = BallReal.from_fraction(x.b, work)
    w = bits + 8 + x.b.numerator.bit_length() + x.b.denominator.bit_length()
    while True:
        value = a_ball + b_ball * _sqrt_ball(x.d, w, work)
        if _radius_within(value, bits):
            return value.with_prec(bits)
        w += 32


def _radius_within(value: BallReal, bits: int) -> bool:
    """radius <= 2**(1 - bits) * max(1, min |value|)"""
    lo, hi = value.lower_raw, value.upper_raw
    if mpf_cmp(lo, fzero) > 0:
        smallest = lo
    elif mpf_cmp(hi, fzero) < 0:
        smallest = hi
    else:
        smallest = fzero
    _sign_bit, man, exp, bc = smallest
    scale = max(0, exp + bc - 1) if man else 0
    # 2**scale <= max(1, |smallest|)
    limit = from_man_exp(1, 1 - bits + scale)
    return mpf_cmp(value.rad_raw, limit) <= 0
