"""Midpoint-radius ball arithmetic on mpmath's raw mpf layer.

A ball [m - r, m + r] always contains the true value of the computation that
produced it. Midpoints are rounded with directed rounding at the working
precision and the rounding gap is folded into the radius, so exact inputs
(integers, dyadic rationals) stay exact: 2**10 has radius zero.

Radii are carried at a small fixed precision and always rounded up.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

import mpmath
from mpmath.libmp import (
    fone,
    from_int,
    from_man_exp,
    from_rational,
    fzero,
    mpf_abs,
    mpf_add,
    mpf_cmp,
    mpf_div,
    mpf_mul,
    mpf_neg,
    mpf_shift,
    mpf_sub,
    round_ceiling,
    round_floor,
    round_nearest,
    to_float,
    to_int,
    to_rational,
)

from ..errors import AmbiguousBoundary, DomainError

RADIUS_PREC = 32

_make_mpf = mpmath.mp.make_mpf

Operand = Union["BallReal", int, Fraction]


def _is_zero(raw) -> bool:
    return raw == fzero


def _magnitude(raw) -> int:
    """Exponent e with |x| < 2**e for a nonzero raw mpf."""
    _sign, man, exp, bc = raw
    return exp + bc


def _up_add(a, b):
    return mpf_add(a, b, RADIUS_PREC, round_ceiling)


def _up_mul(a, b):
    return mpf_mul(a, b, RADIUS_PREC, round_ceiling)


def _raw_max(a, b):
    return a if mpf_cmp(a, b) >= 0 else b


def _raw_min(a, b):
    return a if mpf_cmp(a, b) <= 0 else b


def _directed(op, a, b, prec):
    """Apply a libmp binary op, returning (midpoint, rounding gap).

    The op is evaluated with floor and ceiling rounding; equal results mean
    the operation was exact.
    """
    lo = op(a, b, prec, round_floor)
    hi = op(a, b, prec, round_ceiling)
    if lo == hi:
        return lo, fzero
    return lo, mpf_sub(hi, lo, RADIUS_PREC, round_ceiling)


def _dyadic_raw(value: Fraction):
    """Exact raw mpf for a dyadic rational, or None."""
    den = value.denominator
    if den & (den - 1):
        return None
    return from_man_exp(value.numerator, -(den.bit_length() - 1))


@dataclass(frozen=True)
class BallReal:
    """Enclosure ``midpoint ± radius`` at a working precision in bits."""

    midpoint: mpmath.mpf
    radius: mpmath.mpf
    prec: int

    # -- construction -------------------------------------------------------

    @classmethod
    def _from_raw(cls, mid, rad, prec: int) -> BallReal:
        return cls(_make_mpf(mid), _make_mpf(rad), prec)

    @classmethod
    def from_int(cls, n: int, prec: int = 64) -> BallReal:
        return cls._from_raw(from_int(n), fzero, prec)

    @classmethod
    def from_fraction(cls, value: Fraction, prec: int = 64) -> BallReal:
        """Enclose a rational; dyadic rationals are represented exactly."""
        value = Fraction(value)
        raw = _dyadic_raw(value)
        if raw is not None:
            return cls._from_raw(raw, fzero, prec)
        lo = from_rational(value.numerator, value.denominator, prec + 1, round_floor)
        hi = from_rational(value.numerator, value.denominator, prec + 1, round_ceiling)
        return cls._from_raw(lo, mpf_sub(hi, lo, RADIUS_PREC, round_ceiling), prec)

    @classmethod
    def from_endpoints(cls, lo, hi, prec: int) -> BallReal:
        """Smallest convenient ball containing the raw interval [lo, hi]."""
        if lo == hi:
            return cls._from_raw(lo, fzero, prec)
        mid = mpf_shift(mpf_add(lo, hi, prec + 1, round_nearest), -1)
        rad = _raw_max(
            mpf_sub(hi, mid, RADIUS_PREC, round_ceiling),
            mpf_sub(mid, lo, RADIUS_PREC, round_ceiling),
        )
        return cls._from_raw(mid, rad, prec)

    @classmethod
    def coerce(cls, value: Operand, prec: int) -> BallReal:
        if isinstance(value, BallReal):
            return value
        if isinstance(value, int):
            return cls.from_int(value, prec)
        if isinstance(value, Fraction):
            return cls.from_fraction(value, prec)
        raise TypeError(f"cannot convert {type(value).__name__} to BallReal")

    # -- raw views ------------------------------------------------------------

    @property
    def mid_raw(self):
        return self.midpoint._mpf_

    @property
    def rad_raw(self):
        return self.radius._mpf_

    @property
    def lower_raw(self):
        if _is_zero(self.rad_raw):
            return self.mid_raw
        return mpf_sub(self.mid_raw, self.rad_raw, self.prec, round_floor)

    @property
    def upper_raw(self):
        if _is_zero(self.rad_raw):
            return self.mid_raw
        return mpf_add(self.mid_raw, self.rad_raw, self.prec, round_ceiling)

    @property
    def lower(self) -> mpmath.mpf:
        return _make_mpf(self.lower_raw)

    @property
    def upper(self) -> mpmath.mpf:
        return _make_mpf(self.upper_raw)

    @property
    def is_exact(self) -> bool:
        return _is_zero(self.rad_raw)

    def lower_float(self) -> float:
        """Float that is <= every point of the ball."""
        return to_float(self.lower_raw, rnd=round_floor)

    def upper_float(self) -> float:
        """Float that is >= every point of the ball."""
        return to_float(self.upper_raw, rnd=round_ceiling)

    def __float__(self) -> float:
        return to_float(self.mid_raw)

    def radius_float(self) -> float:
        return to_float(self.rad_raw, rnd=round_ceiling)

    # -- predicates -----------------------------------------------------------

    def certainly_positive(self) -> bool:
        return mpf_cmp(self.lower_raw, fzero) > 0

    def certainly_greater_than(self, value: int) -> bool:
        return mpf_cmp(self.lower_raw, from_int(value)) > 0

    def excludes_zero(self) -> bool:
        return mpf_cmp(self.lower_raw, fzero) > 0 or mpf_cmp(self.upper_raw, fzero) < 0

    def contains(self, value: Union[Fraction, int]) -> bool:
        """Exact membership test for a rational."""
        value = Fraction(value)
        lo = Fraction(*to_rational(self.lower_raw))
        hi = Fraction(*to_rational(self.upper_raw))
        return lo <= value <= hi

    def overlaps(self, other: BallReal) -> bool:
        return (
            mpf_cmp(self.lower_raw, other.upper_raw) <= 0
            and mpf_cmp(other.lower_raw, self.upper_raw) <= 0
        )

    def hull(self, other: BallReal) -> BallReal:
        prec = max(self.prec, other.prec)
        return BallReal.from_endpoints(
            _raw_min(self.lower_raw, other.lower_raw),
            _raw_max(self.upper_raw, other.upper_raw),
            prec,
        )

    def with_prec(self, prec: int) -> BallReal:
        return BallReal(self.midpoint, self.radius, prec)

    # -- arithmetic -----------------------------------------------------------

    def __neg__(self) -> BallReal:
        return BallReal._from_raw(mpf_neg(self.mid_raw), self.rad_raw, self.prec)

    def __add__(self, other: Operand) -> BallReal:
        if not isinstance(other, BallReal):
            other = BallReal.coerce(other, self.prec)
        prec = max(self.prec, other.prec)
        mid, gap = _directed(mpf_add, self.mid_raw, other.mid_raw, prec)
        rad = _up_add(_up_add(self.rad_raw, other.rad_raw), gap)
        return BallReal._from_raw(mid, rad, prec)

    __radd__ = __add__

    def __sub__(self, other: Operand) -> BallReal:
        if not isinstance(other, BallReal):
            other = BallReal.coerce(other, self.prec)
        return self + (-other)

    def __rsub__(self, other: Operand) -> BallReal:
        return BallReal.coerce(other, self.prec) - self

    def __mul__(self, other: Operand) -> BallReal:
        if not isinstance(other, BallReal):
            other = BallReal.coerce(other, self.prec)
        prec = max(self.prec, other.prec)
        mid, gap = _directed(mpf_mul, self.mid_raw, other.mid_raw, prec)
        rad = gap
        if not _is_zero(other.rad_raw):
            rad = _up_add(rad, _up_mul(mpf_abs(self.mid_raw), other.rad_raw))
        if not _is_zero(self.rad_raw):
            rad = _up_add(rad, _up_mul(mpf_abs(other.mid_raw), self.rad_raw))
            if not _is_zero(other.rad_raw):
                rad = _up_add(rad, _up_mul(self.rad_raw, other.rad_raw))
        return BallReal._from_raw(mid, rad, prec)

    __rmul__ = __mul__

    def reciprocal(self) -> BallReal:
        if not self.excludes_zero():
            raise ZeroDivisionError("ball contains zero")
        lo = mpf_div(fone, self.upper_raw, self.prec, round_floor)
        hi = mpf_div(fone, self.lower_raw, self.prec, round_ceiling)
        return BallReal.from_endpoints(lo, hi, self.prec)

    def __truediv__(self, other: Operand) -> BallReal:
        if isinstance(other, int) and other > 0 and not other & (other - 1):
            # powers of two shift exactly
            shift = other.bit_length() - 1
            return BallReal._from_raw(
                mpf_shift(self.mid_raw, -shift), mpf_shift(self.rad_raw, -shift), self.prec
            )
        if not isinstance(other, BallReal):
            other = BallReal.coerce(other, self.prec)
        return self * other.reciprocal()

    def __rtruediv__(self, other: Operand) -> BallReal:
        return BallReal.coerce(other, self.prec) * self.reciprocal()

    def __pow__(self, n: int) -> BallReal:
        return ball_pow(self, n)

    def __repr__(self) -> str:
        return f"BallReal({mpmath.nstr(self.midpoint, 20)} ± {mpmath.nstr(self.radius, 3)})"


@dataclass(frozen=True)
class UnitValue:
    """A residue modulo one in [0, 1) with a certified error bound."""

    value: mpmath.mpf
    error: mpmath.mpf

    def __float__(self) -> float:
        x = to_float(self.value._mpf_)
        # float rounding may land on 1.0 for residues within half an ulp of 1
        return x if x < 1.0 else 0.9999999999999999

    def error_float(self) -> float:
        return to_float(self.error._mpf_, rnd=round_ceiling)


def ball_pow(b: BallReal, n: int) -> BallReal:
    """Enclosure of b**n by binary exponentiation."""
    if n < 0:
        return ball_pow(b, -n).reciprocal()
    if mpf_cmp(b.mid_raw, fzero) <= 0:
        raise DomainError("ball_pow expects a positive base")
    result = BallReal.from_int(1, b.prec)
    base = b
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


def frac_mod_one(x: BallReal, target_bits: int = 60) -> UnitValue:
    """Certified fractional part of a ball.

    Raises AmbiguousBoundary when the ball straddles an integer or when its
    radius is wider than 2**-target_bits; in both cases the caller has to
    refine upstream precision.
    """
    lo = x.lower_raw
    hi = x.upper_raw
    floor_lo = to_int(lo, round_floor)
    floor_hi = to_int(hi, round_floor)
    if floor_lo != floor_hi:
        raise AmbiguousBoundary(f"enclosure straddles integer {floor_hi}")
    if not _is_zero(x.rad_raw) and _magnitude(x.rad_raw) > -target_bits:
        raise AmbiguousBoundary(
            f"radius 2^{_magnitude(x.rad_raw)} exceeds 2^-{target_bits}"
        )
    value = mpf_sub(x.mid_raw, from_int(floor_lo))
    return UnitValue(_make_mpf(value), x.radius)


# -- exponential ----------------------------------------------------------------


def _exp_taylor(f_raw, prec: int) -> BallReal:
    """e**f for an exact f in [0, 1] with a Lagrange remainder term."""
    work = prec + 16
    fb = BallReal._from_raw(f_raw, fzero, work)
    eps = from_man_exp(1, -work)
    total = BallReal.from_int(1, work)
    term = BallReal.from_int(1, work)
    j = 0
    while True:
        j += 1
        term = term * fb / j
        if mpf_cmp(term.upper_raw, eps) < 0:
            break
        total = total + term
    # remainder <= e**f * f**j / j! < 3 * term_j
    tail = mpf_mul(from_int(3), term.upper_raw, RADIUS_PREC, round_ceiling)
    remainder = BallReal.from_endpoints(fzero, tail, work)
    return (total + remainder).with_prec(prec)


@lru_cache(maxsize=64)
def euler_ball(prec: int) -> BallReal:
    """Enclosure of e at the given precision."""
    return _exp_taylor(fone, prec)


def _exp_point(t_raw, prec: int) -> BallReal:
    k = to_int(t_raw, round_floor)
    frac = mpf_sub(t_raw, from_int(k))
    guard = prec + abs(k).bit_length() + 8
    series = _exp_taylor(frac, guard)
    if k == 0:
        return series.with_prec(prec)
    ek = ball_pow(euler_ball(guard), abs(k))
    if k < 0:
        ek = ek.reciprocal()
    return (ek * series).with_prec(prec)


def ball_exp(x: BallReal) -> BallReal:
    """Enclosure of exp over the whole ball, using monotonicity."""
    if x.is_exact:
        return _exp_point(x.mid_raw, x.prec)
    lo = _exp_point(x.lower_raw, x.prec)
    hi = _exp_point(x.upper_raw, x.prec)
    return BallReal.from_endpoints(lo.lower_raw, hi.upper_raw, x.prec)
