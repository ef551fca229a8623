"""Polynomials with exact coefficients and their residues modulo one."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from ..errors import InvalidSpec, MixedFieldError, ParseError
from ..precision import BallReal, ExactReal, parse_exact, refine

logger = logging.getLogger(__name__)

Coefficient = Union[ExactReal, Fraction, int, str]


def _as_exact(value: Coefficient) -> ExactReal:
    if isinstance(value, str):
        return parse_exact(value)
    return ExactReal.coerce(value)


@dataclass(frozen=True)
class Polynomial:
    """t_0 + t_1 n + ... + t_k n^k with ExactReal coefficients.

    All surd coefficients must share one radicand, so evaluation at an
    integer stays exact. Trailing zero coefficients are trimmed; the zero
    polynomial keeps a single 0 coefficient.
    """

    coefficients: tuple[ExactReal, ...] = (ExactReal(Fraction(0)),)

    def __post_init__(self):
        coeffs = [_as_exact(c) for c in self.coefficients] or [ExactReal(Fraction(0))]
        while len(coeffs) > 1 and coeffs[-1].is_zero():
            coeffs.pop()
        field_d = next((c.d for c in coeffs if c.d), 0)
        try:
            coeffs = [c.in_field(field_d) for c in coeffs]
        except MixedFieldError as e:
            raise MixedFieldError(f"polynomial coefficients mix sqrt fields: {e}") from e
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def zero(cls) -> Polynomial:
        return cls()

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Coefficient]) -> Polynomial:
        return cls(tuple(coeffs))

    @classmethod
    def monomial(cls, t: Coefficient, k: int) -> Polynomial:
        """t * n**k."""
        if k < 0:
            raise InvalidSpec(f"monomial degree must be >= 0, got {k}")
        zero = ExactReal(Fraction(0))
        return cls((zero,) * k + (_as_exact(t),))

    @classmethod
    def parse(cls, text: str) -> Polynomial:
        """Comma separated coefficients t_0,t_1,... (empty text is the zero polynomial)."""
        if not text or not text.strip():
            return cls.zero()
        return cls(tuple(parse_exact(part) for part in split_top_level(text)))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def radicand(self) -> int:
        """Shared sqrt radicand of the coefficients, 0 when all are rational."""
        for c in self.coefficients:
            if c.d:
                return c.d
        return 0

    @property
    def is_rational(self) -> bool:
        return self.radicand == 0

    def is_zero(self) -> bool:
        return self.degree == 0 and self.coefficients[0].is_zero()

    def evaluate(self, n: Union[int, ExactReal]) -> ExactReal:
        """Exact value at n by Horner's rule."""
        result = ExactReal(Fraction(0))
        for c in reversed(self.coefficients):
            result = result * n + c
        return result

    __call__ = evaluate

    def evaluate_ball(self, n: int, prec: int) -> BallReal:
        result = BallReal.from_int(0, prec)
        for c in reversed(self.coefficients):
            result = result * n + refine(c, prec)
        return result

    def rational_parts(self) -> tuple[list[int], list[int], int, int]:
        """Integer coefficient lists (A, B) and denominator D with t_i = (A_i + B_i sqrt(d)) / D."""
        denominators = [c.a.denominator for c in self.coefficients]
        denominators += [c.b.denominator for c in self.coefficients]
        D = math.lcm(*denominators)
        A = [int(c.a * D) for c in self.coefficients]
        B = [int(c.b * D) for c in self.coefficients]
        return A, B, D, self.radicand

    def to_text(self) -> str:
        return ",".join(str(c) for c in self.coefficients)

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coefficients):
            if c.is_zero():
                continue
            coeff = str(c) if c.is_rational else f"({c})"
            if i == 0:
                terms.append(coeff)
            else:
                power = "n" if i == 1 else f"n^{i}"
                terms.append(power if str(c) == "1" else f"{coeff}*{power}")
        return " + ".join(terms) if terms else "0"


def split_top_level(text: str, sep: str = ",") -> list[str]:
    """Split on sep outside parentheses."""
    parts, depth, current = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced parentheses in {text!r}")
        if ch == sep and depth == 0:
            parts.append("".join(current).strip())
            current = []
        else:
            current.append(ch)
    if depth:
        raise ParseError(f"unbalanced parentheses in {text!r}")
    parts.append("".join(current).strip())
    if any(not p for p in parts):
        raise ParseError(f"empty item in {text!r}")
    return parts


def shift_difference_poly(q: Polynomial, h: int) -> Polynomial:
    """Q(n + h) - Q(n) as a polynomial of degree k - 1.

    T_i = -t_i + sum_{j=i..k} t_j * C(j, i) * h**(j - i). A constant Q gives
    the zero polynomial.
    """
    k = q.degree
    if k == 0:
        return Polynomial.zero()
    t = q.coefficients
    out = []
    for i in range(k):
        total = -t[i]
        for j in range(i, k + 1):
            total = total + t[j] * (math.comb(j, i) * h ** (j - i))
        out.append(total)
    return Polynomial(tuple(out))


# -- residues modulo one ---------------------------------------------------------


def floor_divmod(a: int, b: int) -> tuple[int, int]:
    """divmod(a, b) for b > 0; power-of-two divisors become a shift and a mask."""
    if b & (b - 1) == 0:
        return a >> (b.bit_length() - 1), a & (b - 1)
    return divmod(a, b)


def surd_floor_scaled(b: int, d: int, k: int) -> int:
    """Integer L with L < b*sqrt(d)*2**k < L + 1 for b != 0 and non-square d."""
    root = math.isqrt(b * b * d << (2 * k))
    return root if b > 0 else -(root + 1)


@dataclass(frozen=True)
class Residue:
    """Fractional part enclosed in [num, num + width) / den.

    width == 0 means the residue is exactly num / den.
    """

    num: int
    width: int
    den: int

    @property
    def is_exact(self) -> bool:
        return self.width == 0

    def to_float(self) -> float:
        if self.width == 0:
            value = self.num / self.den
        else:
            value = (2 * self.num + self.width) / (2 * self.den)
        return value if value < 1.0 else math.nextafter(1.0, 0.0)

    def error(self) -> Fraction:
        return Fraction(self.width, 2 * self.den)


def residue_mod_one(rational_num: int, rational_den: int, b: int, d: int, denom: int, k: int) -> Residue | None:
    """Residue of rational_num/rational_den + b*sqrt(d)/denom modulo one.

    Purely rational values are reduced exactly. With a surd term the value is
    enclosed on a 2**-k grid; None means the enclosure straddles an integer
    and k has to grow.
    """
    if b == 0 or d == 0:
        return Residue(floor_divmod(rational_num, rational_den)[1], 0, rational_den)
    scale = 1 << k
    # rational part in [rho, rho + 1) on the grid (exactly rho when divisible)
    rho, rem = floor_divmod(rational_num << k, rational_den)
    lsc = surd_floor_scaled(b, d, k)
    # the surd part lies strictly inside (lsc, lsc + 1) / denom
    low = lsc // denom
    high = -(-(lsc + 1) // denom)
    lo = rho + low
    width = high - low + (1 if rem else 0)
    # true value lies in (lo, lo + width), so floor is decided by lo and lo + width - 1
    if lo // scale != (lo + width - 1) // scale:
        return None
    return Residue(lo % scale, width, scale)


def poly_residue(a_coeffs: Sequence[int], b_coeffs: Sequence[int], denom: int, d: int, n: int, k: int) -> Residue | None:
    """Fractional part of Q(n) = (A(n) + B(n) sqrt(d)) / denom."""
    a_val = 0
    b_val = 0
    for a_i, b_i in zip(reversed(a_coeffs), reversed(b_coeffs)):
        a_val = a_val * n + a_i
        b_val = b_val * n + b_i
    return residue_mod_one(a_val, denom, b_val, d, denom, k)
