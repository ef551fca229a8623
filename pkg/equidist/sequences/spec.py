"""SequenceSpec: one member of the family alpha * beta^n * g(beta) * prod(beta^h - 1) + Q(n)."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping, Optional, Union

from ..errors import InvalidSpec, MixedFieldError, ParseError
from ..precision import BallReal, Const, ExactReal, GExpr, ball_pow, eval_g_jet, parse_exact, parse_gexpr, refine
from .polynomial import Polynomial, shift_difference_poly, split_top_level

logger = logging.getLogger(__name__)

SPEC_KEYS = ("alpha", "beta", "g", "hs", "q_coeffs")


@dataclass(frozen=True)
class SequenceSpec:
    """Parameters of x_n = alpha * g(beta) * prod_j (beta^h_j - 1) * beta^n + Q(n)."""

    alpha: ExactReal
    beta: ExactReal
    g: GExpr = field(default_factory=lambda: Const(Fraction(1)))
    product_exponents: tuple[int, ...] = ()
    q: Polynomial = field(default_factory=Polynomial.zero)

    def __post_init__(self):
        alpha = _exact(self.alpha, "alpha")
        beta = _exact(self.beta, "beta")
        if alpha.is_zero():
            raise InvalidSpec("alpha must be nonzero")
        if beta <= 1:
            raise InvalidSpec(f"beta must be > 1, got {beta}")
        exponents = tuple(int(h) for h in self.product_exponents)
        if any(h < 1 for h in exponents):
            raise InvalidSpec(f"product exponents must be positive integers, got {exponents}")
        g = parse_gexpr(self.g) if isinstance(self.g, str) else self.g
        q = Polynomial.parse(self.q) if isinstance(self.q, str) else self.q
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "product_exponents", exponents)
        object.__setattr__(self, "q", q)

    # -- prefactor ------------------------------------------------------------

    def prefactor_exact(self) -> Optional[ExactReal]:
        """c = alpha * g(beta) * prod(beta^h - 1) when it is exactly representable."""
        g_value = self.g.exact_value(self.beta)
        if g_value is None:
            return None
        try:
            c = self.alpha * g_value
            for h in self.product_exponents:
                c = c * (self.beta**h - 1)
        except MixedFieldError:
            return None
        return c

    def prefactor_ball(self, prec: int) -> BallReal:
        """Enclosure of c at the given precision."""
        beta = refine(self.beta, prec)
        c = refine(self.alpha, prec) * eval_g_jet(self.g, beta).value
        for h in self.product_exponents:
            c = c * (ball_pow(beta, h) - 1)
        return c

    def uses_exact_path(self) -> bool:
        """Rational beta and rational prefactor allow the integer-stream generator."""
        if not self.beta.is_rational:
            return False
        c = self.prefactor_exact()
        return c is not None and c.is_rational

    # -- derived specs ----------------------------------------------------------

    def with_difference(self, h: int) -> SequenceSpec:
        """Spec of the gap-h difference sequence x_{n+h} - x_n."""
        if h < 1:
            raise InvalidSpec(f"difference step must be >= 1, got {h}")
        return SequenceSpec(
            alpha=self.alpha,
            beta=self.beta,
            g=self.g,
            product_exponents=self.product_exponents + (h,),
            q=shift_difference_poly(self.q, h),
        )

    def with_parameter(self, name: str, value: ExactReal) -> SequenceSpec:
        """Copy with alpha or beta replaced (used by the scans)."""
        if name not in ("alpha", "beta"):
            raise InvalidSpec(f"unknown scan parameter {name!r}")
        values = {"alpha": self.alpha, "beta": self.beta, name: value}
        return SequenceSpec(values["alpha"], values["beta"], self.g, self.product_exponents, self.q)

    # -- serialization ----------------------------------------------------------

    def to_dict(self) -> dict[str, str]:
        return {
            "alpha": str(self.alpha),
            "beta": str(self.beta),
            "g": str(self.g),
            "hs": ",".join(str(h) for h in self.product_exponents),
            "q_coeffs": self.q.to_text(),
        }

    def to_text(self) -> str:
        """Flat key = value lines."""
        return "".join(f"{key} = {value}\n" for key, value in self.to_dict().items())

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> SequenceSpec:
        unknown = set(data) - set(SPEC_KEYS)
        if unknown:
            raise ParseError(f"unknown spec keys: {sorted(unknown)}")
        if "alpha" not in data or "beta" not in data:
            raise ParseError("spec needs both alpha and beta")
        return cls(
            alpha=_exact(data["alpha"], "alpha"),
            beta=_exact(data["beta"], "beta"),
            g=parse_gexpr(str(data.get("g") or "1")),
            product_exponents=parse_exponents(data.get("hs", "")),
            q=Polynomial.parse(str(data.get("q_coeffs") or "")),
        )

    @classmethod
    def from_text(cls, text: str) -> SequenceSpec:
        return cls.from_mapping(parse_key_values(text))

    def __str__(self) -> str:
        hs = ",".join(str(h) for h in self.product_exponents) or "-"
        return f"alpha={self.alpha} beta={self.beta} g={self.g} hs={hs} Q={self.q}"


def _exact(value: Union[ExactReal, str, int, Fraction], name: str) -> ExactReal:
    if isinstance(value, ExactReal):
        return value
    if isinstance(value, str):
        return parse_exact(value)
    if isinstance(value, (int, Fraction)):
        return ExactReal(Fraction(value))
    raise InvalidSpec(f"{name} must be an exact number, got {type(value).__name__}")


def parse_exponents(value: Union[str, list, tuple, None]) -> tuple[int, ...]:
    """'1,2,3' or a list of ints."""
    if value is None or value == "":
        return ()
    if isinstance(value, (list, tuple)):
        return tuple(int(h) for h in value)
    try:
        return tuple(int(part) for part in split_top_level(str(value)))
    except ValueError as e:
        raise ParseError(f"bad exponent list {value!r}") from e


def parse_key_values(text: str) -> dict[str, str]:
    """Parse flat ``key = value`` text; '#' starts a comment, '-' in keys becomes '_'."""
    data: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"line {lineno}: expected key = value, got {line!r}")
        key, value = line.split("=", 1)
        key = key.strip().replace("-", "_")
        if not key:
            raise ParseError(f"line {lineno}: empty key")
        data[key] = value.strip()
    return data
