"""Grid diagnostic for the derivative-gap hypothesis of Koksma's metric theorem.

For y_n(x) = alpha * g(x) * x^n * prod_j (x^h_j - 1) the metric theorem
needs, on [a, eta], every difference y'_n - y'_m (n > m) to be monotone
with |y'_n - y'_m| >= L > 0. The check evaluates those differences with
ball jets on a finite grid. It certifies the grid points only, never the
continuum in between.
"""

import logging
from fractions import Fraction
from typing import Sequence, Union

from ..errors import ArgumentError, DomainError
from ..models import GRID_VERIFIED, GapPair, GapReport
from ..precision import BallReal, ExactReal, GExpr, Jet2, Pow1m, ball_pow, eval_g_jet, parse_exact, power_jet, refine

logger = logging.getLogger(__name__)

ExactLike = Union[ExactReal, Fraction, int, str]

DEFAULT_GAP_PREC = 128


def _exact(value: ExactLike) -> ExactReal:
    if isinstance(value, str):
        return parse_exact(value)
    return ExactReal.coerce(value)


def product_jet(x: BallReal, exponents: Sequence[int]) -> Jet2:
    """Jet of prod_j (x^h_j - 1); the empty product is 1."""
    jet = Jet2.constant(BallReal.from_int(1, x.prec))
    for h in exponents:
        jet = jet * Pow1m(h).jet(x)
    return jet


def y_jet(alpha: BallReal, g: GExpr, exponents: Sequence[int], x: BallReal, n: int) -> Jet2:
    """Jet of y_n(x) = alpha * g(x) * x^n * prod_j (x^h_j - 1)."""
    return (eval_g_jet(g, x) * power_jet(x, n) * product_jet(x, exponents)).scale(alpha)


def gap_grid(a: ExactLike, eta: ExactLike, grid_points: int, prec: int) -> list[BallReal]:
    """grid_points equally spaced enclosures from a to eta inclusive."""
    a_ball, eta_ball = refine(_exact(a), prec), refine(_exact(eta), prec)
    width = eta_ball - a_ball
    return [a_ball + width * Fraction(k, grid_points - 1) for k in range(grid_points)]


def _pairs(n_max: int, m_max: int) -> list[tuple[int, int]]:
    return [(n, m) for m in range(1, m_max + 1) for n in range(m + 1, n_max + 1)]


def _validate(n_max: int, m_max: int) -> None:
    if not m_max >= 1:
        raise ArgumentError(f"m_max must be >= 1, got {m_max}")
    if not n_max > m_max:
        raise ArgumentError(f"n_max must exceed m_max, got n_max={n_max}, m_max={m_max}")


def _summarize(n: int, m: int, values: list[BallReal]) -> GapPair:
    monotone = all(
        nxt.upper_float() >= prev.lower_float() for prev, nxt in zip(values, values[1:])
    )
    increasing = all(
        nxt.lower_float() >= prev.upper_float() for prev, nxt in zip(values, values[1:])
    )
    return GapPair(
        n=n,
        m=m,
        min_lower=min(v.lower_float() for v in values),
        max_upper=max(v.upper_float() for v in values),
        monotone=monotone,
        strictly_increasing=increasing,
    )


def koksma_gap_check(
    alpha: ExactLike,
    g: GExpr,
    exponents: Sequence[int],
    interval: tuple[ExactLike, ExactLike],
    n_max: int,
    m_max: int,
    grid_points: int = 64,
    prec: int = DEFAULT_GAP_PREC,
) -> GapReport:
    """Check monotonicity and the gap of y'_n - y'_m on a grid over [a, eta].

    Differences are oriented by the sign of alpha, so a negative alpha is
    checked for a non-increasing gap. A step along the grid counts as
    monotone unless the balls certify a decrease; strictly_increasing
    requires every step to be certified.

    Args:
        alpha: Nonzero exact multiplier
        g: Admissible g-expression
        exponents: Product exponents h_j
        interval: (a, eta) with 1 < a < eta
        n_max: Largest n
        m_max: Largest m, with 1 <= m_max < n_max
        grid_points: Number of equally spaced grid points (>= 16)
        prec: Working precision of the ball jets

    Returns:
        GapReport with monotone_ok, L_lower and one entry per pair (n, m)

    Raises:
        DomainError: a <= 1
        ArgumentError: bad interval, pair bounds or grid size
    """
    a, eta = _exact(interval[0]), _exact(interval[1])
    alpha = _exact(alpha)
    if not a > 1:
        raise DomainError(f"interval must start above 1, got a = {a}")
    if not eta > a:
        raise ArgumentError(f"interval needs a < eta, got ({a}, {eta})")
    if alpha.is_zero():
        raise ArgumentError("alpha must be nonzero")
    if grid_points < 16:
        raise ArgumentError(f"grid_points must be >= 16, got {grid_points}")
    _validate(n_max, m_max)

    orientation = 1 if alpha > 0 else -1
    alpha_ball = refine(alpha, prec)
    grid = gap_grid(a, eta, grid_points, prec)

    # y'_n at every grid point for n = 1..n_max
    derivatives = [
        {n: y_jet(alpha_ball, g, exponents, x, n).d1 for n in range(1, n_max + 1)}
        for x in grid
    ]

    pairs = []
    for n, m in _pairs(n_max, m_max):
        values = [(d[n] - d[m]) * orientation for d in derivatives]
        pairs.append(_summarize(n, m, values))

    report = GapReport(
        variable="beta",
        interval=(str(a), str(eta)),
        grid_points=grid_points,
        pairs=pairs,
        monotone_ok=all(p.monotone for p in pairs),
        strictly_increasing=all(p.strictly_increasing for p in pairs),
        L_lower=min(p.min_lower for p in pairs),
        certificate=GRID_VERIFIED,
    )
    logger.info(
        "Gap check on [%s, %s]: monotone_ok=%s L_lower=%.6g over %d pairs",
        a, eta, report.monotone_ok, report.L_lower, len(pairs),
    )
    return report


def koksma_gap_check_alpha(
    beta: ExactLike,
    g: GExpr,
    exponents: Sequence[int],
    n_max: int,
    m_max: int,
    interval: tuple[ExactLike, ExactLike] = (0, 1),
    prec: int = DEFAULT_GAP_PREC,
) -> GapReport:
    """The same hypothesis with alpha as the variable and beta fixed.

    y_n(alpha) = alpha * g(beta) * beta^n * prod_j (beta^h_j - 1) is linear in
    alpha, so y'_n - y'_m = g(beta) * prod_j (beta^h_j - 1) * (beta^n - beta^m)
    is constant: monotone everywhere, with the gap given by its value.
    """
    beta = _exact(beta)
    if not beta > 1:
        raise DomainError(f"beta must be > 1, got {beta}")
    _validate(n_max, m_max)
    beta_ball = refine(beta, prec)
    base = eval_g_jet(g, beta_ball).value * product_jet(beta_ball, exponents).value
    pairs = []
    for n, m in _pairs(n_max, m_max):
        gap = base * (ball_pow(beta_ball, n) - ball_pow(beta_ball, m))
        pairs.append(
            GapPair(
                n=n,
                m=m,
                min_lower=gap.lower_float(),
                max_upper=gap.upper_float(),
                monotone=True,
                strictly_increasing=False,
            )
        )
    return GapReport(
        variable="alpha",
        interval=(str(_exact(interval[0])), str(_exact(interval[1]))),
        grid_points=1,
        pairs=pairs,
        monotone_ok=True,
        strictly_increasing=False,
        L_lower=min(p.min_lower for p in pairs),
        certificate="constant in alpha",
    )
