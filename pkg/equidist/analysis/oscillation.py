"""Oscillation averages of complex sequences against polynomial phases.

A bounded-growth sequence c is oscillating of order m when
(1/N) * sum c_n exp(2 pi i P(n)) -> 0 for every real polynomial P of degree
<= m (strong version) or for every monomial phase t * n^k, k <= m (weak
version). The engines here measure those averages at N-checkpoints; they
make no claim about the rate.
"""

import logging
from typing import Iterable, Optional, Sequence

import numpy as np

from ..config import EquidistSettings
from ..errors import ArgumentError
from ..models import GrowthReport, OscillationEntry, OscillationReport, ProfileReport
from ..precision import ExactReal
from ..sequences import ComplexSequence, Polynomial, poly_mod_one, unit_phases
from .summation import normalize_checkpoints, prefix_sums

logger = logging.getLogger(__name__)

# tolerated growth between consecutive checkpoints for the "bounded" flag
GROWTH_TOLERANCE = 1.10

# default verdict threshold for |average| at the final checkpoint
OSCILLATION_THRESHOLD = 0.05


def growth_condition(c: ComplexSequence, lam: float, checkpoints: Optional[Iterable[int]] = None) -> GrowthReport:
    """(1/N) * sum |c_n|^lambda at each checkpoint.

    bounded is set when, after the first checkpoint, no value exceeds its
    predecessor by more than 10%.

    Raises:
        ArgumentError: lambda <= 1
    """
    if not lam > 1:
        raise ArgumentError(f"growth exponent must be > 1, got {lam}")
    points = normalize_checkpoints(checkpoints, len(c))
    powers = np.abs(c.terms) ** lam
    values = [total.real / n for n, total in zip(points, prefix_sums(powers, points))]
    bounded = all(v <= GROWTH_TOLERANCE * prev for prev, v in zip(values, values[1:]))
    return GrowthReport(lam=float(lam), checkpoints=points, values=values, bounded=bounded)


def _decay_slope(points: Sequence[int], magnitudes: Sequence[float]) -> Optional[float]:
    """Least-squares slope of log|avg| against log N (descriptive only)."""
    if len(points) < 2 or min(magnitudes) <= 0.0:
        return None
    slope, _intercept = np.polyfit(np.log(points), np.log(magnitudes), 1)
    return float(slope)


def oscillation_avg(
    c: ComplexSequence,
    phase: Polynomial,
    checkpoints: Optional[Iterable[int]] = None,
    settings: Optional[EquidistSettings] = None,
) -> OscillationReport:
    """(1/N) * sum_{n<=N} c_n exp(2 pi i P(n)) at each checkpoint.

    Phases {P(n)} come from poly_mod_one, so surd coefficients are reduced
    with a certified error before the float64 trigonometry. Any real t is
    accepted in t * n^k; only P(n) modulo one matters.
    """
    settings = settings or EquidistSettings()
    points = normalize_checkpoints(checkpoints, len(c))
    n = points[-1]
    phases = poly_mod_one(phase, n, settings)
    terms = c.terms[:n] * unit_phases(phases.values)
    entries = []
    for point, total in zip(points, prefix_sums(terms, points)):
        avg = total / point
        entries.append(OscillationEntry(n=point, real=avg.real, imag=avg.imag, magnitude=abs(avg)))
    magnitudes = [e.magnitude for e in entries]
    growth = [growth_condition(c.prefix(n), lam, points) for lam in settings.growth_lambdas]
    report = OscillationReport(
        phase=str(phase),
        sequence=c.label,
        bound=c.bound,
        checkpoints=points,
        entries=entries,
        growth=growth,
        decay_slope=_decay_slope(points, magnitudes),
        non_increasing=magnitudes[-1] <= magnitudes[0],
        phase_error=phases.certified_error,
    )
    logger.debug("Oscillation average against %s: |avg| = %.3e at N=%d", phase, magnitudes[-1], n)
    return report


def oscillation_profile(
    c: ComplexSequence,
    order: int,
    ts: Sequence[ExactReal],
    checkpoints: Optional[Iterable[int]] = None,
    strong: bool = False,
    polynomials: Sequence[Polynomial] = (),
    threshold: float = OSCILLATION_THRESHOLD,
    lam: float = 2.0,
    settings: Optional[EquidistSettings] = None,
) -> ProfileReport:
    """Order-m oscillation test.

    The weak test uses the monomial phases t * n^k for every t in ts and
    k = 1..m. The strong test adds the given polynomials, each of degree
    <= m. The sequence is reported as oscillating when the growth condition
    holds for lam and every final |average| is below threshold.
    """
    if order < 1:
        raise ArgumentError(f"oscillation order must be >= 1, got {order}")
    if strong and not polynomials:
        raise ArgumentError("the strong test needs at least one general polynomial phase")
    too_high = [str(p) for p in polynomials if p.degree > order]
    if too_high:
        raise ArgumentError(f"phase polynomials exceed degree {order}: {too_high}")

    phases = [Polynomial.monomial(t, k) for t in ts for k in range(1, order + 1)]
    if strong:
        phases.extend(polynomials)
    reports = [oscillation_avg(c, p, checkpoints, settings) for p in phases]
    growth = growth_condition(c, lam, checkpoints)
    worst = max((r.final_magnitude for r in reports), default=0.0)
    oscillating = growth.bounded and worst < threshold
    kind = "strong" if strong else "weak"
    verdict = (
        f"{kind} order-{order} oscillation consistent (max |avg| {worst:.3g} < {threshold})"
        if oscillating
        else f"{kind} order-{order} oscillation not confirmed (max |avg| {worst:.3g}, growth bounded: {growth.bounded})"
    )
    logger.info("Oscillation profile: %s", verdict)
    return ProfileReport(
        order=order,
        strong=strong,
        threshold=threshold,
        reports=reports,
        growth=growth,
        oscillating=oscillating,
        verdict=verdict,
    )
