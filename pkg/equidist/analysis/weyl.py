"""Weyl exponential sums and the u.d. verdict."""

import logging
import math
from typing import Iterable, Optional

from ..config import EquidistSettings
from ..errors import ArgumentError
from ..models import UD_CONSISTENT, UD_INCONSISTENT, WeylEntry, WeylReport
from ..sequences import ModOneSample, unit_phases
from .summation import compensated_sum, normalize_checkpoints, prefix_sums

logger = logging.getLogger(__name__)


def weyl_sum(x: ModOneSample, h: int) -> complex:
    """(1/N) * sum_n exp(2 pi i h x_n).

    Raises:
        ArgumentError: h == 0 (the average is trivially 1)
    """
    if h == 0:
        raise ArgumentError("Weyl sums need a nonzero frequency h")
    if len(x) == 0:
        raise ArgumentError("Weyl sum of an empty sample")
    return compensated_sum(unit_phases(x.values, h)) / len(x)


def ud_test(
    x: ModOneSample,
    h_max: int,
    checkpoints: Optional[Iterable[int]] = None,
    threshold: Optional[float] = None,
    settings: Optional[EquidistSettings] = None,
) -> WeylReport:
    """Weyl sums for h = 1..H at each checkpoint N.

    The verdict is "consistent with u.d." when max_h |S_N(h)| at the final
    checkpoint is below the threshold (default weyl_threshold_scale / sqrt(N)).
    """
    settings = settings or EquidistSettings()
    if h_max < 1:
        raise ArgumentError(f"H must be >= 1, got {h_max}")
    points = normalize_checkpoints(checkpoints, len(x))
    final = points[-1]
    if threshold is None:
        threshold = settings.weyl_threshold_scale / math.sqrt(final)

    entries = []
    for h in range(1, h_max + 1):
        sums = prefix_sums(unit_phases(x.values, h), points)
        for n, total in zip(points, sums):
            avg = total / n
            entries.append(WeylEntry(h=h, n=n, real=avg.real, imag=avg.imag, magnitude=abs(avg)))

    max_magnitude = max(e.magnitude for e in entries if e.n == final)
    consistent = max_magnitude < threshold
    logger.debug("ud_test N=%d H=%d max|S|=%.3e threshold=%.3e", final, h_max, max_magnitude, threshold)
    return WeylReport(
        n=final,
        h_max=h_max,
        checkpoints=points,
        entries=entries,
        threshold=threshold,
        max_magnitude=max_magnitude,
        consistent=consistent,
        verdict=UD_CONSISTENT if consistent else UD_INCONSISTENT,
    )
