"""Star discrepancy of a sample in [0, 1).

D*_N = sup over a in (0, 1] of |#{n : x_n < a} / N - a|, computed by the
closed form over the sorted sample. D*_N is also the Kolmogorov-Smirnov
statistic of the sample against U[0, 1), so the report carries the exact
KS p-value as a side diagnostic.
"""

import numpy as np
from scipy.stats import kstwo

from ..errors import ArgumentError, DomainError
from ..models import DiscrepancyReport
from ..sequences import ModOneSample


def _as_array(x) -> np.ndarray:
    if isinstance(x, ModOneSample):
        values = x.values
    else:
        values = np.asarray(x, dtype=np.float64).ravel()
        outside = ~((values >= 0.0) & (values < 1.0))
        if np.any(outside):
            first = values[int(np.argmax(outside))]
            raise DomainError(f"{int(np.count_nonzero(outside))} sample values outside [0, 1), first {first!r}")
    if values.size == 0:
        raise ArgumentError("star discrepancy of an empty sample")
    return values


def star_discrepancy(x) -> DiscrepancyReport:
    """max_i max(i/N - x_(i), x_(i) - (i-1)/N) over the stable sort."""
    values = _as_array(x)
    n = values.size
    ordered = np.sort(values, kind="stable")
    ranks = np.arange(1, n + 1, dtype=np.float64)
    above = ranks / n - ordered  # empirical CDF above the diagonal just after x_(i)
    below = ordered - (ranks - 1) / n  # diagonal above the empirical CDF at x_(i)
    i_above = int(np.argmax(above))
    i_below = int(np.argmax(below))
    if above[i_above] >= below[i_below]:
        d_star, index, side = float(above[i_above]), i_above, "above"
    else:
        d_star, index, side = float(below[i_below]), i_below, "below"
    return DiscrepancyReport(
        n=n,
        d_star=d_star,
        argmax_index=index + 1,
        argmax_value=float(ordered[index]),
        argmax_side=side,
        ks_pvalue=float(kstwo.sf(d_star, n)),
    )


def star_discrepancy_bruteforce(x) -> float:
    """Oracle: sup of |count / N - a| over every candidate endpoint a, O(N^2).

    The supremum is attained at a sample point, either at a = x_j itself
    (points strictly below) or in the limit a -> x_j from the right (points
    at or below), or at a = 1.
    """
    values = _as_array(x)
    n = values.size
    best = 0.0
    for a in list(values) + [1.0]:
        strictly_below = np.count_nonzero(values < a)
        at_or_below = np.count_nonzero(values <= a)
        best = max(best, abs(strictly_below / n - a), abs(at_or_below / n - a))
    return float(best)
