"""Compensated, fixed-order summation of long float and complex arrays.

Terms are summed in fixed blocks of SUM_BLOCK elements with numpy's pairwise
sum; block totals are folded into a Neumaier accumulator. Block boundaries
depend only on the index, so any prefix sum is reproduced bit for bit no
matter how the work was scheduled.
"""

from __future__ import annotations

from typing import Iterable, Sequence, Union

import numpy as np

from ..errors import ArgumentError

SUM_BLOCK = 4096


def two_sum(a: float, b: float) -> tuple[float, float]:
    """Error-free transformation: a + b == s + t exactly."""
    s = a + b
    bp = s - a
    t = (a - (s - bp)) + (b - bp)
    return s, t


class CompensatedSum:
    """Running Neumaier sum of real or complex values.

    Real and imaginary parts carry separate compensation terms.
    """

    def __init__(self):
        self.re = 0.0
        self.re_carry = 0.0
        self.im = 0.0
        self.im_carry = 0.0

    def add(self, value: Union[float, complex]) -> None:
        value = complex(value)
        self.re, err = two_sum(self.re, value.real)
        self.re_carry += err
        self.im, err = two_sum(self.im, value.imag)
        self.im_carry += err

    def add_block(self, block: np.ndarray) -> None:
        """Add the pairwise sum of one block."""
        if block.size:
            self.add(complex(np.sum(block)))

    @property
    def value(self) -> complex:
        return complex(self.re + self.re_carry, self.im + self.im_carry)

    @property
    def real(self) -> float:
        return self.re + self.re_carry


def compensated_sum(terms: np.ndarray) -> complex:
    """Sum of all terms in fixed block order."""
    acc = CompensatedSum()
    for start in range(0, len(terms), SUM_BLOCK):
        acc.add_block(terms[start : start + SUM_BLOCK])
    return acc.value


def prefix_sums(terms: np.ndarray, checkpoints: Sequence[int]) -> list[complex]:
    """Sums of terms[:N] for each N in an increasing checkpoint list.

    Each result equals compensated_sum(terms[:N]) exactly.
    """
    acc = CompensatedSum()
    done = 0  # terms consumed in whole blocks
    out = []
    for n in checkpoints:
        while done + SUM_BLOCK <= n:
            acc.add_block(terms[done : done + SUM_BLOCK])
            done += SUM_BLOCK
        if done == n:
            out.append(acc.value)
            continue
        partial = CompensatedSum()
        partial.re, partial.re_carry = acc.re, acc.re_carry
        partial.im, partial.im_carry = acc.im, acc.im_carry
        partial.add_block(terms[done:n])
        out.append(partial.value)
    return out


def normalize_checkpoints(checkpoints: Iterable[int] | None, n: int) -> list[int]:
    """Sorted unique checkpoints within 1..N; the default is [N]."""
    if checkpoints is None:
        return [n]
    points = sorted({int(c) for c in checkpoints})
    if not points:
        return [n]
    if points[0] < 1 or points[-1] > n:
        raise ArgumentError(f"checkpoints must lie in 1..{n}, got {points}")
    return points
