"""Sample containers shared by the generators and the analysis engines."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING, Any, Optional, Sequence

import numpy as np

from ..errors import ArgumentError

if TYPE_CHECKING:
    from .spec import SequenceSpec


@dataclass(frozen=True)
class SampleMeta:
    """Where a sample came from and what it cost to certify."""

    n: int
    spec: Optional["SequenceSpec"] = None
    source: str = "sequence"
    path: str = "exact"  # "exact", "ball", "poly" or "external"
    working_bits: int = 0
    escalations: int = 0
    degraded: bool = False

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "spec": self.spec.to_dict() if self.spec is not None else None,
            "source": self.source,
            "path": self.path,
            "working_bits": self.working_bits,
            "escalations": self.escalations,
            "degraded": self.degraded,
        }


@dataclass(frozen=True)
class ModOneSample:
    """N fractional parts in [0, 1) with a uniform certified error bound.

    certified_error bounds the distance between each true residue and the
    enclosure midpoint before the final float64 rounding, which adds at most
    half an ulp. ``raw`` optionally holds the unreduced values.
    """

    values: np.ndarray
    certified_error: float
    meta: SampleMeta
    raw: Optional[tuple] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64)
        if values.ndim != 1:
            raise ArgumentError("sample values must be one-dimensional")
        if values.size and (values.min() < 0.0 or values.max() >= 1.0):
            raise ArgumentError("sample values must lie in [0, 1)")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_floats(cls, values: Sequence[float], source: str = "external") -> ModOneSample:
        """Wrap plain floats, reducing them modulo one (no certificate beyond float rounding)."""
        arr = np.mod(np.asarray(values, dtype=np.float64), 1.0)
        # np.mod can return 1.0 for tiny negative inputs
        arr[arr >= 1.0] = 0.0
        return cls(arr, 0.0, SampleMeta(n=len(arr), source=source, path="external"))

    def __len__(self) -> int:
        return int(self.values.shape[0])

    @property
    def n(self) -> int:
        return len(self)

    def prefix(self, n: int) -> ModOneSample:
        """First n terms (used for N-checkpoints)."""
        if n < 1 or n > len(self):
            raise ArgumentError(f"prefix length {n} outside 1..{len(self)}")
        raw = self.raw[:n] if self.raw is not None else None
        return ModOneSample(self.values[:n], self.certified_error, replace(self.meta, n=n), raw)


@dataclass(frozen=True)
class ComplexSequence:
    """Complex terms c_1..c_N with a modulus bound B."""

    terms: np.ndarray
    bound: float = 1.0
    label: str = ""

    def __post_init__(self):
        terms = np.array(self.terms, dtype=np.complex128)
        terms.setflags(write=False)
        object.__setattr__(self, "terms", terms)

    def __len__(self) -> int:
        return int(self.terms.shape[0])

    def prefix(self, n: int) -> ComplexSequence:
        if n < 1 or n > len(self):
            raise ArgumentError(f"prefix length {n} outside 1..{len(self)}")
        return ComplexSequence(self.terms[:n], self.bound, self.label)


def to_exponential(x: ModOneSample, alpha_phase: int = 1) -> ComplexSequence:
    """c_n = exp(2 pi i * alpha_phase * x_n), bound 1."""
    if int(alpha_phase) != alpha_phase:
        raise ArgumentError(f"alpha_phase must be an integer, got {alpha_phase}")
    return ComplexSequence(unit_phases(x.values, int(alpha_phase)), 1.0, f"exp(2 pi i {alpha_phase} x)")


def unit_phases(values: np.ndarray, h: int = 1) -> np.ndarray:
    """exp(2 pi i h v) with h*v reduced modulo one first, so integral phases give exactly 1."""
    theta = np.mod(h * np.asarray(values, dtype=np.float64), 1.0)
    return np.exp(2j * np.pi * theta)
