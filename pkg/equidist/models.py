"""Pydantic schemas for analysis reports, scan configuration and API payloads."""

from typing import Any, Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from .errors import EquidistError
from .precision import parse_exact, parse_gexpr

UD_CONSISTENT = "consistent with u.d."
UD_INCONSISTENT = "not consistent with u.d."
GRID_VERIFIED = "grid-verified"


# -- Weyl sums --------------------------------------------------------------------


class WeylEntry(BaseModel):
    h: int
    n: int
    real: float
    imag: float
    magnitude: float


class WeylReport(BaseModel):
    n: int
    h_max: int
    checkpoints: list[int]
    entries: list[WeylEntry]
    threshold: float
    max_magnitude: float  # max over h at the final checkpoint
    consistent: bool
    verdict: str

    def magnitude(self, h: int, n: Optional[int] = None) -> float:
        n = self.checkpoints[-1] if n is None else n
        for entry in self.entries:
            if entry.h == h and entry.n == n:
                return entry.magnitude
        raise KeyError((h, n))

    def rows(self) -> list[dict[str, Any]]:
        return [entry.model_dump() for entry in self.entries]


# -- discrepancy ------------------------------------------------------------------


class DiscrepancyReport(BaseModel):
    n: int
    d_star: float
    argmax_index: int  # 1-based rank in the sorted sample
    argmax_value: float
    argmax_side: Literal["above", "below"]
    ks_pvalue: float

    def rows(self) -> list[dict[str, Any]]:
        return [self.model_dump()]


# -- oscillation ------------------------------------------------------------------


class GrowthReport(BaseModel):
    lam: float
    checkpoints: list[int]
    values: list[float]
    bounded: bool

    def rows(self) -> list[dict[str, Any]]:
        return [
            {"lambda": self.lam, "n": n, "value": v, "bounded": self.bounded}
            for n, v in zip(self.checkpoints, self.values)
        ]


class OscillationEntry(BaseModel):
    n: int
    real: float
    imag: float
    magnitude: float


class OscillationReport(BaseModel):
    phase: str
    sequence: str
    bound: float
    checkpoints: list[int]
    entries: list[OscillationEntry]
    growth: list[GrowthReport]
    decay_slope: Optional[float] = None
    non_increasing: bool
    phase_error: float

    @property
    def final_magnitude(self) -> float:
        return self.entries[-1].magnitude

    def rows(self) -> list[dict[str, Any]]:
        return [
            {"phase": self.phase, "sequence": self.sequence, **entry.model_dump()}
            for entry in self.entries
        ]


class ProfileReport(BaseModel):
    order: int
    strong: bool
    threshold: float
    reports: list[OscillationReport]
    growth: GrowthReport
    oscillating: bool
    verdict: str

    def rows(self) -> list[dict[str, Any]]:
        return [row for report in self.reports for row in report.rows()]


# -- Koksma gap diagnostic --------------------------------------------------------


class GapPair(BaseModel):
    n: int
    m: int
    min_lower: float
    max_upper: float
    monotone: bool
    strictly_increasing: bool


class GapReport(BaseModel):
    variable: Literal["beta", "alpha"]
    interval: tuple[str, str]
    grid_points: int
    pairs: list[GapPair]
    monotone_ok: bool
    strictly_increasing: bool
    L_lower: float
    certificate: str = GRID_VERIFIED

    def rows(self) -> list[dict[str, Any]]:
        return [{"variable": self.variable, **pair.model_dump()} for pair in self.pairs]


# -- scans ------------------------------------------------------------------------


def _check_exact(value: str, name: str) -> str:
    try:
        parse_exact(value)
    except EquidistError as e:
        raise ValueError(f"{name}: {e}") from e
    return value


class ScanConfig(BaseModel):
    """Parameters of a beta- or alpha-scan.

    Exact numbers are kept as text and parsed where they are used, so the
    config serializes back to the flat key-value form unchanged.
    """

    mode: Literal["beta", "alpha"] = "beta"
    fixed: str = "1"  # alpha for beta-scans, beta for alpha-scans
    lo: str = "1"
    hi: str = "2"
    samples: int = Field(default=100, ge=0)
    seed: int = 0
    bits: int = Field(default=128, ge=2)
    g: str = "1"
    extra_g: list[str] = Field(default_factory=list)
    hs: list[int] = Field(default_factory=list)
    q: str = ""
    n: int = Field(default=4096, ge=1)
    threshold: float = Field(default=0.05, gt=0.0, le=1.0)
    h_max: int = Field(default=5, ge=1)
    overrides: list[str] = Field(default_factory=list)

    @field_validator("fixed", "lo", "hi")
    @classmethod
    def validate_exact(cls, v: str, info) -> str:
        return _check_exact(str(v), info.field_name)

    @field_validator("overrides")
    @classmethod
    def validate_overrides(cls, v: list[str]) -> list[str]:
        return [_check_exact(str(item), "overrides") for item in v]

    @field_validator("g", "extra_g")
    @classmethod
    def validate_g(cls, v):
        items = v if isinstance(v, list) else [v]
        for item in items:
            try:
                parse_gexpr(item)
            except EquidistError as e:
                raise ValueError(f"g: {e}") from e
        return v

    @field_validator("hs")
    @classmethod
    def validate_hs(cls, v: list[int]) -> list[int]:
        if any(h < 1 for h in v):
            raise ValueError("product exponents must be positive integers")
        return v

    @model_validator(mode="after")
    def validate_range(self) -> "ScanConfig":
        lo, hi, fixed = parse_exact(self.lo), parse_exact(self.hi), parse_exact(self.fixed)
        if not lo < hi:
            raise ValueError(f"scan range needs lo < hi, got ({self.lo}, {self.hi})")
        if self.samples + len(self.overrides) < 1:
            raise ValueError("scan needs at least one sample or override")
        if self.mode == "beta":
            if lo < 1:
                raise ValueError(f"beta-scans need lo >= 1, got {self.lo}")
            if fixed.is_zero():
                raise ValueError("fixed alpha must be nonzero")
            if any(parse_exact(o) <= 1 for o in self.overrides):
                raise ValueError("beta overrides must be > 1")
        else:
            # samples lie strictly inside (lo, hi), so an endpoint at 0 is allowed
            if lo < 0 < hi:
                raise ValueError(f"alpha range ({self.lo}, {self.hi}) must exclude 0")
            if fixed <= 1:
                raise ValueError(f"fixed beta must be > 1, got {self.fixed}")
            if any(parse_exact(o).is_zero() for o in self.overrides):
                raise ValueError("alpha overrides must be nonzero")
        return self


class ScanSample(BaseModel):
    index: int
    source: Literal["sampled", "override"]
    parameter: str
    value: float
    d_star: Optional[float] = None
    max_weyl: Optional[float] = None
    working_bits: int = 0
    status: Literal["pass", "fail", "error"]
    error: Optional[str] = None


class ScanReport(BaseModel):
    mode: Literal["beta", "alpha"]
    config: ScanConfig
    samples: list[ScanSample]
    passes: int
    fails: int
    errors: int
    pass_fraction: float
    worst: list[ScanSample]

    def rows(self) -> list[dict[str, Any]]:
        return [sample.model_dump() for sample in self.samples]


# -- experiments and API payloads --------------------------------------------------


class ExperimentResult(BaseModel):
    name: str
    passed: bool
    verdict: str
    summary: dict[str, Any] = Field(default_factory=dict)
    rows: list[dict[str, Any]] = Field(default_factory=list)
    files: list[str] = Field(default_factory=list)


class SequenceSpecModel(BaseModel):
    """Sequence spec in its flat text form."""

    alpha: str = "1"
    beta: str
    g: str = "1"
    hs: list[int] = Field(default_factory=list)
    q_coeffs: str = ""

    def to_mapping(self) -> dict[str, Any]:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "g": self.g,
            "hs": self.hs,
            "q_coeffs": self.q_coeffs,
        }


class GenerateRequest(BaseModel):
    spec: SequenceSpecModel
    n: int = Field(ge=1, le=1_000_000)
    keep_values: bool = True


class GenerateResponse(BaseModel):
    n: int
    values: list[float]
    certified_error: float
    path: str
    working_bits: int
    escalations: int
    degraded: bool


class AnalysisRequest(BaseModel):
    spec: SequenceSpecModel
    n: int = Field(ge=1, le=1_000_000)
    h_max: int = Field(default=5, ge=1)
    checkpoints: Optional[list[int]] = None
    threshold: Optional[float] = None


class ExperimentRequest(BaseModel):
    overrides: dict[str, Any] = Field(default_factory=dict)
    out_dir: Optional[str] = None
