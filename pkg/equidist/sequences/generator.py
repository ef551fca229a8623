"""Certified generation of x_n = c * beta^n + Q(n) modulo one.

Two paths produce the same certificate:

* exact path: rational beta and rational prefactor c whose denominator
  stream q^n stays within the ball path's starting precision, or where
  c * beta^n + Q(n) can land on an integer. The terms are carried as an
  integer numerator/denominator stream and reduced exactly; a surd Q(n) is
  added through a fixed-point enclosure.
* ball path: everything else. Terms are evaluated in ball arithmetic,
  starting at ceil(N * log2(beta)) + margin bits and doubling the working
  precision of a chunk whenever a floor cannot be decided.

Work is split into fixed-size n-chunks that are combined in index order, so
the output never depends on the number of workers.
"""

from __future__ import annotations

import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence, Union

import numpy as np
from mpmath.libmp import to_rational

from ..config import EquidistSettings
from ..errors import AmbiguousBoundary, ArgumentError, EmptyResult, PrecisionExhausted
from ..precision import BallReal, ExactReal, ball_pow, frac_mod_one, refine
from .base import ModOneSample, SampleMeta
from .polynomial import Polynomial, Residue, poly_residue, residue_mod_one
from .spec import SequenceSpec

logger = logging.getLogger(__name__)

# certified bits every residue must reach unless the settings lower it
CERTIFIED_BITS = 60


@dataclass
class ChunkResult:
    """Output of one n-chunk."""

    values: list[float]
    error: Fraction
    working_bits: int
    escalations: int
    raw: Optional[list] = None


@dataclass(frozen=True)
class ExactPlan:
    cn: int
    cd: int
    p: int
    q: int
    poly: Polynomial
    target_bits: int
    cap_bits: int
    keep_raw: bool


@dataclass(frozen=True)
class BallPlan:
    spec: SequenceSpec
    prec: int
    prefactor: BallReal
    target_bits: int
    cap_bits: int
    keep_raw: bool


@dataclass(frozen=True)
class PolyPlan:
    poly: Polynomial
    target_bits: int
    cap_bits: int


@dataclass(frozen=True)
class ChunkJob:
    plan: Union[ExactPlan, BallPlan, PolyPlan]
    start: int
    stop: int


def _error_float(error: Union[Fraction, float]) -> float:
    """Float that is >= error."""
    value = float(error)
    if Fraction(value) < Fraction(error):
        value = math.nextafter(value, math.inf)
    return value


def _chunk_jobs(plan, n: int, chunk_size: int) -> list[ChunkJob]:
    chunk_size = max(1, chunk_size)
    return [
        ChunkJob(plan, start, min(start + chunk_size, n + 1))
        for start in range(1, n + 1, chunk_size)
    ]


def _run_jobs(func: Callable[[ChunkJob], ChunkResult], jobs: list[ChunkJob], workers: int) -> list[ChunkResult]:
    """Run chunk jobs, returning results in job order."""
    if workers <= 1 or len(jobs) <= 1:
        return [func(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, jobs))


def _combine(results: Sequence[ChunkResult]) -> tuple[np.ndarray, float, int, int, Optional[tuple]]:
    values = np.fromiter(
        (v for r in results for v in r.values), dtype=np.float64, count=sum(len(r.values) for r in results)
    )
    error = max((r.error for r in results), default=Fraction(0))
    bits = max((r.working_bits for r in results), default=0)
    escalations = sum(r.escalations for r in results)
    raw = None
    if results and results[0].raw is not None:
        raw = tuple(x for r in results for x in r.raw)
    return values, _error_float(error), bits, escalations, raw


def _escalate(k: int, cap_bits: int, what: str) -> int:
    k *= 2
    if k > cap_bits:
        raise PrecisionExhausted(f"{what}: precision cap of {cap_bits} bits reached", bits=k)
    return k


# -- exact path ------------------------------------------------------------------


def _exact_chunk(job: ChunkJob) -> ChunkResult:
    plan: ExactPlan = job.plan
    a_coeffs, b_coeffs, denom, d = plan.poly.rational_parts()
    k0 = plan.target_bits + 8
    num = plan.cn * plan.p**job.start
    den = plan.cd * plan.q**job.start
    values: list[float] = []
    raw: Optional[list] = [] if plan.keep_raw else None
    error = Fraction(0)
    escalations = 0
    bits = 0
    for n in range(job.start, job.stop):
        a_val = 0
        b_val = 0
        for a_i, b_i in zip(reversed(a_coeffs), reversed(b_coeffs)):
            a_val = a_val * n + a_i
            b_val = b_val * n + b_i
        r_num = num * denom + a_val * den
        r_den = den * denom
        k = k0
        while True:
            residue = residue_mod_one(r_num, r_den, b_val, d, denom, k)
            if residue is not None:
                break
            k = _escalate(k, plan.cap_bits, f"exact path at n={n}")
            escalations += 1
        values.append(residue.to_float())
        error = max(error, residue.error())
        bits = max(bits, r_den.bit_length() + (k if b_val and d else 0))
        if raw is not None:
            raw.append(ExactReal(Fraction(num, den)) + plan.poly.evaluate(n))
        num *= plan.p
        den *= plan.q
    return ChunkResult(values, error, bits, escalations, raw)


# -- ball path -------------------------------------------------------------------


def _ball_chunk(job: ChunkJob) -> ChunkResult:
    plan: BallPlan = job.plan
    spec = plan.spec
    prec = plan.prec
    escalations = 0
    c = plan.prefactor
    while True:
        try:
            beta = refine(spec.beta, prec)
            power = ball_pow(beta, job.start)
            values: list[float] = []
            raw: Optional[list] = [] if plan.keep_raw else None
            error = Fraction(0)
            for n in range(job.start, job.stop):
                term = c * power
                if not spec.q.is_zero():
                    term = term + spec.q.evaluate_ball(n, prec)
                unit = frac_mod_one(term, plan.target_bits)
                values.append(float(unit))
                error = max(error, _mpf_fraction(unit.error))
                if raw is not None:
                    raw.append(term)
                power = power * beta
            return ChunkResult(values, error, prec, escalations, raw)
        except AmbiguousBoundary as e:
            logger.debug("Chunk %d..%d ambiguous at %d bits: %s", job.start, job.stop - 1, prec, e)
            prec = _escalate(prec, plan.cap_bits, f"ball path chunk {job.start}..{job.stop - 1}")
            escalations += 1
            c = spec.prefactor_ball(prec)


def _mpf_fraction(value) -> Fraction:
    return Fraction(*to_rational(value._mpf_))


def initial_precision(spec: SequenceSpec, n: int, margin_bits: int) -> int:
    """ceil(N * log2(beta)) + margin, plus the bits of |c| and |Q(N)|."""
    beta = refine(spec.beta, 64)
    bits = math.ceil(n * math.log2(beta.upper_float())) + margin_bits
    c = spec.prefactor_ball(64)
    c_mag = max(abs(c.lower_float()), abs(c.upper_float()))
    if c_mag > 1:
        bits += math.ceil(math.log2(c_mag))
    q_mag = sum(abs(float(t)) for t in spec.q.coefficients) * float(n) ** spec.q.degree
    if q_mag > 1:
        bits += math.ceil(math.log2(q_mag))
    return bits


def exact_path_bits(spec: SequenceSpec, n: int) -> Optional[int]:
    """Bit length of the largest exact-path denominator, None when the path is unavailable."""
    if not spec.beta.is_rational:
        return None
    c = spec.prefactor_exact()
    if c is None or not c.is_rational:
        return None
    q = spec.beta.as_fraction().denominator
    _, _, denom, _ = spec.q.rational_parts()
    return c.as_fraction().denominator.bit_length() + denom.bit_length() + math.ceil(n * math.log2(q))


def may_hit_integer(spec: SequenceSpec) -> bool:
    """True when c * beta^n + Q(n) can be an integer for some n >= 1.

    With beta = p/q in lowest terms that needs q^n | num(c) * den(Q), so
    q not dividing num(c) * den(Q) rules out every n.
    """
    q = spec.beta.as_fraction().denominator
    _, _, denom, _ = spec.q.rational_parts()
    return (spec.prefactor_exact().as_fraction().numerator * denom) % q == 0


def choose_path(spec: SequenceSpec, n: int, settings: EquidistSettings) -> str:
    """'exact' or 'ball' for generating N terms of spec.

    The exact path carries denominators of about N * log2(q) bits while the
    ball path starts at ceil(N * log2(beta)) + margin, so dyadic samples with
    long denominators are cheaper in ball arithmetic. A ball can never decide
    the floor of an exact integer, so those sequences stay exact.
    """
    if not settings.exact_rational_path:
        return "ball"
    exact_bits = exact_path_bits(spec, n)
    if exact_bits is None:
        return "ball"
    if may_hit_integer(spec):
        return "exact"
    ball_bits = initial_precision(spec, n, settings.precision_margin_bits)
    return "exact" if exact_bits <= settings.exact_cost_ratio * ball_bits else "ball"


def generate_power_sequence(
    spec: SequenceSpec,
    n: int,
    settings: Optional[EquidistSettings] = None,
    keep_raw: bool = False,
) -> ModOneSample:
    """x_n = {alpha * g(beta) * prod(beta^h_j - 1) * beta^n + Q(n)} for n = 1..N.

    Args:
        spec: Sequence parameters (validated on construction)
        n: Number of terms N >= 1
        settings: Precision and worker settings (defaults if not provided)
        keep_raw: Retain the unreduced values (ExactReal on the exact path,
            BallReal on the ball path)

    Returns:
        ModOneSample with certified error and generation telemetry in meta

    Raises:
        PrecisionExhausted: A floor could not be decided below the precision cap
    """
    settings = settings or EquidistSettings()
    if n < 1:
        raise ArgumentError(f"N must be >= 1, got {n}")

    started = time.perf_counter()
    target = settings.target_bits
    if choose_path(spec, n, settings) == "exact":
        c = spec.prefactor_exact().as_fraction()
        beta = spec.beta.as_fraction()
        plan = ExactPlan(
            cn=c.numerator,
            cd=c.denominator,
            p=beta.numerator,
            q=beta.denominator,
            poly=spec.q,
            target_bits=target,
            cap_bits=settings.precision_cap_bits,
            keep_raw=keep_raw,
        )
        path, func = "exact", _exact_chunk
    else:
        prec = initial_precision(spec, n, settings.precision_margin_bits)
        if prec > settings.precision_cap_bits:
            raise PrecisionExhausted(
                f"N={n} needs {prec} bits, above the cap of {settings.precision_cap_bits}", bits=prec
            )
        plan = BallPlan(spec, prec, spec.prefactor_ball(prec), target, settings.precision_cap_bits, keep_raw)
        path, func = "ball", _ball_chunk

    jobs = _chunk_jobs(plan, n, settings.chunk_size)
    results = _run_jobs(func, jobs, settings.workers)
    values, error, bits, escalations, raw = _combine(results)

    if escalations:
        logger.info("Generation of %s escalated precision %d times (max %d bits)", spec, escalations, bits)
    logger.debug("Generated %d terms on the %s path in %.3fs", n, path, time.perf_counter() - started)

    meta = SampleMeta(
        n=n,
        spec=spec,
        source="sequence",
        path=path,
        working_bits=bits,
        escalations=escalations,
        degraded=target < CERTIFIED_BITS,
    )
    if meta.degraded:
        logger.warning("Residues certified to %d bits only (below %d)", target, CERTIFIED_BITS)
    return ModOneSample(values, error, meta, raw)


# -- polynomial phases -----------------------------------------------------------


def _poly_chunk(job: ChunkJob) -> ChunkResult:
    plan: PolyPlan = job.plan
    a_coeffs, b_coeffs, denom, d = plan.poly.rational_parts()
    k0 = plan.target_bits + 8
    values: list[float] = []
    error = Fraction(0)
    escalations = 0
    bits = 0
    for n in range(job.start, job.stop):
        k = k0
        while True:
            residue = poly_residue(a_coeffs, b_coeffs, denom, d, n, k)
            if residue is not None:
                break
            k = _escalate(k, plan.cap_bits, f"poly_mod_one at n={n}")
            escalations += 1
        values.append(residue.to_float())
        error = max(error, residue.error())
        bits = max(bits, k if d else 0)
    return ChunkResult(values, error, bits, escalations)


def poly_mod_one(q: Polynomial, n: int, settings: Optional[EquidistSettings] = None) -> ModOneSample:
    """{Q(n)} for n = 1..N; exact for rational coefficients, fixed-point certified for surds."""
    settings = settings or EquidistSettings()
    if n < 1:
        raise ArgumentError(f"N must be >= 1, got {n}")
    plan = PolyPlan(q, settings.target_bits, settings.precision_cap_bits)
    results = _run_jobs(_poly_chunk, _chunk_jobs(plan, n, settings.chunk_size), settings.workers)
    values, error, bits, escalations, _ = _combine(results)
    meta = SampleMeta(
        n=n,
        source=f"Q(n) = {q}",
        path="poly",
        working_bits=bits,
        escalations=escalations,
        degraded=settings.target_bits < CERTIFIED_BITS,
    )
    return ModOneSample(values, error, meta)


# -- raw sequences ---------------------------------------------------------------


def exact_residue(x: ExactReal, target_bits: int = CERTIFIED_BITS, cap_bits: int = 2**24) -> Residue:
    """Certified residue of an exact real modulo one."""
    b = x.b
    k = target_bits + 8
    while True:
        residue = residue_mod_one(x.a.numerator, x.a.denominator, b.numerator, x.d, b.denominator, k)
        if residue is not None:
            return residue
        k = _escalate(k, cap_bits, f"residue of {x}")


def reduce_mod_one(values: Sequence[Any], settings: Optional[EquidistSettings] = None) -> ModOneSample:
    """Reduce retained unreduced values (ExactReal or BallReal) modulo one."""
    settings = settings or EquidistSettings()
    if len(values) == 0:
        raise EmptyResult("nothing to reduce")
    out: list[float] = []
    error = Fraction(0)
    path = "exact"
    for x in values:
        if isinstance(x, BallReal):
            path = "ball"
            try:
                unit = frac_mod_one(x, settings.target_bits)
            except AmbiguousBoundary as e:
                raise PrecisionExhausted(f"cannot reduce {x}: {e}", bits=x.prec) from e
            out.append(float(unit))
            error = max(error, _mpf_fraction(unit.error))
        else:
            residue = exact_residue(ExactReal.coerce(x), settings.target_bits, settings.precision_cap_bits)
            out.append(residue.to_float())
            error = max(error, residue.error())
    meta = SampleMeta(n=len(out), source="reduced", path=path)
    return ModOneSample(np.asarray(out), _error_float(error), meta, tuple(values))


def vdc_difference(x: Sequence[Any], h: int) -> Union[list, np.ndarray]:
    """Gap-h differences x_{n+h} - x_n of an unreduced sequence."""
    if h < 1:
        raise ArgumentError(f"difference step must be >= 1, got {h}")
    n = len(x)
    if h >= n:
        raise EmptyResult(f"difference step {h} leaves nothing of a length-{n} sequence")
    if isinstance(x, np.ndarray):
        return x[h:] - x[:-h]
    return [x[i + h] - x[i] for i in range(n - h)]
