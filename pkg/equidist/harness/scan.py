"""Parameter scans over beta or alpha.

Parameters are sampled as dyadic rationals lo + (hi - lo) * (2k + 1) / 2^(bits+1)
with k drawn from a seeded numpy Generator, so every sampled value is exact
and a scan is reproducible from its config alone. Named exceptional values
(integers, Pisot numbers) are appended as overrides because random sampling
never hits them.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

import numpy as np

from ..config import EquidistSettings
from ..errors import ArgumentError, PrecisionExhausted
from ..models import ScanConfig, ScanReport, ScanSample
from ..precision import ExactReal, parse_exact
from ..sequences import SequenceSpec
from .pipeline import AnalysisPipeline

logger = logging.getLogger(__name__)

# named members of the exceptional set
BETA_EXCEPTIONS = ("2", "phi", "silver")

# surd phase of the Q-variant scan: Q(n) = n + sqrt(2) * n^2
SURD_Q = "0,1,sqrt(2)"

WORST_CASES = 5
PROGRESS_EVERY = 10


def dyadic_samples(lo: ExactReal, hi: ExactReal, count: int, bits: int, seed: int) -> list[ExactReal]:
    """count exact values strictly inside (lo, hi) on the 2^-(bits+1) grid.

    Args:
        lo: Range start
        hi: Range end (> lo)
        count: Number of samples
        bits: Mantissa bits per sample
        seed: numpy Generator seed

    Returns:
        Values in draw order
    """
    if bits < 2:
        raise ArgumentError(f"sample bits must be >= 2, got {bits}")
    rng = np.random.default_rng(seed)
    nbytes = (bits + 7) // 8
    mask = (1 << bits) - 1
    width = hi - lo
    out = []
    for _ in range(count):
        k = int.from_bytes(rng.bytes(nbytes), "little") & mask
        out.append(lo + width * ExactReal(Fraction(2 * k + 1, 1 << (bits + 1))))
    return out


@dataclass(frozen=True)
class ScanJob:
    """One parameter value to run through the pipeline."""

    index: int
    source: str
    value: ExactReal
    config: ScanConfig
    settings: EquidistSettings


def _specs(job: ScanJob) -> list[SequenceSpec]:
    cfg = job.config
    fixed = parse_exact(cfg.fixed)
    alpha, beta = (fixed, job.value) if cfg.mode == "beta" else (job.value, fixed)
    return [
        SequenceSpec(alpha=alpha, beta=beta, g=g, product_exponents=tuple(cfg.hs), q=cfg.q)
        for g in [cfg.g, *cfg.extra_g]
    ]


def _run_sample(job: ScanJob) -> ScanSample:
    """Run every g of the family; the sample passes only if all of them pass."""
    cfg = job.config
    pipeline = AnalysisPipeline(job.settings, threshold=cfg.threshold, h_max=cfg.h_max)
    base = dict(index=job.index, source=job.source, parameter=str(job.value), value=float(job.value))
    d_stars, weyls, bits = [], [], 0
    try:
        for spec in _specs(job):
            result = pipeline.process(spec, cfg.n)
            d_stars.append(result["discrepancy"].d_star)
            weyls.append(result["weyl"].max_magnitude)
            bits = max(bits, result["sample"].meta.working_bits)
    except PrecisionExhausted as e:
        logger.warning("Scan sample %d (%s = %s) failed: %s", job.index, cfg.mode, job.value, e)
        return ScanSample(**base, status="error", error=str(e), working_bits=e.bits or 0)

    d_star = max(d_stars)
    return ScanSample(
        **base,
        d_star=d_star,
        max_weyl=max(weyls),
        working_bits=bits,
        status="pass" if d_star < cfg.threshold else "fail",
    )


def _jobs(cfg: ScanConfig, settings: EquidistSettings) -> list[ScanJob]:
    lo, hi = parse_exact(cfg.lo), parse_exact(cfg.hi)
    values = [("sampled", v) for v in dyadic_samples(lo, hi, cfg.samples, cfg.bits, cfg.seed)]
    values += [("override", parse_exact(text)) for text in cfg.overrides]
    # generation inside a scan worker stays serial
    inner = settings.model_copy(update={"workers": 1})
    return [ScanJob(i, source, value, cfg, inner) for i, (source, value) in enumerate(values)]


def _execute(jobs: list[ScanJob], workers: int) -> Iterator[ScanSample]:
    if workers <= 1 or len(jobs) <= 1:
        yield from map(_run_sample, jobs)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(_run_sample, jobs)


def _worst(samples: list[ScanSample]) -> list[ScanSample]:
    """Errors first, then the largest D*."""
    ranked = sorted(
        samples,
        key=lambda s: (s.status != "error", -(s.d_star if s.d_star is not None else 0.0), s.index),
    )
    return [s for s in ranked if s.status != "pass"][:WORST_CASES] or ranked[:1]


def run_scan(cfg: ScanConfig, settings: Optional[EquidistSettings] = None) -> ScanReport:
    """Scan the parameter named by cfg.mode.

    Samples are independent jobs; with workers > 1 they run on a process
    pool and are collected in index order, so the report never depends on
    the number of workers.
    """
    settings = settings or EquidistSettings()
    jobs = _jobs(cfg, settings)
    logger.info(
        "Scanning %s over (%s, %s): %d samples + %d overrides, N=%d",
        cfg.mode, cfg.lo, cfg.hi, cfg.samples, len(cfg.overrides), cfg.n,
    )
    samples = []
    for sample in _execute(jobs, settings.workers):
        samples.append(sample)
        if len(samples) % PROGRESS_EVERY == 0:
            logger.info("Scan progress: %d/%d", len(samples), len(jobs))

    passes = sum(s.status == "pass" for s in samples)
    fails = sum(s.status == "fail" for s in samples)
    errors = sum(s.status == "error" for s in samples)
    report = ScanReport(
        mode=cfg.mode,
        config=cfg,
        samples=samples,
        passes=passes,
        fails=fails,
        errors=errors,
        pass_fraction=passes / len(samples),
        worst=_worst(samples),
    )
    logger.info("Scan finished: %d pass, %d fail, %d error (pass fraction %.3f)", passes, fails, errors, report.pass_fraction)
    return report


def scan_beta(cfg: ScanConfig, settings: Optional[EquidistSettings] = None) -> ScanReport:
    """beta-scan with alpha = cfg.fixed."""
    if cfg.mode != "beta":
        cfg = ScanConfig.model_validate({**cfg.model_dump(), "mode": "beta"})
    return run_scan(cfg, settings)


def scan_alpha(cfg: ScanConfig, settings: Optional[EquidistSettings] = None) -> ScanReport:
    """alpha-scan with beta = cfg.fixed."""
    if cfg.mode != "alpha":
        cfg = ScanConfig.model_validate({**cfg.model_dump(), "mode": "alpha"})
    return run_scan(cfg, settings)
