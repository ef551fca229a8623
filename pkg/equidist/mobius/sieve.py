"""Linear sieve for the Mobius function.

Every composite n is crossed out exactly once, by its smallest prime
factor, so the sieve runs in O(N) time and also yields the smallest prime
factor table. Both tables live in preallocated int8 / int32 arrays and are
filled by numpy passes over fixed-size index chunks.
"""

from __future__ import annotations

import logging
import struct
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import numpy as np

from ..config import EquidistSettings
from ..errors import ArgumentError, CapacityExceeded, ParseError
from ..sequences import ComplexSequence

logger = logging.getLogger(__name__)

TABLE_MAGIC = b"MOBT"
TABLE_VERSION = 1
_HEADER = struct.Struct("<4sHQ")
# indices handled per numpy pass
SIEVE_CHUNK = 1 << 20


@dataclass(frozen=True)
class MobiusTable:
    """mu(n) and the smallest prime factor for n = 1..N.

    Attributes:
        n: Largest index N
        mu: int8 array of length N+1, mu[n] in {-1, 0, 1} (index 0 unused)
        smallest_prime_factor: int32 array of length N+1 (spf[1] = 1, index 0 unused)
    """

    n: int
    mu: np.ndarray
    smallest_prime_factor: np.ndarray

    def __getitem__(self, index: int) -> int:
        if index < 1 or index > self.n:
            raise IndexError(f"mu({index}) outside 1..{self.n}")
        return int(self.mu[index])

    def dump(self, path: Union[str, Path]) -> Path:
        """Write the table with a versioned header (magic, version, N)."""
        path = Path(path)
        with path.open("wb") as f:
            f.write(_HEADER.pack(TABLE_MAGIC, TABLE_VERSION, self.n))
            f.write(self.mu.astype(np.int8).tobytes())
            f.write(self.smallest_prime_factor.astype("<i4").tobytes())
        logger.info("Wrote Mobius table N=%d to %s", self.n, path)
        return path

    @classmethod
    def load(cls, path: Union[str, Path]) -> MobiusTable:
        data = Path(path).read_bytes()
        if len(data) < _HEADER.size:
            raise ParseError(f"{path}: truncated Mobius table header")
        magic, version, n = _HEADER.unpack_from(data)
        if magic != TABLE_MAGIC:
            raise ParseError(f"{path}: not a Mobius table (magic {magic!r})")
        if version != TABLE_VERSION:
            raise ParseError(f"{path}: unsupported table version {version}")
        expected = _HEADER.size + (n + 1) * 5
        if len(data) != expected:
            raise ParseError(f"{path}: expected {expected} bytes for N={n}, got {len(data)}")
        offset = _HEADER.size
        mu = np.frombuffer(data, dtype=np.int8, count=n + 1, offset=offset).copy()
        spf = np.frombuffer(data, dtype="<i4", count=n + 1, offset=offset + n + 1).astype(np.int32)
        return cls(n, mu, spf)


def _sieve_smallest_factors(n: int) -> np.ndarray:
    """spf[k] for composite k <= n, 0 for primes.

    The composite p * i is written once, by its smallest prime p, with the
    cofactor i having no prime factor below p.
    """
    spf = np.zeros(n + 1, dtype=np.int32)
    spf[1] = 1
    p = 2
    while p * p <= n:
        if spf[p] == 0:
            top = n // p
            for lo in range(p, top + 1, SIEVE_CHUNK):
                i = np.arange(lo, min(lo + SIEVE_CHUNK, top + 1), dtype=np.int64)
                cofactor_spf = spf[i]
                keep = (cofactor_spf == 0) | (cofactor_spf >= p)
                spf[i[keep] * p] = p
        p += 1
    return spf


def mobius_sieve(n: int, settings: Optional[EquidistSettings] = None) -> MobiusTable:
    """Exact mu(k) for all k <= N by the linear (Euler) sieve.

    Raises:
        ArgumentError: N < 1
        CapacityExceeded: N above settings.mobius_max_n
    """
    settings = settings or EquidistSettings()
    if n < 1:
        raise ArgumentError(f"N must be >= 1, got {n}")
    if n > settings.mobius_max_n:
        raise CapacityExceeded(f"Mobius sieve limited to N <= {settings.mobius_max_n}, got {n}")

    started = time.perf_counter()
    spf = _sieve_smallest_factors(n)
    mu = np.zeros(n + 1, dtype=np.int8)
    mu[1] = 1
    primes = 0
    # k / spf(k) <= k / 2, so a chunk [lo, 2 * lo) only reads finished entries
    lo = 2
    while lo <= n:
        hi = min(2 * lo, lo + SIEVE_CHUNK, n + 1)
        k = np.arange(lo, hi, dtype=np.int64)
        p = spf[lo:hi].astype(np.int64)
        is_prime = p == 0
        p[is_prime] = k[is_prime]
        spf[lo:hi][is_prime] = k[is_prime]
        primes += int(np.count_nonzero(is_prime))
        m = k // p
        mu[lo:hi] = np.where(spf[m] == p, 0, -mu[m])
        lo = hi

    table = MobiusTable(n, mu, spf)
    logger.info("Sieved mu up to %d (%d primes) in %.2fs", n, primes, time.perf_counter() - started)
    return table


def mobius_sequence(table: MobiusTable, n: Optional[int] = None) -> ComplexSequence:
    """c_k = mu(k) for k = 1..N as a complex sequence with bound 1."""
    n = table.n if n is None else n
    if n < 1 or n > table.n:
        raise ArgumentError(f"N={n} outside the sieved range 1..{table.n}")
    return ComplexSequence(table.mu[1 : n + 1].astype(np.complex128), 1.0, "mu(n)")


def mobius_by_factorization(n: int) -> int:
    """mu(n) by trial division."""
    if n < 1:
        raise ArgumentError(f"mu is defined for n >= 1, got {n}")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def divisor_sum_identity_holds(table: MobiusTable, limit: Optional[int] = None) -> bool:
    """Check sum_{d | n} mu(d) == [n == 1] for every n <= limit."""
    limit = table.n if limit is None else min(limit, table.n)
    sums = np.zeros(limit + 1, dtype=np.int64)
    mu = table.mu.astype(np.int64)
    for d in range(1, limit + 1):
        if mu[d]:
            sums[d::d] += mu[d]
    expected = np.zeros(limit + 1, dtype=np.int64)
    expected[1] = 1
    return bool(np.array_equal(sums[1:], expected[1:]))


def squarefree_density(table: MobiusTable, n: Optional[int] = None) -> float:
    """(1/N) * #{k <= N : mu(k) != 0}."""
    n = table.n if n is None else n
    if n < 1 or n > table.n:
        raise ArgumentError(f"N={n} outside the sieved range 1..{table.n}")
    return float(np.count_nonzero(table.mu[1 : n + 1])) / n
