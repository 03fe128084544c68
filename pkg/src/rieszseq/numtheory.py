"""Prime and divisor-function machinery for the block constructions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import RieszSeqError

# hard cap on sieve size; beyond this we error instead of silently crawling
SIEVE_LIMIT = 10 ** 7


@dataclass(frozen=True)
class PrimeTable:
    limit: int
    primes: np.ndarray


@dataclass(frozen=True)
class DivisorTable:
    limit: int
    counts: np.ndarray  # counts[k] = number of divisors of k; counts[0] unused


def _check_limit(limit: int, bytes_per_entry: int) -> int:
    limit = int(limit)
    if limit > SIEVE_LIMIT:
        raise RieszSeqError(
            f"sieve limit {limit} exceeds cap {SIEVE_LIMIT} "
            f"(~{bytes_per_entry * limit / 1e6:.0f} MB)"
        )
    return limit


def sieve_primes(limit: int) -> PrimeTable:
    """All primes <= limit by the classic sieve."""
    limit = _check_limit(limit, 1)
    if limit < 2:
        raise ValueError(f"limit must be >= 2, got {limit}")
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, int(limit ** 0.5) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return PrimeTable(limit, np.flatnonzero(flags).astype(np.int64))


def sieve_divisors(limit: int) -> DivisorTable:
    """Exact divisor counts d(1..limit) by multiple-marking."""
    limit = _check_limit(limit, 4)
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    counts = np.zeros(limit + 1, dtype=np.int32)
    for i in range(1, limit + 1):
        counts[i::i] += 1
    return DivisorTable(limit, counts)


def is_prime_naive(n: int) -> bool:
    """Trial division; oracle for the sieve."""
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def divisor_count_naive(n: int) -> int:
    """Count divisors by trial division; oracle for the sieve."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    count = 0
    f = 1
    while f * f <= n:
        if n % f == 0:
            count += 2 if f * f != n else 1
        f += 1
    return count


def multiples_block(n: int) -> np.ndarray:
    """The integers {n, 2n, ..., n^2}."""
    n = int(n)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return n * np.arange(1, n + 1, dtype=np.int64)


def block_intersection(m: int, n: int) -> list[int]:
    """Common elements of the multiple blocks of m and n, sorted."""
    return sorted(set(multiples_block(m).tolist()) & set(multiples_block(n).tolist()))


def prime_blocks_disjoint(limit: int):
    """Brute-force pairwise disjointness of the multiple blocks over primes <= limit.

    Returns (True, None) or (False, (p, q, witness)) with the first violation.
    """
    if limit < 3:
        raise ValueError(f"limit must be >= 3, got {limit}")
    primes = sieve_primes(limit).primes.tolist()
    blocks = {p: set(multiples_block(p).tolist()) for p in primes}
    for i, p in enumerate(primes):
        for q in primes[i + 1 :]:
            common = blocks[p] & blocks[q]
            if common:
                return False, (p, q, min(common))
    return True, None


@dataclass(frozen=True)
class GrowthReport:
    max_ratio: float
    argmax: int


def divisor_growth_report(limit: int, exponent: float, lo: int = 1) -> GrowthReport:
    """max of d(n)/n^exponent over lo <= n <= limit.

    Small n dominate any fixed exponent (d(12)/sqrt(12) > 1.7), so callers can
    exclude a prefix via lo.  The underlying o(n^eps) claim is asymptotic and
    only this finite scan is reported.
    """
    if limit < 10:
        raise ValueError(f"limit must be >= 10, got {limit}")
    lo = max(1, int(lo))
    if lo > limit:
        raise ValueError(f"lo = {lo} exceeds limit = {limit}")
    counts = sieve_divisors(limit).counts
    n = np.arange(lo, limit + 1, dtype=np.float64)
    ratios = counts[lo:] / n ** exponent
    i = int(np.argmax(ratios))
    return GrowthReport(float(ratios[i]), lo + i)


def divisor_sum_identity(limit: int) -> tuple[int, int]:
    """Both sides of sum_{k<=K} d(k) = sum_{l<=K} floor(K/l); exact integers."""
    counts = sieve_divisors(limit).counts
    lhs = int(counts[1:].sum())
    rhs = sum(limit // ell for ell in range(1, limit + 1))
    return lhs, rhs
