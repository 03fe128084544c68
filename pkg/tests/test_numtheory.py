import numpy as np
import pytest

from rieszseq import numtheory
from rieszseq.errors import RieszSeqError


def test_sieve_primes_small():
    assert numtheory.sieve_primes(10).primes.tolist() == [2, 3, 5, 7]
    assert numtheory.sieve_primes(2).primes.tolist() == [2]


def test_prime_count_to_a_million():
    # well-known count, re-checked below against trial division on a sample
    table = numtheory.sieve_primes(10 ** 6)
    assert len(table.primes) == 78498
    rng = np.random.RandomState(0)
    prime_set = set(table.primes.tolist())
    for n in rng.randint(2, 10 ** 6, 200):
        assert (int(n) in prime_set) == numtheory.is_prime_naive(int(n))


def test_sieve_vs_trial_division_exact():
    primes = set(numtheory.sieve_primes(10 ** 4).primes.tolist())
    counts = numtheory.sieve_divisors(10 ** 4).counts
    for n in range(1, 10 ** 4 + 1):
        assert (n in primes) == numtheory.is_prime_naive(n)
        assert int(counts[n]) == numtheory.divisor_count_naive(n)


def test_divisor_values():
    counts = numtheory.sieve_divisors(12).counts
    assert int(counts[12]) == 6
    assert int(counts[1]) == 1
    # 720720 = 2^4 * 3^2 * 5 * 7 * 11 * 13 -> 5*3*2*2*2*2 = 240 divisors
    assert numtheory.divisor_count_naive(720720) == 240
    assert int(numtheory.sieve_divisors(720720).counts[720720]) == 240


def test_hyperbola_identity():
    for cap in (10, 100, 1000):
        lhs, rhs = numtheory.divisor_sum_identity(cap)
        assert lhs == rhs


def test_prime_blocks_disjoint():
    ok, witness = numtheory.prime_blocks_disjoint(100)
    assert ok and witness is None


def test_block_intersection_examples():
    assert numtheory.block_intersection(2, 3) == []
    assert numtheory.block_intersection(2, 4) == [4]  # primality is necessary


def test_divisor_growth_report():
    # frozen from a full scan of d(n)/sqrt(n) over [1e5, 1e6]
    rep = numtheory.divisor_growth_report(10 ** 6, 0.5, lo=10 ** 5)
    assert rep.argmax == 110880
    assert rep.max_ratio == pytest.approx(0.4324499820938683, rel=1e-12)
    assert rep.max_ratio < 0.5
    # small n exceed 1, which is why the prefix is excludable
    small = numtheory.divisor_growth_report(100, 0.5)
    assert small.max_ratio > 1.7


def test_sieve_limit_guard():
    with pytest.raises(RieszSeqError):
        numtheory.sieve_primes(10 ** 7 + 1)
    with pytest.raises(ValueError):
        numtheory.sieve_divisors(0)
