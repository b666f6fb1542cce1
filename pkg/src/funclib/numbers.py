"""Smallest-prime-factor table and factorization helpers."""
from functools import lru_cache

import numpy as np

from .exceptions import ValueOutOfRange


@lru_cache(maxsize=4)
def smallest_prime_factors(limit):
    """
    Smallest prime factor of every integer up to ``limit``.

    Args:
        limit: largest integer covered by the table

    Returns:
        numpy.ndarray: ``spf[n]`` for 0 <= n <= limit (spf[0] = 0, spf[1] = 1)
    """
    spf = np.zeros(limit + 1, dtype=np.int64)
    if limit >= 1:
        spf[1] = 1
    for q in range(2, int(limit ** 0.5) + 1):
        if spf[q]:
            continue
        block = spf[q * q::q]
        block[block == 0] = q
    unmarked = np.flatnonzero(spf == 0)
    spf[unmarked[unmarked >= 2]] = unmarked[unmarked >= 2]
    spf.setflags(write=False)
    return spf


def primes_up_to(limit, spf=None):
    spf = smallest_prime_factors(limit) if spf is None else spf
    n = np.arange(min(limit, len(spf) - 1) + 1)
    return n[(n >= 2) & (spf[:len(n)] == n)]


def factorize(n, spf):
    """
    Prime factorization of n as a list of (prime, exponent) pairs.

    Raises:
        ValueOutOfRange: n is not covered by the table
    """
    if n < 1 or n >= len(spf):
        raise ValueOutOfRange(f"{n} is outside the factor table (size {len(spf)})")
    out = []
    while n > 1:
        q = int(spf[n])
        j = 0
        while n % q == 0:
            n //= q
            j += 1
        out.append((q, j))
    return out
