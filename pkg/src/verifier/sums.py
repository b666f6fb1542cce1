"""
Truncated Dirichlet series and Euler products of expression functions.

Coefficients f(n)/n^s are filled in one prime at a time: every multiple of a
prime q is multiplied by the local term f(q^j)/q^(js) for its exact power j.
"""
import logging
import math

import numpy as np

from funclib.exceptions import ValueOutOfRange
from funclib.numbers import primes_up_to, smallest_prime_factors

logger = logging.getLogger(__name__)

# Prime powers beyond this contribute nothing visible in double precision.
LOCAL_CUTOFF = 10 ** 60


def _local_terms(e, q, s, N):
    """f(q^j)/q^(js) for 0 <= j with q^j <= N."""
    terms = [1.0]
    power, j = q, 1
    while power <= N:
        terms.append(e.value(q, j) / q ** (j * s))
        power *= q
        j += 1
    return terms


def dirichlet_coefficients(e, s, N, spf=None):
    """
    Array ``a`` with a[n] = f(n)/n^s for 1 <= n <= N (a[0] = 0).

    Raises:
        ValueOutOfRange: the smallest-prime-factor table does not reach N
    """
    spf = smallest_prime_factors(N) if spf is None else spf
    if N >= len(spf):
        raise ValueOutOfRange(f"cutoff {N} exceeds the factor table (size {len(spf)})")
    a = np.ones(N + 1, dtype=np.float64)
    a[0] = 0.0
    for q in primes_up_to(N, spf):
        q = int(q)
        if q * q > N:
            a[q::q] *= e.value(q, 1) / q ** s
            continue
        terms = np.array(_local_terms(e, q, s, N))
        multiples = np.arange(q, N + 1, q)
        valuation = np.ones(len(multiples), dtype=np.int64)
        rest = multiples // q
        while True:
            mask = rest % q == 0
            if not mask.any():
                break
            valuation[mask] += 1
            rest[mask] //= q
        a[multiples] *= terms[valuation]
    return a


def dirichlet_partial_sum(e, s, N, spf=None):
    """
    sum_{n <= N} f(n)/n^s in double precision (exactly rounded summation).

    Raises:
        ValueOutOfRange: the smallest-prime-factor table does not reach N
    """
    return math.fsum(dirichlet_coefficients(e, s, N, spf)[1:])


def local_factor(e, q, s):
    """Bell series sum_j f(q^j)/q^(js) truncated at q^j > LOCAL_CUTOFF."""
    return math.fsum(_local_terms(e, q, s, LOCAL_CUTOFF))


def euler_product(e, s, bound):
    """Product of the local factors over the primes q <= bound."""
    out = 1.0
    for q in primes_up_to(bound):
        out *= local_factor(e, int(q), s)
    return out
