"""Riemann zeta at integer arguments by partial sums with an Euler-Maclaurin tail."""
import math
from functools import lru_cache

import numpy as np

from .exceptions import VerificationError

ZETA_CUTOFF = 10 ** 4


@lru_cache(maxsize=512)
def zeta_value(s, N=ZETA_CUTOFF):
    """
    ζ(s) for an integer s >= 2.

    The partial sum up to N is corrected by the Euler-Maclaurin tail through
    the N^(-s-3) term; for N >= 10^4 the error is far below 1e-12.

    Raises:
        VerificationError: s < 2 (the series diverges) or N < 1
    """
    if s < 2:
        raise VerificationError(f"ζ({s}) is outside the convergent range s >= 2")
    if N < 1:
        raise VerificationError(f"cutoff must be positive, got {N}")
    n = np.arange(1, N + 1, dtype=np.float64)
    head = math.fsum(n ** -float(s))
    N = float(N)
    tail = (
        N ** (1 - s) / (s - 1)
        - N ** -s / 2
        + s * N ** (-s - 1) / 12
        - s * (s + 1) * (s + 2) * N ** (-s - 3) / 720
    )
    return head + tail
