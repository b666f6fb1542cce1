"""
Least convergent integer shift s(f) of a representation.

The Euler product of R(f, s) = N/D converges when N and D are monic of equal
degree and deg D - deg(N - D) >= 2m, where m is the largest multiplicity of a
nonzero root of the characteristic polynomial of the minimal representation.
"""
import logging

from ffpoly.polys import ModFrac

from .exceptions import DivergentBellSeries, NoConvergentShift
from .reps import rep_reduce, rfraction_family

logger = logging.getLogger(__name__)

DEFAULT_WINDOW_FACTOR = 4


def _strip(poly):
    poly = list(poly)
    while poly and poly[-1].is_zero():
        poly.pop()
    return poly


def _tpoly_rem(a, b):
    a = _strip(a)
    b = _strip(b)
    inv = b[-1].inverse()
    while len(a) >= len(b):
        factor = a[-1] * inv
        offset = len(a) - len(b)
        for i, coeff in enumerate(b):
            a[offset + i] = a[offset + i] - factor * coeff
        a = _strip(a)
    return a


def _tpoly_gcd(a, b):
    a, b = _strip(a), _strip(b)
    while b:
        a, b = b, _tpoly_rem(a, b)
    return a


def _tpoly_diff(a):
    p = a[0].p
    return _strip([ModFrac.from_int(i, p) * c for i, c in enumerate(a)][1:])


def characteristic_polynomial(r):
    """
    Characteristic polynomial t^n - sum a_i t^i of a minimal representation,
    coefficients in F_p(X), lowest degree first.
    """
    red = rep_reduce(r)
    return [-a for a in red.A[-1]] + [ModFrac.one(r.p)]


def max_root_multiplicity(r):
    """Largest multiplicity of a nonzero root of the characteristic polynomial."""
    g = _strip(characteristic_polynomial(r))
    while len(g) > 1 and g[0].is_zero():
        g = g[1:]
    m = 1
    h = g
    while len(h) > 2:
        derivative = _tpoly_diff(h)
        if not derivative:
            break
        h = _tpoly_gcd(h, derivative)
        if len(h) < 2:
            break
        m += 1
    return m


def satisfies_criterion(fraction, multiplicity=1):
    if fraction.is_zero() or fraction.unit != 1:
        return False
    if fraction.num.degree != fraction.den.degree:
        return False
    gap = fraction.num - fraction.den
    if gap.is_zero():
        return True
    return fraction.den.degree - gap.degree >= 2 * multiplicity


def min_shift(r, margin=True, window_factor=DEFAULT_WINDOW_FACTOR):
    """
    Least integer s in the probe window whose shifted R-fraction converges.

    With the default ``margin=True`` the degree gap must be at least 2m for a
    pole of multiplicity m, which is stricter than the plain deg(N - D) <=
    deg D - 2 criterion whenever the characteristic polynomial has a repeated
    root: τ gets 4 instead of 2. Pass ``margin=False`` for the plain criterion.

    Convergence is upward closed in s (raising s only lowers the degree of
    N - D relative to D), so the search walks from s = 0 towards the boundary
    instead of scanning the whole window.

    Args:
        r: representation of f
        margin: require the repeated-pole margin; False applies m = 1
        window_factor: the window is [-w*maxdeg, w*maxdeg]

    Returns:
        int: s(f)

    Raises:
        NoConvergentShift: no shift in the window qualifies
    """
    red = rep_reduce(r)
    multiplicity = max_root_multiplicity(red) if margin else 1
    maxdeg = max(1, r.dim * (1 + max(0, r.max_entry_degree())))
    bound = window_factor * maxdeg
    family = rfraction_family(red)

    def converges(s):
        try:
            return satisfies_criterion(family.at(s), multiplicity)
        except DivergentBellSeries:
            return False

    s = 0
    if converges(s):
        while s > -bound and converges(s - 1):
            s -= 1
    else:
        while not converges(s):
            s += 1
            if s > bound:
                raise NoConvergentShift(f"no convergent shift in [{-bound}, {bound}]")
    logger.debug("s(f) = %d with pole multiplicity %d", s, multiplicity)
    return s
