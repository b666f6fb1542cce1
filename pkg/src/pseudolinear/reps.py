"""
Pseudo-linear representations (A, u) of multiplicative functions.

A representation encodes f(q^k) = pi(A^k u) evaluated at X = q, where pi takes
the first coordinate. Representations are stored unshifted; ``rep_shift``
applies Id^{-s} by scaling A with X^{-s}.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache

from ffpoly.polys import ModFrac, ModPoly, poly_divexact, poly_gcd

from . import matrices
from .exceptions import (
    DivergentBellSeries, RepresentationError, SingularConvolution, SingularMatrix,
)

logger = logging.getLogger(__name__)


def _coerce(value, p):
    if isinstance(value, ModFrac):
        return value
    if isinstance(value, ModPoly):
        return ModFrac.from_poly(value)
    return ModFrac.from_int(value, p)


@dataclass(frozen=True)
class PseudoLinearRep:
    A: tuple
    u: tuple

    def __post_init__(self):
        n = len(self.u)
        if n == 0:
            raise RepresentationError("representation must have positive dimension")
        if len(self.A) != n or any(len(row) != n for row in self.A):
            raise RepresentationError(f"A must be {n}x{n} to match u")
        p = self.u[0].p
        if any(x.p != p for row in self.A for x in row) or any(x.p != p for x in self.u):
            raise RepresentationError("entries of A and u must share one modulus")

    @classmethod
    def build(cls, A, u, p):
        """Construct from rows of ints, ModPoly or ModFrac entries."""
        return cls(
            tuple(tuple(_coerce(x, p) for x in row) for row in A),
            tuple(_coerce(x, p) for x in u),
        )

    @property
    def dim(self):
        return len(self.u)

    @property
    def p(self):
        return self.u[0].p

    def max_entry_degree(self):
        return max(x.max_degree() for x in (*self.u, *(y for row in self.A for y in row)))


def bell_coeffs(r, count):
    """The first ``count`` Bell coefficients c_0, c_1, ... as a tuple."""
    out = []
    v = r.u
    for k in range(count):
        if k:
            v = matrices.matvec(r.A, v)
        out.append(v[0])
    return tuple(out)


def rep_bell_coeff(r, k):
    """pi(A^k u), computed with k matrix-vector products."""
    if k < 0:
        raise RepresentationError("Bell coefficient index must be non-negative")
    v = r.u
    for _ in range(k):
        v = matrices.matvec(r.A, v)
    return v[0]


def rep_shift(r, s):
    if s == 0:
        return r
    return PseudoLinearRep(matrices.scale(r.A, ModFrac.x_power(-s, r.p)), r.u)


def rep_product(f, g):
    """Pointwise product: (A (x) B, u (x) v)."""
    return PseudoLinearRep(matrices.kron(f.A, g.A), matrices.kron_vec(f.u, g.u))


def rep_convolve(f, g):
    """
    Dirichlet convolution of two representations.

    With U = A (x) I and V = I (x) B the convolved coefficients are
    pi(U^k u') + pi(V^k v') where w solves (U - V) w = u (x) v, u' = U w and
    v' = -V w. The result carries a leading accumulator coordinate.

    Raises:
        SingularConvolution: U - V is not invertible
    """
    p = f.p
    U = matrices.kron(f.A, matrices.identity(g.dim, p))
    V = matrices.kron(matrices.identity(f.dim, p), g.A)
    try:
        w = matrices.solve(matrices.matsub(U, V), matrices.kron_vec(f.u, g.u))
    except SingularMatrix as exc:
        raise SingularConvolution("A (x) I - I (x) B is singular") from exc
    u1 = matrices.matvec(U, w)
    v1 = tuple(-x for x in matrices.matvec(V, w))

    nm = f.dim * g.dim
    zero = ModFrac.zero(p)
    blank = (zero,) * nm
    rows = [(zero, *U[0], *V[0])]
    rows.extend((zero, *row, *blank) for row in U)
    rows.extend((zero, *blank, *row) for row in V)
    return PseudoLinearRep(tuple(rows), (u1[0] + v1[0], *u1, *v1))


def rep_power(f, ell):
    """Representation of m -> f(m^ell): (A^ell, u)."""
    if ell < 1:
        raise RepresentationError("power substitution needs ell >= 1")
    A = f.A
    for _ in range(ell - 1):
        A = matrices.matmul(A, f.A)
    return PseudoLinearRep(A, f.u)


def companion(coeffs, initial):
    """
    Companion-form representation of c_{k+r} = sum_i coeffs[i] c_{k+i} with
    state vector (c_0, ..., c_{r-1}).
    """
    r = len(coeffs)
    p = initial[0].p
    zero, one = ModFrac.zero(p), ModFrac.one(p)
    rows = [tuple(one if j == i + 1 else zero for j in range(r)) for i in range(r - 1)]
    rows.append(tuple(coeffs))
    return PseudoLinearRep(tuple(rows), tuple(initial))


def recurrence(r):
    """
    Least-order linear recurrence of the Bell coefficients.

    Returns:
        tuple: (coeffs, c) with coeffs = (a_0, ..., a_{order-1}) and c the first
        2n + 1 coefficients; coeffs is empty when the sequence vanishes.
    """
    n = r.dim
    c = bell_coeffs(r, 2 * n + 1)
    if all(x.is_zero() for x in c):
        return (), c
    for order in range(1, n + 1):
        rows = tuple(tuple(c[k + i] for i in range(order)) for k in range(2 * n - order + 1))
        rhs = tuple(c[k + order] for k in range(2 * n - order + 1))
        solution = matrices.solve_consistent(rows, rhs)
        if solution is not None:
            return solution, c
    raise RepresentationError(f"no recurrence of order <= {n} found")


def rep_reduce(r):
    """Minimal-dimension representation with the same Bell coefficients."""
    coeffs, c = recurrence(r)
    if not coeffs:
        zero = ModFrac.zero(r.p)
        return PseudoLinearRep(((zero,),), (zero,))
    if len(coeffs) == r.dim and r.dim > 1:
        logger.debug("representation of dimension %d is already minimal", r.dim)
    return companion(coeffs, c[:len(coeffs)])


def rep_to_rfraction(r):
    """
    R-fraction sum_k c_k = pi((I - A)^{-1} u), scalar unit kept exactly.

    Raises:
        DivergentBellSeries: I - A is singular
    """
    try:
        x = matrices.solve(matrices.matsub(matrices.identity(r.dim, r.p), r.A), r.u)
    except SingularMatrix as exc:
        raise DivergentBellSeries("I - A is singular") from exc
    return x[0]


def _clear(x, common):
    if x.is_zero():
        return ModPoly((), x.p)
    return (x.num * poly_divexact(common, x.den)).scale(x.unit)


@dataclass(frozen=True)
class RFractionFamily:
    """
    R(f, s) for every integer shift s from one generating function.

    The Bell series sum_k c_k t^k equals P(t)/Q(t), where ``num`` and ``den``
    hold the coefficients of P and Q (lowest power of t first) as
    polynomials in X. R(f, s) is P(X^-s)/Q(X^-s) with both sides multiplied
    by X^(s * deg Q), so no solve is needed per shift.
    """
    num: tuple
    den: tuple

    @property
    def p(self):
        return self.den[0].p

    def _substitute(self, coeffs, s):
        top = len(self.den) - 1
        out = ModPoly((), self.p)
        for j, c in enumerate(coeffs):
            if c.is_zero():
                continue
            power = s * (top - j) if s >= 0 else -s * j
            out = out + c * ModPoly.x_power(power, self.p)
        return out

    def at(self, s):
        """
        R-fraction of the representation shifted by s, scalar unit kept.

        Raises:
            DivergentBellSeries: Q(X^-s) vanishes
        """
        den = self._substitute(self.den, s)
        if den.is_zero():
            raise DivergentBellSeries(f"the Bell series has a pole at shift {s}")
        return ModFrac.from_polys(self._substitute(self.num, s), den)


@lru_cache(maxsize=512)
def rfraction_family(r):
    """Generating function P/Q of the Bell coefficients of r."""
    p = r.p
    coeffs, c = recurrence(r)
    if not coeffs:
        return RFractionFamily((), (ModPoly.constant(1, p),))
    order = len(coeffs)
    q = [ModFrac.one(p)] + [ModFrac.zero(p)] * order
    for i, a in enumerate(coeffs):
        q[order - i] = -a
    # P = Q * (c_0 + ... + c_{order-1} t^{order-1}) mod t^order
    head = []
    for n in range(order):
        total = ModFrac.zero(p)
        for j in range(n + 1):
            if not q[j].is_zero() and not c[n - j].is_zero():
                total = total + q[j] * c[n - j]
        head.append(total)
    common = ModPoly.constant(1, p)
    for x in (*head, *q):
        if not x.is_zero():
            common = poly_divexact(common * x.den, poly_gcd(common, x.den))
    return RFractionFamily(
        tuple(_clear(x, common) for x in head),
        tuple(_clear(x, common) for x in q),
    )
