"""Numerical verification of relations prod L(f_i, s_i)^{c_i} = 1."""
import logging
from dataclasses import dataclass
from fractions import Fraction

from joblib import Parallel, delayed

from ffpoly.polys import DEFAULT_PRIME
from funclib.expressions import ONE
from pseudolinear.convergence import min_shift
from pseudolinear.exceptions import RepresentationError

from .sums import dirichlet_partial_sum, euler_product
from .zeta import zeta_value

logger = logging.getLogger(__name__)

PASS = 'pass'
FAIL = 'fail'
DIVERGENT = 'divergent-term'


@dataclass
class VerifyReport:
    relation: object
    lhs: float
    rhs: float
    residual: float
    N: int
    status: str
    constant: Fraction = None
    note: str = ''

    @property
    def passed(self):
        return self.status == PASS

    def line(self):
        if self.status == PASS:
            return f"verified (res={self.residual:.2e}, N={self.N})"
        if self.status == DIVERGENT:
            return DIVERGENT
        return f"FAILED ({self.note})" if self.note else "FAILED"

    def as_dict(self):
        return {
            'status': self.status,
            'residual': None if self.residual is None else float(self.residual),
            'N': self.N,
            'constant': None if self.constant is None else str(self.constant),
            'note': self.note,
        }


def divergent_terms(r, p=DEFAULT_PRIME):
    """Terms whose shift lies below the convergence bound of their function."""
    out = []
    for (expr, shift), exp in r.terms:
        if expr == ONE:
            if shift <= 1:
                out.append(((expr, shift), exp))
            continue
        try:
            bound = min_shift(expr.rep(p), margin=False)
        except RepresentationError:
            out.append(((expr, shift), exp))
            continue
        if shift < bound:
            out.append(((expr, shift), exp))
    return out


def verify_relation(r, N, tol, p=DEFAULT_PRIME, euler_bound=None, euler_tol=1e-3, max_denominator=100):
    """
    Compare both sides of a relation numerically.

    Args:
        r: Relation
        N: Dirichlet series cutoff
        tol: pass threshold on |lhs/rhs - 1|
        p: prime used for the convergence test of each term
        euler_bound: also evaluate every function term as an Euler product
            over the primes up to this bound and require agreement to
            ``euler_tol``; None skips the cross-check
        max_denominator: largest denominator tried when the ratio looks
            like a rational constant other than 1

    Returns:
        VerifyReport
    """
    divergent = divergent_terms(r, p)
    if divergent:
        (expr, shift), _ = divergent[0]
        note = f"ζ({shift})" if expr == ONE else f"L({expr}, {shift})"
        return VerifyReport(r, None, None, None, N, DIVERGENT, note=f"{note} diverges")

    lhs, rhs = 1.0, 1.0
    for (expr, shift), exp in r.terms:
        if expr == ONE:
            rhs *= zeta_value(shift) ** -exp
            continue
        value = dirichlet_partial_sum(expr, shift, N)
        if euler_bound:
            euler = euler_product(expr, shift, euler_bound)
            if abs(euler / value - 1) > euler_tol:
                return VerifyReport(
                    r, None, None, None, N, FAIL,
                    note=f"Euler product of L({expr}, {shift}) disagrees: {euler:.10g} vs {value:.10g}",
                )
        lhs *= value ** exp

    if rhs == 0:
        return VerifyReport(r, lhs, rhs, float('inf'), N, FAIL, note="right-hand side vanishes")
    ratio = lhs / rhs
    residual = abs(ratio - 1)
    if residual < tol:
        return VerifyReport(r, lhs, rhs, residual, N, PASS)

    constant = Fraction(ratio).limit_denominator(max_denominator)
    if constant not in (0, 1) and abs(ratio / float(constant) - 1) < tol:
        logger.warning("relation off by the constant %s (ratio %.12g)", constant, ratio)
        return VerifyReport(r, lhs, rhs, residual, N, FAIL, constant, f"constant mismatch c ≈ {constant}")
    return VerifyReport(r, lhs, rhs, residual, N, FAIL, note=f"res={residual:.2e}")


def verify_all(relations, N, tol, p=DEFAULT_PRIME, jobs=1, **kwargs):
    """Verify independent relations, in separate processes when ``jobs`` > 1."""
    if jobs > 1 and len(relations) > 1:
        return Parallel(n_jobs=jobs, backend='loky')(
            delayed(verify_relation)(r, N, tol, p, **kwargs) for r in relations
        )
    return [verify_relation(r, N, tol, p, **kwargs) for r in relations]
