"""
Holding basis: a pairwise-coprime set of monic polynomials refined by
inserting every R-fraction numerator and denominator.

Inserts may run concurrently. Readers scan a snapshot of the element list;
a split (Case 2) or append (Case 3) is committed under the lock only if the
basis version is unchanged since the snapshot, otherwise the worker rescans.
"""
import logging
import threading

from joblib import Parallel, delayed

from ffpoly.polys import poly_divexact, poly_gcd

from .exceptions import SieveError

logger = logging.getLogger(__name__)


class HoldingBasis:
    def __init__(self, p, elements=(), counts=None):
        self.p = p
        self.elements = list(elements)
        self.counts = list(counts) if counts is not None else [0] * len(self.elements)
        self.version = 0
        self._lock = threading.Lock()

    def snapshot(self):
        with self._lock:
            return self.version, tuple(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, index):
        return self.elements[index]

    def index(self):
        return {element: i for i, element in enumerate(self.elements)}

    def _split(self, version, old, quotient):
        with self._lock:
            if self.version != version:
                return False
            self.elements[self.elements.index(old)] = quotient
            self.version += 1
            return True

    def _append(self, version, poly):
        with self._lock:
            if self.version != version:
                return False
            self.elements.append(poly)
            self.counts.append(0)
            self.version += 1
            return True


def basis_insert(B, P):
    """
    Refine ``B`` so that ``P`` is a product of powers of its elements.

    Case 0 drops constants, Case 1 divides out an element dividing P (applied
    to exhaustion first), Case 2 splits an element sharing a factor with P,
    Case 3 appends P.

    Raises:
        SieveError: P is the zero polynomial
    """
    if P.is_zero():
        raise SieveError("cannot insert the zero polynomial")
    stack = [P.monic()]
    while stack:
        P = stack.pop()
        while True:
            if P.degree <= 0:
                break
            version, elements = B.snapshot()
            divisor = next((Q for Q in elements if Q.degree <= P.degree and Q.divides(P)), None)
            if divisor is not None:
                P = poly_divexact(P, divisor)
                continue
            committed = False
            for Q in elements:
                g = poly_gcd(Q, P)
                if g.degree <= 0:
                    continue
                if not B._split(version, Q, poly_divexact(Q, g)):
                    break
                stack.append(poly_divexact(P, g))
                stack.append(g)
                committed = True
                break
            else:
                committed = B._append(version, P)
            if committed:
                break
    return B


def build_basis(polys, p, threads=1):
    """Insert every polynomial, in parallel when ``threads`` > 1."""
    B = HoldingBasis(p)
    polys = [P for P in polys if P.degree > 0]
    if threads > 1:
        Parallel(n_jobs=threads, backend='threading')(delayed(basis_insert)(B, P) for P in polys)
    else:
        for P in polys:
            basis_insert(B, P)
    logger.info("holding basis has %d elements from %d inserts", len(B), len(polys))
    return B


def basis_sort(B):
    """
    A new basis ordered by descending usage count, then degree, then
    coefficients (lowest degree first).
    """
    order = sorted(
        range(len(B)),
        key=lambda i: (-B.counts[i], B.elements[i].degree, B.elements[i].coeffs),
    )
    return HoldingBasis(B.p, [B.elements[i] for i in order], [B.counts[i] for i in order])
