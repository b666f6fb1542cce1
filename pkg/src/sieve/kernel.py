"""
Left kernel of the composition matrix by fraction-free elimination.

Rows are processed in a priority order. Each row is reduced against the
pivots found so far (pivot = lowest nonzero column) while tracking the
integer combination of original rows; a row that reduces to zero yields a
kernel vector.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KernelVector:
    coeffs: dict
    dependent: int = None

    def support(self):
        return set(self.coeffs)

    def items(self):
        return sorted(self.coeffs.items())


def _integral(row):
    scale = 1
    for exp in row.values():
        scale = lcm(scale, Fraction(exp).denominator)
    return {col: int(Fraction(exp) * scale) for col, exp in row.items() if exp}


def _combine(a, ka, b, kb):
    """ka * a - kb * b on sparse integer dicts."""
    out = {key: ka * value for key, value in a.items()}
    for key, value in b.items():
        out[key] = out.get(key, 0) - kb * value
    return {key: value for key, value in out.items() if value}


def _content(*dicts):
    g = 0
    for d in dicts:
        for value in d.values():
            g = gcd(g, value)
    return g


def primitive(coeffs):
    """Divide out the content and make the first coefficient (by row index) positive."""
    g = _content(coeffs)
    if not g:
        return {}
    first = min(coeffs)
    if coeffs[first] < 0:
        g = -g
    return {row: value // g for row, value in sorted(coeffs.items())}


def _reduce_pair(target, other, pivot_row):
    """Eliminate ``pivot_row`` from ``target`` using ``other`` if that shrinks the support."""
    a, b = target.get(pivot_row), other.get(pivot_row)
    if not a or not b:
        return None
    g = gcd(a, b)
    candidate = primitive(_combine(target, b // g, other, a // g))
    if candidate and len(candidate) < len(target):
        return candidate
    return None


def kernel_relations(M, order=None):
    """
    Basis of the left null space of ``M`` as primitive integer vectors.

    Args:
        M: CompositionMatrix
        order: row indices in pivoting priority; defaults to index order

    Returns:
        list[KernelVector]: one vector per dependent row, in processing order
    """
    order = list(range(len(M.rows))) if order is None else list(order)
    pivots = {}
    vectors = []
    for index in order:
        row = _integral(M.rows[index])
        combo = {index: 1}
        while row:
            col = min(row)
            if col not in pivots:
                pivots[col] = (row, combo)
                break
            prow, pcombo = pivots[col]
            g = gcd(row[col], prow[col])
            ka, kb = prow[col] // g, row[col] // g
            row = _combine(row, ka, prow, kb)
            combo = _combine(combo, ka, pcombo, kb)
            c = _content(row, combo)
            if c > 1:
                row = {k: v // c for k, v in row.items()}
                combo = {k: v // c for k, v in combo.items()}
        else:
            vectors.append(KernelVector(primitive(combo), dependent=index))

    changed = True
    while changed:
        changed = False
        for i, vi in enumerate(vectors):
            for j, vj in enumerate(vectors):
                if i == j:
                    continue
                reduced = _reduce_pair(vj.coeffs, vi.coeffs, vi.dependent)
                if reduced is not None:
                    vectors[j] = KernelVector(reduced, vj.dependent)
                    changed = True
    logger.info("kernel has dimension %d over %d rows (%d pivots)", len(vectors), len(order), len(pivots))
    return vectors


def verify_kernel_vector(M, vector):
    """True when sum_r c_r * M[r] vanishes exactly."""
    total = {}
    for row_index, coeff in vector.coeffs.items():
        for col, exp in M.rows[row_index].items():
            total[col] = total.get(col, Fraction(0)) + coeff * Fraction(exp)
    return not any(total.values())
