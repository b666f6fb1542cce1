"""Composition matrix: exponents of each R-fraction over the holding basis."""
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from joblib import Parallel, delayed

from ffpoly.polys import ModFrac, poly_divexact

from .basis import HoldingBasis
from .exceptions import IncompleteBasis, SieveError

logger = logging.getLogger(__name__)


@dataclass
class CompositionMatrix:
    rows: list
    ncols: int
    labels: list = field(default_factory=list)

    def __len__(self):
        return len(self.rows)

    def row_dense(self, index):
        out = [Fraction(0)] * self.ncols
        for col, exp in self.rows[index].items():
            out[col] = exp
        return out


def _strip_powers(poly, elements, sign, row):
    residual = poly
    for col, element in enumerate(elements):
        while residual.degree >= element.degree and element.divides(residual):
            residual = poly_divexact(residual, element)
            row[col] = row.get(col, Fraction(0)) + sign
    return residual


def decompose(f, B):
    """
    Sparse exponent row {column: exponent} of a fraction over the basis.

    Raises:
        IncompleteBasis: numerator or denominator leaves a non-unit residual
    """
    if f.is_zero():
        raise SieveError("the zero fraction has no decomposition")
    elements = B.elements if isinstance(B, HoldingBasis) else list(B)
    row = {}
    for poly, sign in ((f.num, 1), (f.den, -1)):
        residual = _strip_powers(poly, elements, sign, row)
        if residual.degree > 0:
            raise IncompleteBasis(f"residual {residual} of {f!r} is not a unit")
    return {col: exp for col, exp in sorted(row.items()) if exp}


def build_matrix(fractions, B, threads=1, labels=None):
    """Decompose every fraction against the (now read-only) basis."""
    if threads > 1:
        rows = Parallel(n_jobs=threads, backend='threading')(delayed(decompose)(f, B) for f in fractions)
    else:
        rows = [decompose(f, B) for f in fractions]
    return CompositionMatrix(rows, len(B), list(labels or []))


def tally_usage(B, M):
    """Set each element's count to the number of rows it occurs in."""
    counts = [0] * len(B)
    for row in M.rows:
        for col in row:
            counts[col] += 1
    B.counts = counts
    return B


def remap_columns(M, old, new):
    """Rewrite rows of ``M`` built over basis ``old`` into the ordering of ``new``."""
    index = new.index()
    mapping = [index[element] for element in old.elements]
    rows = [{mapping[col]: exp for col, exp in row.items()} for row in M.rows]
    return CompositionMatrix([dict(sorted(r.items())) for r in rows], len(new), M.labels)


def recompose(row, B):
    """Product of basis powers described by a row, as a normalized fraction."""
    out = ModFrac.one(B.p)
    for col, exp in row.items():
        if exp.denominator != 1:
            raise SieveError(f"non-integer exponent {exp} in column {col}")
        out = out * ModFrac.from_poly(B.elements[col]) ** int(exp)
    return out
