"""
Small dense matrices over F_p(X).

Matrices are tuples of row tuples of ``ModFrac``; vectors are tuples. All
helpers return fresh tuples and never mutate their inputs.
"""
from ffpoly.polys import ModFrac

from .exceptions import SingularMatrix


def zero_matrix(rows, cols, p):
    zero = ModFrac.zero(p)
    return tuple(tuple(zero for _ in range(cols)) for _ in range(rows))


def identity(n, p):
    zero, one = ModFrac.zero(p), ModFrac.one(p)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def dot(row, vec):
    total = None
    for a, b in zip(row, vec):
        if a.is_zero() or b.is_zero():
            continue
        term = a * b
        total = term if total is None else total + term
    return total if total is not None else ModFrac.zero(row[0].p)


def matvec(A, v):
    return tuple(dot(row, v) for row in A)


def matmul(A, B):
    columns = tuple(zip(*B))
    return tuple(tuple(dot(row, col) for col in columns) for row in A)


def matsub(A, B):
    return tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def scale(A, c):
    return tuple(tuple(c * a for a in row) for row in A)


def kron(A, B):
    """Kronecker product, row index (i, k) -> i * len(B) + k."""
    return tuple(
        tuple(a * b for a in row_a for b in row_b)
        for row_a in A
        for row_b in B
    )


def kron_vec(u, v):
    return tuple(a * b for a in u for b in v)


def _eliminate(rows, ncols):
    """
    Reduce an augmented system in place to reduced row echelon form.

    Returns:
        list: pivot column for each pivot row, in order
    """
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if not rows[i][col].is_zero()), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][col].is_zero():
                factor = rows[i][col]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return pivots


def solve(M, b):
    """
    Solve the square system M x = b exactly.

    Raises:
        SingularMatrix: M is not invertible
    """
    n = len(M)
    rows = [list(row) + [rhs] for row, rhs in zip(M, b)]
    pivots = _eliminate(rows, n)
    if len(pivots) < n:
        raise SingularMatrix(f"{n}x{n} system is singular")
    return tuple(rows[i][n] for i in range(n))


def solve_consistent(M, b):
    """
    Any solution of a possibly rectangular system M x = b, free variables set
    to zero, or None when the system is inconsistent.
    """
    ncols = len(M[0])
    rows = [list(row) + [rhs] for row, rhs in zip(M, b)]
    pivots = _eliminate(rows, ncols)
    for row in rows[len(pivots):]:
        if not row[ncols].is_zero():
            return None
    x = [ModFrac.zero(b[0].p)] * ncols
    for i, col in enumerate(pivots):
        x[col] = rows[i][ncols]
    return tuple(x)
