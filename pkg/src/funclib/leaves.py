"""
Catalog of leaf multiplicative functions.

Every leaf carries a closed form at prime powers (``leaf_value``) and a
hand-built pseudo-linear representation (``leaf_rep``); the test suite checks
one against the other.
"""
from dataclasses import dataclass
from math import comb

from ffpoly.polys import ModPoly
from pseudolinear.reps import PseudoLinearRep

from .exceptions import InvalidLeafParameter, UnknownLeaf


@dataclass(frozen=True)
class LeafSpec:
    name: str
    shell: str
    latex: str
    min_param: int = None  # None: the leaf takes no parameter

    @property
    def takes_param(self):
        return self.min_param is not None


LEAVES = {
    spec.name: spec for spec in (
        LeafSpec('one', '𝟙', r'\mathbb{1}'),
        LeafSpec('epsilon', 'ε', r'\varepsilon'),
        LeafSpec('id', 'Id', r'\mathrm{Id}'),
        LeafSpec('phi', 'φ', r'\varphi'),
        LeafSpec('sigma', 'σ', r'\sigma', 0),
        LeafSpec('tau', 'τ', r'\tau'),
        LeafSpec('tau_k', 'τ', r'\tau', 1),
        LeafSpec('mu', 'μ', r'\mu'),
        LeafSpec('mu_k', 'μ', r'\mu', 1),
        LeafSpec('jordan', 'J', 'J', 1),
        LeafSpec('lambda', 'λ', r'\lambda'),
        LeafSpec('zeta', 'ζ', r'\zeta', 0),
        LeafSpec('nu', 'ν', r'\nu', 1),
        LeafSpec('xi', 'ξ', r'\xi', 1),
        LeafSpec('theta', 'θ', r'\theta'),
        LeafSpec('sigmaprime', "σ'", r"\sigma'", 0),
        LeafSpec('psi', 'ψ', r'\psi', 0),
    )
}


def leaf_spec(name):
    try:
        return LEAVES[name]
    except KeyError:
        raise UnknownLeaf(f"unknown function {name!r}") from None


def check_param(name, k):
    """Validate an integer parameter for ``name``; symbolic values pass through."""
    spec = leaf_spec(name)
    if not spec.takes_param:
        if k is not None:
            raise InvalidLeafParameter(f"{name} takes no parameter")
        return
    if k is None:
        raise InvalidLeafParameter(f"{name} needs a parameter, e.g. {name}:2")
    if isinstance(k, int) and k < spec.min_param:
        raise InvalidLeafParameter(f"{name}:{k} needs parameter >= {spec.min_param}")


def leaf_value(name, k, q, j):
    """Exact value f(q^j) of a leaf at a prime power."""
    check_param(name, k)
    if j < 0:
        raise InvalidLeafParameter("prime-power exponent must be non-negative")
    if name == 'one':
        return 1
    if name == 'epsilon':
        return int(j == 0)
    if name == 'id':
        return q ** j
    if name == 'phi':
        return 1 if j == 0 else q ** j - q ** (j - 1)
    if name == 'sigma':
        return sum(q ** (i * k) for i in range(j + 1))
    if name == 'tau':
        return j + 1
    if name == 'tau_k':
        return comb(j + k - 1, k - 1)
    if name == 'mu':
        return int(j == 0) - int(j == 1)
    if name == 'mu_k':
        return int(j == 0) - int(j == k)
    if name == 'jordan':
        return 1 if j == 0 else q ** (j * k) - q ** ((j - 1) * k)
    if name == 'lambda':
        return -1 if j % 2 else 1
    if name == 'zeta':
        return q ** (j * k)
    if name == 'nu':
        return int(j % k == 0)
    if name == 'xi':
        return int(j < k)
    if name == 'theta':
        return 1 if j == 0 else 2
    if name == 'sigmaprime':
        return sum((-1) ** i * q ** (i * k) for i in range(j + 1))
    if name == 'psi':
        return 1 if j == 0 else q ** (j * k) + q ** ((j - 1) * k)
    raise UnknownLeaf(f"unknown function {name!r}")


def _shift_up(n):
    return [[int(col == row + 1) for col in range(n)] for row in range(n)]


def leaf_rep(name, k, p):
    """Pseudo-linear representation (A, u) of a leaf over F_p(X)."""
    check_param(name, k)
    X = ModPoly.x_power(1, p)
    if name == 'one':
        A, u = [[1]], [1]
    elif name == 'epsilon':
        A, u = [[0]], [1]
    elif name == 'id':
        A, u = [[X]], [1]
    elif name == 'zeta':
        A, u = [[ModPoly.x_power(k, p)]], [1]
    elif name in ('phi', 'jordan'):
        Xk = X if name == 'phi' else ModPoly.x_power(k, p)
        A, u = [[0, 1], [0, Xk]], [1, Xk - ModPoly.constant(1, p)]
    elif name == 'psi':
        Xk = ModPoly.x_power(k, p)
        A, u = [[0, 1], [0, Xk]], [1, Xk + ModPoly.constant(1, p)]
    elif name == 'sigma':
        Xk = ModPoly.x_power(k, p)
        A, u = [[1, 1], [0, Xk]], [1, Xk]
    elif name == 'sigmaprime':
        Xk = -ModPoly.x_power(k, p)
        A, u = [[1, 1], [0, Xk]], [1, Xk]
    elif name == 'tau':
        A, u = [[1, 1], [0, 1]], [1, 1]
    elif name == 'tau_k':
        A = [[int(col >= row) for col in range(k)] for row in range(k)]
        u = [1] * k
    elif name == 'mu':
        A, u = [[0, 1], [0, 0]], [1, -1]
    elif name == 'mu_k':
        A = _shift_up(k + 1)
        u = [1] + [0] * (k - 1) + [-1]
    elif name == 'lambda':
        A, u = [[-1]], [1]
    elif name == 'nu':
        A = _shift_up(k)
        A[k - 1][0] = 1
        u = [1] + [0] * (k - 1)
    elif name == 'xi':
        A, u = _shift_up(k), [1] * k
    elif name == 'theta':
        A, u = [[0, 1], [0, 1]], [1, 2]
    else:
        raise UnknownLeaf(f"unknown function {name!r}")
    return PseudoLinearRep.build(A, u, p)
