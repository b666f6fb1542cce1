"""
Expression trees over the leaf catalog.

Nodes are immutable and hashable. Build them through ``leaf``, ``product``,
``convolution`` and ``powersub``, which canonicalize aliases (sigma:0 is tau,
jordan:1 is phi, ...) so that equal functions compare equal.

Leaf parameters and product exponents are Python ints in concrete
expressions; relation templates use sympy expressions in the same slots and
``FuncVar`` placeholders for whole sub-functions.
"""
import logging
from functools import lru_cache

import sympy

from pseudolinear.exceptions import SingularConvolution
from pseudolinear.reps import rep_convolve, rep_power, rep_product, rep_reduce

from .exceptions import FuncExprError, InvalidLeafParameter
from .leaves import check_param, leaf_rep, leaf_spec, leaf_value
from .numbers import factorize

logger = logging.getLogger(__name__)

_SUBSCRIPTS = str.maketrans('0123456789-', '₀₁₂₃₄₅₆₇₈₉₋')

_ALIASES = {
    ('sigma', 0): ('tau', None),
    ('zeta', 0): ('one', None),
    ('zeta', 1): ('id', None),
    ('jordan', 1): ('phi', None),
    ('mu_k', 1): ('mu', None),
    ('tau_k', 1): ('one', None),
    ('tau_k', 2): ('tau', None),
    ('xi', 1): ('epsilon', None),
    ('nu', 1): ('one', None),
    ('psi', 0): ('theta', None),
    ('sigmaprime', 0): ('nu', 2),
}


def _as_int(value):
    """Collapse sympy integers to int; leave symbolic values alone."""
    if isinstance(value, sympy.Basic) and value.is_Integer:
        return int(value)
    return value


def _subs_slot(value, bindings):
    if not isinstance(value, sympy.Basic):
        return value
    symbols = {k: v for k, v in bindings.items() if isinstance(k, sympy.Symbol)}
    return _as_int(value.subs(symbols))


def _slot_grammar(value):
    if isinstance(value, int) or (isinstance(value, sympy.Symbol)):
        return str(value)
    return f'({value})'


def _slot_key(value):
    return str(value)


class FuncExpr:
    """Base class of expression nodes."""

    __slots__ = ()

    def value(self, q, j):
        """Exact value at the prime power q^j."""
        return _value(self, q, j)

    def rep(self, p):
        return expr_rep(self, p)

    @property
    def score(self):
        raise NotImplementedError

    def key(self):
        raise NotImplementedError

    def display(self, fmt='shell'):
        raise NotImplementedError

    def to_grammar(self):
        raise NotImplementedError

    def children(self):
        return ()

    def subs(self, bindings):
        """Substitute symbols (sympy Symbol -> int) and function variables (name -> FuncExpr)."""
        raise NotImplementedError

    def free_symbols(self):
        out = set()
        for child in self.children():
            out |= child.free_symbols()
        return out

    def is_concrete(self):
        return not self.free_symbols() and all(c.is_concrete() for c in self.children())

    def __eq__(self, other):
        return isinstance(other, FuncExpr) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __str__(self):
        return self.display('shell')

    def __repr__(self):
        return f"{type(self).__name__}({self.to_grammar()!r})"


class Leaf(FuncExpr):
    __slots__ = ('name', 'param')

    def __init__(self, name, param=None):
        self.name = name
        self.param = param

    @property
    def score(self):
        return 0 if self.name == 'one' else 1

    def key(self):
        return ('leaf', self.name, _slot_key(self.param))

    def display(self, fmt='shell'):
        spec = leaf_spec(self.name)
        k = self.param
        if fmt == 'latex':
            if k is None or k == 1:
                return spec.latex
            return f'{spec.latex}_{{{sympy.latex(k) if isinstance(k, sympy.Basic) else k}}}'
        if k is None or k == 1:
            return spec.shell
        if isinstance(k, int):
            return spec.shell + str(k).translate(_SUBSCRIPTS)
        return f'{spec.shell}_{{{k}}}'

    def to_grammar(self):
        return self.name if self.param is None else f'{self.name}:{_slot_grammar(self.param)}'

    def subs(self, bindings):
        if not isinstance(self.param, sympy.Basic):
            return self
        return leaf(self.name, _subs_slot(self.param, bindings))

    def free_symbols(self):
        if isinstance(self.param, sympy.Basic):
            return set(self.param.free_symbols)
        return set()


class Product(FuncExpr):
    """Pointwise product of (child, exponent) factors, kept in construction order."""

    __slots__ = ('factors',)

    def __init__(self, factors):
        self.factors = tuple(factors)

    def children(self):
        return tuple(child for child, _ in self.factors)

    @property
    def score(self):
        return sum(child.score * exp for child, exp in self.factors)

    def key(self):
        return ('product', tuple(sorted((child.key(), _slot_key(exp)) for child, exp in self.factors)))

    def display(self, fmt='shell'):
        parts = []
        for child, exp in self.factors:
            text = child.display(fmt)
            if exp != 1:
                if fmt == 'latex':
                    power = sympy.latex(exp) if isinstance(exp, sympy.Basic) else exp
                    text = f'{{{text}}}^{{{power}}}'
                else:
                    text = f'{text}^{exp}'
            parts.append(text)
        return (r' \, ' if fmt == 'latex' else ' ').join(parts)

    def to_grammar(self):
        parts = []
        for child, exp in self.factors:
            text = child.to_grammar()
            if isinstance(child, Product):
                text = f'({text})'
            parts.append(text if exp == 1 else f'{text}^{_slot_grammar(exp)}')
        return '*'.join(parts)

    def subs(self, bindings):
        return product(*((child.subs(bindings), _subs_slot(exp, bindings)) for child, exp in self.factors))

    def free_symbols(self):
        out = super().free_symbols()
        for _, exp in self.factors:
            if isinstance(exp, sympy.Basic):
                out |= set(exp.free_symbols)
        return out


class Convolution(FuncExpr):
    __slots__ = ('left', 'right')

    def __init__(self, left, right):
        self.left = left
        self.right = right

    def children(self):
        return (self.left, self.right)

    @property
    def score(self):
        return self.left.score + self.right.score

    def key(self):
        return ('conv', tuple(sorted((self.left.key(), self.right.key()))))

    def display(self, fmt='shell'):
        if fmt == 'latex':
            return rf'({self.left.display(fmt)} \ast {self.right.display(fmt)})'
        return f'({self.left.display(fmt)} ∗ {self.right.display(fmt)})'

    def to_grammar(self):
        return f'conv({self.left.to_grammar()}, {self.right.to_grammar()})'

    def subs(self, bindings):
        return convolution(self.left.subs(bindings), self.right.subs(bindings))


class PowerSub(FuncExpr):
    """The function m -> f(m^ell)."""

    __slots__ = ('child', 'ell')

    def __init__(self, child, ell):
        self.child = child
        self.ell = ell

    def children(self):
        return (self.child,)

    @property
    def score(self):
        return self.child.score

    def key(self):
        return ('powersub', self.child.key(), _slot_key(self.ell))

    def display(self, fmt='shell'):
        if fmt == 'latex':
            ell = sympy.latex(self.ell) if isinstance(self.ell, sympy.Basic) else self.ell
            return rf'(m \mapsto {self.child.display(fmt)}(m^{{{ell}}}))'
        return f'(m ↦ {self.child.display(fmt)}(m^{self.ell}))'

    def to_grammar(self):
        return f'powersub({self.child.to_grammar()}, {_slot_grammar(self.ell)})'

    def subs(self, bindings):
        return powersub(self.child.subs(bindings), _subs_slot(self.ell, bindings))

    def free_symbols(self):
        out = super().free_symbols()
        if isinstance(self.ell, sympy.Basic):
            out |= set(self.ell.free_symbols)
        return out


class FuncVar(FuncExpr):
    """Placeholder for an arbitrary function inside a relation template."""

    __slots__ = ('name',)

    def __init__(self, name):
        self.name = name

    @property
    def score(self):
        return 1

    def key(self):
        return ('var', self.name)

    def display(self, fmt='shell'):
        return self.name

    def to_grammar(self):
        return self.name

    def subs(self, bindings):
        return bindings.get(self.name, self)

    def is_concrete(self):
        return False


def leaf(name, param=None):
    """Canonical leaf, resolving parameter aliases such as sigma:0 -> tau."""
    param = _as_int(param)
    check_param(name, param)
    if isinstance(param, int) and (name, param) in _ALIASES:
        return leaf(*_ALIASES[(name, param)])
    return Leaf(name, param)


ONE = Leaf('one')
EPSILON = Leaf('epsilon')


def product(*items):
    """
    Canonical pointwise product.

    Items are expressions or (expression, exponent) pairs. Nested products are
    flattened, equal factors merged, 1 dropped, and epsilon absorbs the rest.
    """
    merged = {}

    def add(child, exp):
        if isinstance(child, Product):
            for inner, inner_exp in child.factors:
                add(inner, inner_exp * exp)
            return
        if child == ONE:
            return
        merged[child] = merged.get(child, 0) + exp

    for item in items:
        child, exp = item if isinstance(item, tuple) else (item, 1)
        exp = _as_int(exp)
        if isinstance(exp, int) and exp < 0:
            raise InvalidLeafParameter(f"negative pointwise exponent {exp}")
        add(child, exp)

    factors = [(child, _as_int(exp)) for child, exp in merged.items() if exp != 0]
    if any(child == EPSILON for child, _ in factors):
        return EPSILON
    if not factors:
        return ONE
    if len(factors) == 1 and factors[0][1] == 1:
        return factors[0][0]
    return Product(factors)


def convolution(left, right):
    if left == EPSILON:
        return right
    if right == EPSILON:
        return left
    return Convolution(left, right)


def powersub(child, ell):
    ell = _as_int(ell)
    if isinstance(ell, int):
        if ell < 1:
            raise InvalidLeafParameter(f"powersub needs ell >= 1, got {ell}")
        if ell == 1:
            return child
    if child in (ONE, EPSILON):
        return child
    return PowerSub(child, ell)


@lru_cache(maxsize=65536)
def _value(e, q, j):
    if isinstance(e, Leaf):
        return leaf_value(e.name, e.param, q, j)
    if isinstance(e, Product):
        out = 1
        for child, exp in e.factors:
            out *= _value(child, q, j) ** exp
        return out
    if isinstance(e, Convolution):
        return sum(_value(e.left, q, i) * _value(e.right, q, j - i) for i in range(j + 1))
    if isinstance(e, PowerSub):
        return _value(e.child, q, j * e.ell)
    raise FuncExprError(f"{e} has no value oracle")


@lru_cache(maxsize=1024)
def expr_rep(e, p):
    """
    Representation of an expression, reduced to minimal dimension at every
    composite node.

    Raises:
        SingularConvolution: a convolution node cannot be built; the offending
            sub-expression is attached as ``expression``
    """
    if isinstance(e, Leaf):
        return leaf_rep(e.name, e.param, p)
    if isinstance(e, Product):
        out = None
        for child, exp in e.factors:
            base = expr_rep(child, p)
            for _ in range(exp):
                out = base if out is None else rep_reduce(rep_product(out, base))
        return out
    if isinstance(e, Convolution):
        left, right = expr_rep(e.left, p), expr_rep(e.right, p)
        try:
            return rep_reduce(rep_convolve(left, right))
        except SingularConvolution as exc:
            raise SingularConvolution(f"cannot convolve in {e}", expression=e) from exc
    if isinstance(e, PowerSub):
        return rep_reduce(rep_power(expr_rep(e.child, p), e.ell))
    raise FuncExprError(f"{e} has no representation")


def expr_value(e, n, spf):
    """
    Value f(n) through the factorization of n in the table ``spf``.

    Raises:
        ValueOutOfRange: n is not covered by the table
    """
    out = 1
    for q, j in factorize(n, spf):
        out *= _value(e, q, j)
    return out
