"""
Dense univariate polynomials over F_p and rational fractions in F_p(X).

Coefficients are stored in the high-degree-first list form used by
``sympy.polys.galoistools``; ``ModPoly.coeffs`` exposes them lowest degree
first. Both types are immutable and hashable, so they can be shared freely
between worker threads.
"""
from sympy.polys import galoistools as gf
from sympy.polys.domains import ZZ

from .exceptions import InexactDivision, ModulusMismatch, PolynomialError, ZeroDenominator

DEFAULT_PRIME = 997


def _clean(dense):
    return tuple(int(c) for c in gf.gf_strip(list(dense)))


class ModPoly:
    """Polynomial in F_p[X] with coefficients reduced into [0, p)."""

    __slots__ = ('_dense', 'p')

    def __init__(self, coeffs=(), p=DEFAULT_PRIME):
        self.p = int(p)
        self._dense = _clean([int(c) % self.p for c in reversed(list(coeffs))])

    @classmethod
    def _wrap(cls, dense, p):
        poly = cls.__new__(cls)
        poly.p = p
        poly._dense = _clean(dense)
        return poly

    @classmethod
    def constant(cls, c, p=DEFAULT_PRIME):
        return cls((c,), p)

    @classmethod
    def x_power(cls, n, p=DEFAULT_PRIME):
        if n < 0:
            raise PolynomialError(f"negative power X^{n} is not a polynomial")
        return cls._wrap([1] + [0] * n, p)

    @property
    def coeffs(self):
        return tuple(reversed(self._dense))

    @property
    def dense(self):
        return self._dense

    @property
    def degree(self):
        """Degree, with -1 for the zero polynomial."""
        return len(self._dense) - 1

    @property
    def lc(self):
        return self._dense[0] if self._dense else 0

    def is_zero(self):
        return not self._dense

    def is_one(self):
        return self._dense == (1,)

    def is_constant(self):
        return len(self._dense) <= 1

    def _check(self, other):
        if not isinstance(other, ModPoly):
            raise TypeError(f"expected ModPoly, got {type(other).__name__}")
        if other.p != self.p:
            raise ModulusMismatch(f"moduli differ: {self.p} vs {other.p}")

    def monic(self):
        if self.is_zero() or self.lc == 1:
            return self
        _, dense = gf.gf_monic(list(self._dense), self.p, ZZ)
        return ModPoly._wrap(dense, self.p)

    def scale(self, c):
        return ModPoly._wrap(gf.gf_mul_ground(list(self._dense), int(c) % self.p, self.p, ZZ), self.p)

    def __add__(self, other):
        self._check(other)
        return ModPoly._wrap(gf.gf_add(list(self._dense), list(other._dense), self.p, ZZ), self.p)

    def __sub__(self, other):
        self._check(other)
        return ModPoly._wrap(gf.gf_sub(list(self._dense), list(other._dense), self.p, ZZ), self.p)

    def __neg__(self):
        return ModPoly._wrap(gf.gf_neg(list(self._dense), self.p, ZZ), self.p)

    def __mul__(self, other):
        self._check(other)
        return ModPoly._wrap(gf.gf_mul(list(self._dense), list(other._dense), self.p, ZZ), self.p)

    def __pow__(self, n):
        if n < 0:
            raise PolynomialError("negative exponent on a polynomial")
        return ModPoly._wrap(gf.gf_pow(list(self._dense), n, self.p, ZZ), self.p)

    def __divmod__(self, other):
        self._check(other)
        if other.is_zero():
            raise ZeroDenominator("polynomial division by zero")
        q, r = gf.gf_div(list(self._dense), list(other._dense), self.p, ZZ)
        return ModPoly._wrap(q, self.p), ModPoly._wrap(r, self.p)

    def divides(self, other):
        """True when ``self`` divides ``other`` exactly."""
        self._check(other)
        if self.is_zero():
            return other.is_zero()
        if other.degree < self.degree and not other.is_zero():
            return False
        return not gf.gf_rem(list(other._dense), list(self._dense), self.p, ZZ)

    def derivative(self):
        return ModPoly._wrap(gf.gf_diff(list(self._dense), self.p, ZZ), self.p)

    def __call__(self, x):
        return int(gf.gf_eval(list(self._dense), int(x) % self.p, self.p, ZZ))

    def sort_key(self):
        return (self.degree, self.coeffs)

    def __eq__(self, other):
        return isinstance(other, ModPoly) and self.p == other.p and self._dense == other._dense

    def __hash__(self):
        return hash((self.p, self._dense))

    def __repr__(self):
        return f"ModPoly({list(self.coeffs)}, p={self.p})"

    def __str__(self):
        if self.is_zero():
            return '0'
        half = self.p // 2
        parts = []
        for power, c in reversed(list(enumerate(self.coeffs))):
            if not c:
                continue
            c = c - self.p if c > half else c
            mono = '' if power == 0 else ('X' if power == 1 else f'X^{power}')
            if not mono:
                text = str(abs(c))
            elif abs(c) == 1:
                text = mono
            else:
                text = f'{abs(c)}*{mono}'
            parts.append(('- ' if c < 0 else '+ ') + text)
        out = ' '.join(parts)
        return out[2:] if out.startswith('+ ') else '-' + out[2:]


def poly_gcd(a, b):
    """
    Monic greatest common divisor of two polynomials over the same field.

    Raises:
        ModulusMismatch: the operands live over different primes
        PolynomialError: both operands are zero
    """
    a._check(b)
    if a.is_zero() and b.is_zero():
        raise PolynomialError("gcd(0, 0) is undefined")
    return ModPoly._wrap(gf.gf_gcd(list(a.dense), list(b.dense), a.p, ZZ), a.p)


def poly_divexact(a, b):
    """Quotient a / b, insisting that the remainder is zero."""
    q, r = divmod(a, b)
    if not r.is_zero():
        raise InexactDivision(f"({a}) / ({b}) leaves remainder {r}")
    return q


def _inverse_mod(c, p):
    return int(ZZ.invert(int(c) % p, p))


class ModFrac:
    """
    Element ``unit * num / den`` of F_p(X).

    ``num`` and ``den`` are monic and coprime (``num`` may be zero) and the
    scalar ``unit`` lies in [1, p). Arithmetic keeps the unit exactly; the
    normalized form used for R-fractions drops it (see ``normalized``).
    """

    __slots__ = ('num', 'den', 'unit')

    def __init__(self, num, den, unit=1):
        self.num = num
        self.den = den
        self.unit = unit

    @classmethod
    def from_polys(cls, num, den):
        """Reduce an arbitrary quotient, keeping its scalar unit."""
        num._check(den)
        if den.is_zero():
            raise ZeroDenominator("fraction with zero denominator")
        p = num.p
        if num.is_zero():
            return cls.zero(p)
        g = poly_gcd(num, den)
        if not g.is_one():
            num = poly_divexact(num, g)
            den = poly_divexact(den, g)
        unit = num.lc * _inverse_mod(den.lc, p) % p
        return cls(num.monic(), den.monic(), unit)

    @classmethod
    def zero(cls, p=DEFAULT_PRIME):
        return cls(ModPoly((), p), ModPoly.constant(1, p), 1)

    @classmethod
    def one(cls, p=DEFAULT_PRIME):
        return cls.from_int(1, p)

    @classmethod
    def from_int(cls, c, p=DEFAULT_PRIME):
        c = int(c) % p
        if not c:
            return cls.zero(p)
        return cls(ModPoly.constant(1, p), ModPoly.constant(1, p), c)

    @classmethod
    def from_poly(cls, poly):
        return cls.from_polys(poly, ModPoly.constant(1, poly.p))

    @classmethod
    def x_power(cls, n, p=DEFAULT_PRIME):
        """X^n for any integer n."""
        one = ModPoly.constant(1, p)
        if n >= 0:
            return cls(ModPoly.x_power(n, p), one, 1)
        return cls(one, ModPoly.x_power(-n, p), 1)

    @property
    def p(self):
        return self.num.p

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.unit == 1 and self.num.is_one() and self.den.is_one()

    def normalized(self):
        """Same fraction with the scalar unit discarded."""
        if self.unit == 1 or self.is_zero():
            return self
        return ModFrac(self.num, self.den, 1)

    def _check(self, other):
        if not isinstance(other, ModFrac):
            raise TypeError(f"expected ModFrac, got {type(other).__name__}")
        if other.p != self.p:
            raise ModulusMismatch(f"moduli differ: {self.p} vs {other.p}")

    def __mul__(self, other):
        self._check(other)
        if self.is_zero() or other.is_zero():
            return ModFrac.zero(self.p)
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        num = poly_divexact(self.num, g1) * poly_divexact(other.num, g2)
        den = poly_divexact(self.den, g2) * poly_divexact(other.den, g1)
        return ModFrac(num, den, self.unit * other.unit % self.p)

    def inverse(self):
        if self.is_zero():
            raise ZeroDenominator("inverse of the zero fraction")
        return ModFrac(self.den, self.num, _inverse_mod(self.unit, self.p))

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    def __neg__(self):
        if self.is_zero():
            return self
        return ModFrac(self.num, self.den, (self.p - self.unit) % self.p)

    def __add__(self, other):
        self._check(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        g = poly_gcd(self.den, other.den)
        left = poly_divexact(self.den, g)
        right = poly_divexact(other.den, g)
        num = self.num.scale(self.unit) * right + other.num.scale(other.unit) * left
        return ModFrac.from_polys(num, self.den * right)

    def __sub__(self, other):
        return self + (-other)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return ModFrac.one(self.p)
        if self.is_zero():
            return self
        return ModFrac(self.num ** k, self.den ** k, pow(self.unit, k, self.p))

    def evaluate(self, x):
        """Value in F_p at X = x."""
        d = self.den(x)
        if not d:
            raise ZeroDenominator(f"denominator vanishes at X = {x}")
        return self.unit * self.num(x) * _inverse_mod(d, self.p) % self.p

    def max_degree(self):
        return max(self.num.degree, self.den.degree)

    def __eq__(self, other):
        return (isinstance(other, ModFrac) and self.unit == other.unit
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash((self.unit, self.num, self.den))

    def __repr__(self):
        unit = '' if self.unit == 1 else f'{self.unit} * '
        return f"ModFrac({unit}({self.num}) / ({self.den}), p={self.p})"


def frac_normalize(num, den):
    """
    Normalized fraction num/den: common factors cancelled, denominator and
    numerator made monic, scalar unit discarded.
    """
    return ModFrac.from_polys(num, den).normalized()


def frac_arith(a, b, op):
    """
    Exact arithmetic in F_p(X).

    Args:
        a: left operand
        b: right operand, or the integer exponent when ``op`` is ``'pow'``
        op: one of ``'mul'``, ``'div'``, ``'add'``, ``'sub'``, ``'pow'``

    Returns:
        ModFrac: the result, reduced with its scalar unit kept exactly; pass it
        through ``ModFrac.normalized`` (or build it with ``frac_normalize``) for
        the unit-free form R-fractions are compared in
    """
    if op == 'mul':
        return a * b
    if op == 'div':
        return a / b
    if op == 'add':
        return a + b
    if op == 'sub':
        return a - b
    if op == 'pow':
        return a ** int(b)
    raise ValueError(f"unknown fraction operation {op!r}")
