"""Relations prod L(f_i, s_i)^{c_i} = 1 between labeled L-functions."""
from collections import Counter
from dataclasses import dataclass, field
from functools import reduce
from math import gcd

from funclib.expressions import ONE

from .exceptions import RelationError

UNKNOWN = None


def term_order(term):
    """Canonical term order: highest score first, then shift, then name."""
    (expr, shift), _ = term
    return (-expr.score, shift, expr.display('shell'))


@dataclass(frozen=True)
class Relation:
    terms: tuple
    classification: str = UNKNOWN
    category: str = 'unknown'
    params: dict = field(default_factory=dict, compare=False, hash=False)

    def is_trivial(self):
        """Every term is a zeta value."""
        return all(expr == ONE for (expr, _), _ in self.terms)

    def function_terms(self):
        return [term for term in self.terms if term[0][0] != ONE]

    def zeta_terms(self):
        return [term for term in self.terms if term[0][0] == ONE]

    def counter(self):
        return Counter({label: exp for label, exp in self.terms})

    def same_terms(self, other):
        """Equal term multisets up to a global sign."""
        mine = self.counter()
        theirs = other.counter()
        return mine == theirs or mine == Counter({k: -v for k, v in theirs.items()})

    def key(self):
        (expr, shift), _ = self.terms[0]
        return (expr.score, expr.display('shell'), shift)

    def classified(self, template_id, category, params):
        return Relation(self.terms, template_id, category, dict(params))


def relation_from_terms(pairs):
    """
    Normalize (label, exponent) pairs into a Relation.

    Labels are merged, zero exponents dropped, the exponents divided by their
    gcd and the sign fixed so that the first term in canonical order is
    positive. Returns None when everything cancels.
    """
    merged = Counter()
    for label, exp in pairs:
        merged[label] += exp
    terms = sorted(((label, exp) for label, exp in merged.items() if exp), key=term_order)
    if not terms:
        return None
    g = reduce(gcd, (abs(exp) for _, exp in terms))
    if terms[0][1] < 0:
        g = -g
    return Relation(tuple((label, exp // g) for label, exp in terms))


def relation_from_kernel(vector, labels):
    """
    Map a kernel vector onto labeled L-functions.

    Args:
        vector: KernelVector (or a plain {row: coefficient} dict)
        labels: per-row GeneratedEntry or (expr, shift) label

    Returns:
        Relation or None when the labels cancel completely
    """
    coeffs = getattr(vector, 'coeffs', vector)
    pairs = []
    for row, coeff in coeffs.items():
        if row < 0 or row >= len(labels):
            raise RelationError(f"kernel row {row} has no label")
        label = labels[row]
        pairs.append((getattr(label, 'label', label), coeff))
    return relation_from_terms(pairs)
