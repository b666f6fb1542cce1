"""
Shell (Unicode) and LaTeX rendering of relations.

A relation prod L^c = 1 is printed with the positive function terms on the
left, negative function terms and zeta values with negative exponent in the
numerator on the right, and zeta values with positive exponent in the
denominator.
"""
from funclib.expressions import ONE

from .exceptions import RelationError

UNKNOWN_TAG = '!!!!'


def _factor(label, exp, fmt):
    expr, shift = label
    if fmt == 'latex':
        base = rf'\zeta({shift})' if expr == ONE else f'L({expr.display("latex")}, {shift})'
        return base if exp == 1 else f'{base}^{{{exp}}}'
    base = f'ζ({shift})' if expr == ONE else f'L({expr.display("shell")}, {shift})'
    return base if exp == 1 else f'{base}^{exp}'


def sides(r):
    """
    Split a relation into (lhs, numerator, denominator) lists of (label, exp)
    with positive exponents.
    """
    functions = r.function_terms()
    zetas = sorted(r.zeta_terms(), key=lambda term: term[0][1])
    if functions:
        lhs = [(label, c) for label, c in functions if c > 0]
        numerator = [(label, -c) for label, c in functions if c < 0]
        numerator += [(label, -c) for label, c in zetas if c < 0]
        denominator = [(label, c) for label, c in zetas if c > 0]
    else:
        lhs = [(label, c) for label, c in zetas if c > 0]
        numerator = [(label, -c) for label, c in zetas if c < 0]
        denominator = []
    return lhs, numerator, denominator


def _group(factors, fmt, wrap):
    if not factors:
        return '1'
    text = (r' \, ' if fmt == 'latex' else ' ').join(_factor(label, exp, fmt) for label, exp in factors)
    return f'({text})' if wrap and len(factors) > 1 else text


def render(r, fmt='shell'):
    """
    Render ``r`` as ``lhs = rhs``.

    Raises:
        RelationError: the relation has no terms or the format is unknown
    """
    if not r.terms:
        raise RelationError("nothing to render: the relation is empty")
    if fmt not in ('shell', 'latex'):
        raise RelationError(f"unknown render format {fmt!r}")
    lhs, numerator, denominator = sides(r)
    if fmt == 'latex':
        left = _group(lhs, fmt, wrap=False)
        if denominator:
            return rf'{left} = \frac{{{_group(numerator, fmt, False)}}}{{{_group(denominator, fmt, False)}}}'
        return f'{left} = {_group(numerator, fmt, False)}'
    left = _group(lhs, fmt, wrap=False)
    right = _group(numerator, fmt, wrap=bool(denominator))
    if denominator:
        right = f'{right} / {_group(denominator, fmt, wrap=True)}'
    return f'{left} = {right}'


def render_line(r, fmt='shell'):
    """Report line: ``[ID] relation`` (shell) or a LaTeX table row."""
    tag = r.classification or UNKNOWN_TAG
    if fmt == 'latex':
        return rf'{tag} & ${render(r, fmt)}$ \\'
    return f'[{tag}] {render(r, fmt)}'


def relation_to_dict(r):
    return {
        'id': r.classification,
        'category': r.category,
        'params': {str(k): v if isinstance(v, int) else str(v) for k, v in sorted(r.params.items(), key=lambda kv: str(kv[0]))},
        'terms': [
            {'expr': expr.to_grammar(), 'display': expr.display('shell'), 'shift': shift, 'exp': exp}
            for (expr, shift), exp in r.terms
        ],
        'text': render(r, 'shell'),
    }
