"""
Parser for the expression grammar used by run configs and relation catalogs.

    expr  := term ('*' term)*
    term  := atom ('^' param)?
    atom  := NAME (':' param)? | 'conv(' expr ',' expr ')'
           | 'powersub(' expr ',' param ')' | '(' expr ')'
    param := INT | NAME | '(' integer expression ')'

NAME params and uppercase function variables are only accepted when parsing
templates (``symbolic=True``).
"""
import re

import sympy
from sympy.parsing.sympy_parser import parse_expr

from .exceptions import ExpressionSyntaxError, FuncExprError
from .expressions import FuncVar, convolution, leaf, powersub, product
from .leaves import LEAVES

_TOKEN = re.compile(r'\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+/*^:(),]))')
_PARAM_CHARS = re.compile(r'^[0-9A-Za-z_+\-*/ ()]*$')


def template_symbol(name):
    return sympy.Symbol(name, integer=True)


def parse_param(text, symbolic=False):
    """
    Parse an integer expression such as ``2*k+1``.

    Returns:
        int or sympy.Expr: an int whenever the expression has no free symbols
    """
    if not _PARAM_CHARS.match(text):
        raise ExpressionSyntaxError(f"invalid characters in parameter {text!r}")
    names = set(re.findall(r'[A-Za-z_][A-Za-z0-9_]*', text))
    if names and not symbolic:
        raise ExpressionSyntaxError(f"symbolic parameter {text!r} outside a template")
    try:
        value = parse_expr(text, local_dict={name: template_symbol(name) for name in names})
    except Exception as exc:
        raise ExpressionSyntaxError(f"cannot parse parameter {text!r}") from exc
    value = sympy.expand(value)
    if value.is_Integer:
        return int(value)
    if not value.free_symbols:
        raise ExpressionSyntaxError(f"parameter {text!r} is not an integer")
    return value


class _Parser:
    def __init__(self, text, symbolic):
        self.text = text
        self.symbolic = symbolic
        self.tokens = []
        pos = 0
        while pos < len(text):
            if not text[pos:].strip():
                break
            match = _TOKEN.match(text, pos)
            if not match:
                raise ExpressionSyntaxError("unexpected character", text, pos)
            kind = match.lastgroup
            self.tokens.append((kind, match.group(kind), match.start(kind)))
            pos = match.end()
        self.index = 0

    def peek(self):
        return self.tokens[self.index] if self.index < len(self.tokens) else (None, None, len(self.text))

    def take(self, expected=None):
        kind, value, pos = self.peek()
        if kind is None:
            raise ExpressionSyntaxError("unexpected end of expression", self.text, pos)
        if expected is not None and value != expected:
            raise ExpressionSyntaxError(f"expected {expected!r}, found {value!r}", self.text, pos)
        self.index += 1
        return kind, value, pos

    def parse(self):
        expr = self.expr()
        kind, value, pos = self.peek()
        if kind is not None:
            raise ExpressionSyntaxError(f"unexpected {value!r}", self.text, pos)
        return expr

    def expr(self):
        terms = [self.term()]
        while self.peek()[1] == '*':
            self.take('*')
            terms.append(self.term())
        return product(*terms)

    def term(self):
        atom = self.atom()
        if self.peek()[1] == '^':
            self.take('^')
            exp = self.param()
            return product((atom, exp))
        return atom

    def atom(self):
        kind, value, pos = self.take()
        if value == '(':
            inner = self.expr()
            self.take(')')
            return inner
        if kind != 'name':
            raise ExpressionSyntaxError(f"expected a function name, found {value!r}", self.text, pos)
        if value == 'conv' and self.peek()[1] == '(':
            self.take('(')
            left = self.expr()
            self.take(',')
            right = self.expr()
            self.take(')')
            return convolution(left, right)
        if value == 'powersub' and self.peek()[1] == '(':
            self.take('(')
            child = self.expr()
            self.take(',')
            ell = self.param()
            self.take(')')
            return powersub(child, ell)
        if value not in LEAVES:
            if self.symbolic and value[0].isupper():
                return FuncVar(value)
            raise ExpressionSyntaxError(f"unknown function {value!r}", self.text, pos)
        param = None
        if self.peek()[1] == ':':
            self.take(':')
            param = self.param()
        try:
            return leaf(value, param)
        except FuncExprError as exc:
            raise ExpressionSyntaxError(str(exc), self.text, pos) from exc

    def param(self):
        kind, value, pos = self.take()
        if kind == 'int':
            return int(value)
        if kind == 'name':
            return parse_param(value, self.symbolic)
        if value == '(':
            depth, start = 1, pos + 1
            while depth:
                kind, value, end = self.take()
                depth += {'(': 1, ')': -1}.get(value, 0)
            return parse_param(self.text[start:end], self.symbolic)
        raise ExpressionSyntaxError(f"expected a parameter, found {value!r}", self.text, pos)


def parse_expression(text, symbolic=False):
    """
    Parse ``text`` into a canonical FuncExpr.

    Raises:
        ExpressionSyntaxError: malformed text, unknown leaf, bad parameter
    """
    return _Parser(text, symbolic).parse()
