"""
Relation templates and the classifier.

A template is a parameterized relation prod L(f_i, s_i)^{c_i} = 1 read from a
JSON catalog. Leaf parameters, powers, shifts and exponents are integer
expressions in template symbols; uppercase names stand for whole functions.

Classification matches a relation's function terms against the template's
structurally (trying both global signs), collects the resulting integer
equations, solves them one unknown at a time, binds what is left through the
zeta shifts, and finally re-instantiates the template and compares term
multisets exactly.
"""
import itertools
import json
import logging
import re
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import sympy
from sympy.parsing.sympy_parser import parse_expr

from funclib.exceptions import FuncExprError
from funclib.expressions import ONE, FuncVar, Leaf, Product, Convolution, PowerSub, product
from funclib.grammar import parse_expression, parse_param, template_symbol
from pseudolinear.convergence import min_shift
from pseudolinear.exceptions import RepresentationError

from .exceptions import CatalogError, RelationError
from .relation import relation_from_terms

logger = logging.getLogger(__name__)

DEFAULT_RANGE = (1, 8)

# Concrete leaves and the parameterized leaves they coincide with.
_ALTERNATE_FORMS = {
    ('tau', None): (('tau_k', 2), ('sigma', 0)),
    ('phi', None): (('jordan', 1),),
    ('id', None): (('zeta', 1),),
    ('one', None): (('zeta', 0), ('tau_k', 1), ('nu', 1)),
    ('mu', None): (('mu_k', 1),),
    ('epsilon', None): (('xi', 1),),
    ('theta', None): (('psi', 0),),
    ('nu', 2): (('sigmaprime', 0),),
}


@dataclass(frozen=True)
class TemplateTerm:
    expr: object
    shift: object
    exp: object

    @property
    def is_zeta(self):
        return self.expr == ONE


@dataclass(frozen=True)
class Condition:
    text: str
    expr: object
    parity: str = None

    def holds(self, values):
        value = self.expr.subs(values)
        if value.free_symbols:
            return False
        if self.parity:
            return (int(value) % 2 == 0) == (self.parity == 'even')
        return bool(value)


@dataclass(frozen=True)
class RelationTemplate:
    id: str
    terms: tuple
    conditions: tuple = ()
    category: str = 'known'
    ranges: dict = field(default_factory=dict, compare=False, hash=False)
    witness: dict = field(default_factory=dict, compare=False, hash=False)
    description: str = ''

    @property
    def symbols(self):
        out = set()
        for term in self.terms:
            out |= term.expr.free_symbols()
            for slot in (term.shift, term.exp):
                if isinstance(slot, sympy.Basic):
                    out |= slot.free_symbols
        return out

    @property
    def function_vars(self):
        names = set()

        def walk(e):
            if isinstance(e, FuncVar):
                names.add(e.name)
            for child in e.children():
                walk(child)

        for term in self.terms:
            walk(term.expr)
        return names


def _slot(value, source):
    if isinstance(value, bool):
        raise CatalogError(f"invalid slot value {value!r}", source)
    if isinstance(value, int):
        return value
    try:
        return parse_param(str(value), symbolic=True)
    except FuncExprError as exc:
        raise CatalogError(str(exc), source) from exc


def parse_condition(text, source=None):
    text = text.strip()
    for parity in ('odd', 'even'):
        if text.endswith(' ' + parity):
            return Condition(text, sympy.sympify(_slot(text[:-len(parity)].strip(), source)), parity)
    names = set(re.findall(r'[A-Za-z_][A-Za-z0-9_]*', text))
    try:
        expr = parse_expr(text, local_dict={name: template_symbol(name) for name in names})
    except Exception as exc:
        raise CatalogError(f"cannot parse condition {text!r}", source) from exc
    if not isinstance(expr, sympy.logic.boolalg.Boolean):
        raise CatalogError(f"condition {text!r} is not a comparison", source)
    return Condition(text, expr)


def template_from_dict(data, source=None):
    """Build a template from one catalog record."""
    tid = data.get('id')
    if not tid:
        raise CatalogError("template without an id", source)
    where = f"{source or 'catalog'} [{tid}]"
    terms = []
    for item in data.get('terms') or []:
        try:
            if 'zeta' in item:
                expr, shift = ONE, _slot(item['zeta'], where)
            else:
                expr = parse_expression(item['expr'], symbolic=True)
                shift = _slot(item['shift'], where)
        except FuncExprError as exc:
            raise CatalogError(str(exc), where) from exc
        except KeyError as exc:
            raise CatalogError(f"term is missing {exc.args[0]!r}", where) from exc
        terms.append(TemplateTerm(expr, shift, _slot(item.get('exp', 1), where)))
    if not terms:
        raise CatalogError("template has no terms", where)
    template = RelationTemplate(
        id=tid,
        terms=tuple(terms),
        conditions=tuple(parse_condition(c, where) for c in data.get('conditions', ())),
        category=data.get('category', 'known'),
        ranges={template_symbol(k): tuple(v) for k, v in (data.get('ranges') or {}).items()},
        witness={k: parse_expression(v) for k, v in (data.get('witness') or {}).items()},
        description=data.get('description', ''),
    )
    placed = set()
    for term in template.terms:
        placed |= term.expr.free_symbols()
        if isinstance(term.shift, sympy.Basic):
            placed |= term.shift.free_symbols
    stray = template.symbols - placed
    if stray:
        raise CatalogError(f"symbols {sorted(map(str, stray))} appear in no shift or parameter slot", where)
    missing = template.function_vars - set(template.witness)
    if missing:
        logger.debug("%s has function variables without witness: %s", tid, sorted(missing))
    return template


def load_catalog(path):
    """
    Read a JSON catalog: a list of templates, or {"templates": [...]}.

    Raises:
        CatalogError: unreadable file, malformed JSON or template
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding='utf-8'))
    except OSError as exc:
        raise CatalogError(f"cannot read catalog: {exc.strerror}", str(path)) from exc
    except json.JSONDecodeError as exc:
        raise CatalogError(f"line {exc.lineno}: {exc.msg}", str(path)) from exc
    records = data.get('templates') if isinstance(data, dict) else data
    if not isinstance(records, list):
        raise CatalogError("catalog must be a list of templates", str(path))
    templates = [template_from_dict(record, path.name) for record in records]
    ids = [t.id for t in templates]
    duplicates = {i for i in ids if ids.count(i) > 1}
    if duplicates:
        raise CatalogError(f"duplicate template ids {sorted(duplicates)}", str(path))
    return templates


# Structural matching. A state is (equations, function-variable bindings).

def _factors(e):
    return e.factors if isinstance(e, Product) else ((e, 1),)


def _bind_var(name, value, state):
    eqs, fvars = state
    if name in fvars:
        if fvars[name] == value:
            yield state
        return
    yield eqs, {**fvars, name: value}


def _match_leaf(t, r, state):
    eqs, fvars = state
    if not isinstance(r, Leaf):
        return
    if t.name == r.name:
        if t.param is None and r.param is None:
            yield state
        elif t.param is not None and r.param is not None:
            yield eqs + (sympy.sympify(t.param) - r.param,), fvars
        return
    for name, value in _ALTERNATE_FORMS.get((r.name, r.param), ()):
        if name == t.name and t.param is not None:
            yield eqs + (sympy.sympify(t.param) - value,), fvars


def _match(t, r, state):
    if isinstance(t, FuncVar):
        yield from _bind_var(t.name, r, state)
    elif isinstance(t, Product) or isinstance(r, Product):
        yield from _match_factors(_factors(t), _factors(r), state)
    elif isinstance(t, Leaf):
        yield from _match_leaf(t, r, state)
    elif isinstance(t, Convolution) and isinstance(r, Convolution):
        for left, right in ((r.left, r.right), (r.right, r.left)):
            for st in _match(t.left, left, state):
                yield from _match(t.right, right, st)
    elif isinstance(t, PowerSub) and isinstance(r, PowerSub):
        for eqs, fvars in _match(t.child, r.child, state):
            yield eqs + (sympy.sympify(t.ell) - r.ell,), fvars


def _match_factors(tf, rf, state):
    variables = [(f, e) for f, e in tf if isinstance(f, FuncVar)]
    fixed = [(f, e) for f, e in tf if not isinstance(f, FuncVar)]
    if len(variables) > 1:
        return

    def assign(index, used, st):
        if index == len(fixed):
            leftover = [rf[j] for j in range(len(rf)) if j not in used]
            yield from _absorb(variables, leftover, st)
            return
        f, e = fixed[index]
        for j, (g, c) in enumerate(rf):
            if j in used:
                continue
            for eqs, fvars in _match(f, g, st):
                yield from assign(index + 1, used | {j}, (eqs + (sympy.sympify(e) - c,), fvars))
        if isinstance(e, sympy.Basic):
            eqs, fvars = st
            yield from assign(index + 1, used, (eqs + (e,), fvars))

    yield from assign(0, frozenset(), state)


def _absorb(variables, leftover, state):
    if not variables:
        if not leftover:
            yield state
        return
    var, e = variables[0]
    if not isinstance(e, int):
        return
    if any(c % e for _, c in leftover):
        return
    yield from _bind_var(var.name, product(*((g, c // e) for g, c in leftover)), state)


def _solve(equations, values):
    """
    Bind symbols from equations that are linear in a single unknown.

    Returns:
        (values, pending) or None when an equation is violated or a solution
        is not an integer
    """
    values = dict(values)
    pending = [sympy.expand(sympy.sympify(eq)) for eq in equations]
    progress = True
    while progress:
        progress = False
        rest = []
        for eq in pending:
            eq = sympy.expand(eq.subs(values))
            free = eq.free_symbols
            if not free:
                if eq != 0:
                    return None
                continue
            if len(free) == 1:
                sym = next(iter(free))
                poly = sympy.Poly(eq, sym)
                if poly.degree() == 1:
                    a, b = poly.all_coeffs()
                    solution = -b / a
                    if not solution.is_Integer:
                        return None
                    values[sym] = int(solution)
                    progress = True
                    continue
            rest.append(eq)
        pending = rest
    return values, pending


def _assign_from_zeta(template, values, pending, zeta_shifts):
    """Bind remaining symbols by pairing template zeta shifts with the relation's."""
    if template.symbols <= set(values):
        if not pending:
            yield values
        return
    for term in template.terms:
        if not term.is_zeta or not isinstance(term.shift, sympy.Basic):
            continue
        shift = sympy.expand(term.shift.subs(values))
        if not shift.free_symbols:
            continue
        for target in sorted(zeta_shifts):
            solved = _solve(list(pending) + [shift - target], values)
            if solved is not None and len(solved[0]) > len(values):
                yield from _assign_from_zeta(template, solved[0], solved[1], zeta_shifts)


def instantiate(template, bindings):
    """
    Concrete relation of ``template`` at ``bindings`` (symbols -> int,
    function variable names -> FuncExpr).

    Raises:
        RelationError: unbound symbols, invalid leaf parameters or a relation
            whose terms cancel completely
    """
    symbols = {k: v for k, v in bindings.items() if isinstance(k, sympy.Symbol)}
    pairs = []
    for term in template.terms:
        try:
            expr = term.expr.subs(bindings)
        except FuncExprError as exc:
            raise RelationError(f"{template.id}: {exc}") from exc
        shift = term.shift if isinstance(term.shift, int) else sympy.sympify(term.shift).subs(symbols)
        exp = term.exp if isinstance(term.exp, int) else sympy.sympify(term.exp).subs(symbols)
        if not expr.is_concrete() or not sympy.sympify(shift).is_Integer or not sympy.sympify(exp).is_Integer:
            raise RelationError(f"{template.id}: parameters left unbound")
        pairs.append(((expr, int(shift)), int(exp)))
    relation = relation_from_terms(pairs)
    if relation is None:
        raise RelationError(f"{template.id}: all terms cancel at {bindings}")
    params = {str(k): v for k, v in bindings.items()}
    return relation.classified(template.id, template.category, params)


def conditions_hold(template, values):
    return all(condition.holds(values) for condition in template.conditions)


def match_template(template, r):
    """
    Parameter bindings under which ``template`` instantiates to ``r``, or None.
    """
    rel_functions = r.function_terms()
    tpl_functions = [t for t in template.terms if not t.is_zeta]
    if len(rel_functions) != len(tpl_functions):
        return None
    zeta_shifts = {shift for (_, shift), _ in r.zeta_terms()}

    def pair_terms(index, used, state, sign):
        if index == len(tpl_functions):
            yield state
            return
        t = tpl_functions[index]
        for j, ((expr, shift), exp) in enumerate(rel_functions):
            if j in used:
                continue
            eqs, fvars = state
            pattern = t.expr.subs(fvars) if fvars else t.expr
            extra = (sympy.sympify(t.shift) - shift, sympy.sympify(t.exp) - sign * exp)
            for st in _match(pattern, expr, (eqs + extra, fvars)):
                yield from pair_terms(index + 1, used | {j}, st, sign)

    for sign in (1, -1):
        for eqs, fvars in pair_terms(0, frozenset(), ((), {}), sign):
            solved = _solve(eqs, {})
            if solved is None:
                continue
            values, pending = solved
            for final in _assign_from_zeta(template, values, pending, zeta_shifts):
                if template.function_vars - set(fvars):
                    continue
                if not conditions_hold(template, final):
                    continue
                try:
                    instance = instantiate(template, {**final, **fvars})
                except RelationError:
                    continue
                if instance.same_terms(r):
                    return {**{str(k): v for k, v in final.items()}, **fvars}
    return None


def classify(r, catalog):
    """
    Classify a relation against the catalog (first matching template wins).

    Returns:
        Relation: a copy tagged with the template id, category and parameters,
        or ``r`` itself (unclassified) when nothing matches
    """
    for template in catalog:
        params = match_template(template, r)
        if params is not None:
            return r.classified(template.id, template.category, params)
    return r


@lru_cache(maxsize=4096)
def convergence_bound(expr, p):
    """Plain s(f), without the repeated-pole margin."""
    return min_shift(expr.rep(p), margin=False)


def is_convergent(relation, p):
    for (expr, shift), _ in relation.terms:
        if expr == ONE:
            if shift < 2:
                return False
            continue
        try:
            if shift < convergence_bound(expr, p):
                return False
        except RepresentationError:
            return False
    return True


def admissible_points(template, p, count=3):
    """
    The first ``count`` parameter points of the template, ordered by parameter
    sum then lexicographically, whose instances satisfy the side conditions
    and have only convergent terms.

    Returns:
        list[Relation]: instantiated relations (params attached)
    """
    symbols = sorted(template.symbols, key=str)
    axes = [range(lo, hi + 1) for lo, hi in (template.ranges.get(s, DEFAULT_RANGE) for s in symbols)]
    points = sorted(itertools.product(*axes), key=lambda point: (sum(point), point))
    out = []
    for point in points:
        values = dict(zip(symbols, point))
        if not conditions_hold(template, values):
            continue
        try:
            relation = instantiate(template, {**values, **template.witness})
        except (RelationError, FuncExprError):
            continue
        if not is_convergent(relation, p):
            continue
        out.append(relation)
        if len(out) == count:
            break
    return out
