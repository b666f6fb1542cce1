import pytest

from funclib.expressions import ONE, leaf
from funclib.grammar import parse_expression, template_symbol
from generator.engine import GeneratedEntry
from relations.exceptions import CatalogError, RelationError
from relations.relation import Relation, relation_from_kernel, relation_from_terms
from relations.render import relation_to_dict, render, render_line
from relations.templates import (
    admissible_points, classify, instantiate, is_convergent, load_catalog, match_template, parse_condition,
)
from sieve.kernel import KernelVector

PHI = leaf('phi')


def _template(catalog, tid):
    return next(t for t in catalog if t.id == tid)


class TestRelation:
    """Test normalization of relations."""

    def test_sign_is_fixed_by_first_term(self):
        """(-1, 1, -1) on (L(φ, 3), ζ(2), ζ(3)) becomes (1, -1, 1)."""
        r = relation_from_terms([((PHI, 3), -1), ((ONE, 2), 1), ((ONE, 3), -1)])
        assert r.terms == (((PHI, 3), 1), ((ONE, 2), -1), ((ONE, 3), 1))

    def test_cancelling_terms(self):
        """Exponents 2 and -2 on the same ζ(4) leave nothing."""
        assert relation_from_terms([((ONE, 4), 2), ((ONE, 4), -2)]) is None

    def test_content_is_divided_out(self):
        r = relation_from_terms([((PHI, 3), 2), ((ONE, 2), -2), ((ONE, 3), 2)])
        assert [exp for _, exp in r.terms] == [1, -1, 1]

    def test_trivial(self, make_relation):
        assert make_relation(('zeta', 2, 1), ('zeta', 4, -1)).is_trivial()
        assert not make_relation(('phi', 3, 1), ('zeta', 2, -1), ('zeta', 3, 1)).is_trivial()

    def test_same_terms_up_to_sign(self):
        a = Relation((((PHI, 3), 1), ((ONE, 2), -1)))
        b = Relation((((PHI, 3), -1), ((ONE, 2), 1)))
        assert a.same_terms(b)

    def test_from_kernel(self):
        labels = [(PHI, 3), GeneratedEntry(ONE, 2, None, 0), (ONE, 3)]
        r = relation_from_kernel(KernelVector({0: 1, 1: -1, 2: 1}), labels)
        assert r.terms == (((PHI, 3), 1), ((ONE, 2), -1), ((ONE, 3), 1))

    def test_from_kernel_unknown_row(self):
        with pytest.raises(RelationError):
            relation_from_kernel({5: 1}, [(PHI, 3)])


class TestRender:
    """Test the shell and LaTeX report formats."""

    def test_shell(self, make_relation):
        r = make_relation(('phi', 3, 1), ('zeta', 2, -1), ('zeta', 3, 1))
        assert render(r) == 'L(φ, 3) = ζ(2) / ζ(3)'

    def test_latex(self, make_relation):
        r = make_relation(('phi', 3, 1), ('zeta', 2, -1), ('zeta', 3, 1))
        assert render(r, 'latex') == r'L(\varphi, 3) = \frac{\zeta(2)}{\zeta(3)}'

    def test_grouping_and_powers(self, make_relation):
        r = make_relation(('lambda*tau', 4, 1), ('zeta', 8, -2), ('zeta', 4, 2))
        assert render(r) == 'L(λ τ, 4) = ζ(8)^2 / ζ(4)^2'
        r = make_relation(
            ('lambda*sigmaprime:1', 3, 1), ('zeta', 3, 1), ('zeta', 6, -1), ('zeta', 2, -1),
        )
        assert render(r) == "L(λ σ', 3) = (ζ(2) ζ(6)) / ζ(3)"

    def test_no_denominator(self, make_relation):
        assert render(make_relation(('sigma:1', 3, 1), ('zeta', 3, -1), ('zeta', 2, -1))) == 'L(σ, 3) = ζ(2) ζ(3)'

    def test_empty(self):
        with pytest.raises(RelationError):
            render(Relation(()))

    def test_unknown_format(self, make_relation):
        with pytest.raises(RelationError):
            render(make_relation(('phi', 3, 1), ('zeta', 2, -1), ('zeta', 3, 1)), 'html')

    def test_tags(self, make_relation, known_catalog):
        r = make_relation(('phi', 3, 1), ('zeta', 2, -1), ('zeta', 3, 1))
        assert render_line(r) == '[!!!!] L(φ, 3) = ζ(2) / ζ(3)'
        tagged = classify(r, known_catalog)
        assert render_line(tagged) == '[K-05] L(φ, 3) = ζ(2) / ζ(3)'
        assert render_line(tagged, 'latex').startswith('K-05 & $L(')

    def test_as_dict(self, make_relation, known_catalog):
        r = classify(make_relation(('phi', 3, 1), ('zeta', 2, -1), ('zeta', 3, 1)), known_catalog)
        payload = relation_to_dict(r)
        assert payload['id'] == 'K-05'
        assert payload['category'] == 'known'
        assert payload['params'] == {'k': 1, 's': 3}
        assert payload['terms'][0] == {'expr': 'phi', 'display': 'φ', 'shift': 3, 'exp': 1}


class TestCatalogLoading:
    """Test reading and validating relation catalogs."""

    def test_shipped_catalogs(self, known_catalog, full_catalog):
        assert [t.id for t in known_catalog[:3]] == ['D-25', 'D-42', 'D-53']
        assert all(t.category == 'known' for t in known_catalog)
        conjectures = full_catalog[len(known_catalog):]
        assert conjectures and all(t.category == 'new' for t in conjectures)
        assert len({t.id for t in full_catalog}) == len(full_catalog)

    def test_template_parts(self, known_catalog):
        d25 = _template(known_catalog, 'D-25')
        assert {str(s) for s in d25.symbols} == {'k', 's'}
        assert d25.terms[0].expr == parse_expression('lambda*sigmaprime:k', symbolic=True)
        assert [t.is_zeta for t in d25.terms] == [False, True, True, True]

    def test_function_variables(self, full_catalog):
        c05 = _template(full_catalog, 'C-05')
        assert c05.function_vars == {'F'}
        assert c05.witness == {'F': leaf('theta')}

    def test_duplicate_ids(self, write_catalog):
        record = {'id': 'X-1', 'terms': [{'expr': 'mu', 'shift': 's'}, {'zeta': 's'}]}
        with pytest.raises(CatalogError, match='duplicate'):
            load_catalog(write_catalog([record, record]))

    def test_malformed_json(self, write_catalog):
        with pytest.raises(CatalogError, match='line 2'):
            load_catalog(write_catalog('[\n  {"id": }\n]'))

    def test_not_a_list(self, write_catalog):
        with pytest.raises(CatalogError):
            load_catalog(write_catalog('{"templates": {"id": "X-1"}}'))

    def test_stray_symbol(self, write_catalog):
        record = {'id': 'X-1', 'terms': [{'expr': 'mu', 'shift': 's', 'exp': 'm'}, {'zeta': 's'}]}
        with pytest.raises(CatalogError, match='X-1'):
            load_catalog(write_catalog([record]))

    def test_unknown_function(self, write_catalog):
        record = {'id': 'X-1', 'terms': [{'expr': 'bogus', 'shift': 's'}, {'zeta': 's'}]}
        with pytest.raises(CatalogError):
            load_catalog(write_catalog([record]))

    def test_missing_fields(self, write_catalog):
        with pytest.raises(CatalogError):
            load_catalog(write_catalog([{'terms': [{'zeta': 2}]}]))
        with pytest.raises(CatalogError):
            load_catalog(write_catalog([{'id': 'X-1', 'terms': []}]))
        with pytest.raises(CatalogError):
            load_catalog(write_catalog([{'id': 'X-1', 'terms': [{'expr': 'mu'}]}]))

    def test_missing_file(self, tmp_path):
        with pytest.raises(CatalogError):
            load_catalog(tmp_path / 'nowhere.json')

    def test_conditions(self):
        k = template_symbol('k')
        assert parse_condition('k >= 2').holds({k: 2})
        assert not parse_condition('k >= 2').holds({k: 1})
        assert parse_condition('k odd').holds({k: 3})
        assert parse_condition('2*k even').holds({k: 3})
        assert not parse_condition('k >= 2').holds({})
        with pytest.raises(CatalogError):
            parse_condition('k + 1')
        with pytest.raises(CatalogError):
            parse_condition('k >=')


class TestClassifier:
    """Test matching relations against catalog templates."""

    @pytest.mark.parametrize('expr,k,s,zetas', [
        ('lambda*sigmaprime:1', 1, 4, [(4, 1), (8, -1), (3, -1)]),
        ('lambda*sigmaprime:2', 2, 5, [(5, 1), (10, -1), (3, -1)]),
    ])
    def test_d25(self, make_relation, known_catalog, expr, k, s, zetas):
        r = make_relation((expr, s, 1), *(('zeta', t, e) for t, e in zetas))
        tagged = classify(r, known_catalog)
        assert tagged.classification == 'D-25'
        assert tagged.category == 'known'
        assert tagged.params == {'k': k, 's': s}

    def test_d42_with_cancelled_zeta(self, make_relation, known_catalog):
        """At k = 1, s = 4 the ζ(s) and ζ(2s - 4k) terms cancel."""
        r = make_relation(
            ('lambda*sigmaprime:1^2', 4, 1),
            ('zeta', 3, -2), ('zeta', 8, -1), ('zeta', 2, 1), ('zeta', 6, 1),
        )
        assert classify(r, known_catalog).classification == 'D-42'

    def test_lambda_tau_needs_conjectures(self, make_relation, known_catalog, full_catalog):
        r = make_relation(('lambda*tau', 4, 1), ('zeta', 8, -2), ('zeta', 4, 2))
        assert classify(r, known_catalog).classification is None
        tagged = classify(r, full_catalog)
        assert tagged.classification == 'C-22'
        assert tagged.category == 'new'
        assert tagged.params == {'k': 2, 'n': 4}

    def test_alternate_leaf_form(self, make_relation, known_catalog):
        """τ is matched as τ_k with k = 2."""
        r = make_relation(('tau', 3, 1), ('zeta', 3, -2))
        tagged = classify(r, known_catalog)
        assert tagged.classification == 'K-03'
        assert tagged.params == {'k': 2, 's': 3}

    def test_two_parameter_product(self, make_relation, known_catalog):
        """σ_2 σ_1 matches K-12 only with a < b."""
        r = make_relation(
            ('sigma:1*sigma:2', 5, 1),
            ('zeta', 5, -1), ('zeta', 4, -1), ('zeta', 3, -1), ('zeta', 2, -1), ('zeta', 7, 1),
        )
        tagged = classify(r, known_catalog)
        assert tagged.classification == 'K-12'
        assert tagged.params == {'a': 1, 'b': 2, 's': 5}

    def test_wrong_exponent_is_unknown(self, make_relation, known_catalog):
        r = make_relation(('phi', 3, 1), ('zeta', 2, -2), ('zeta', 3, 1))
        assert classify(r, known_catalog).classification is None

    def test_match_template_returns_bindings(self, make_relation, known_catalog):
        r = make_relation(('jordan:2', 5, 1), ('zeta', 3, -1), ('zeta', 5, 1))
        assert match_template(_template(known_catalog, 'K-05'), r) == {'k': 2, 's': 5}
        assert match_template(_template(known_catalog, 'K-04'), r) is None

    @pytest.mark.parametrize('tid', ['D-25', 'D-42', 'D-53', 'K-01', 'K-04', 'K-05', 'K-13', 'C-14', 'C-22'])
    def test_instances_classify_back(self, full_catalog, prime, tid):
        template = _template(full_catalog, tid)
        points = admissible_points(template, prime, count=2)
        assert points
        for r in points:
            assert match_template(template, r) is not None


class TestInstantiate:
    """Test concrete instances of templates."""

    def test_instantiate(self, known_catalog, make_relation):
        k, s = template_symbol('k'), template_symbol('s')
        r = instantiate(_template(known_catalog, 'K-05'), {k: 1, s: 3})
        assert r.same_terms(make_relation(('phi', 3, 1), ('zeta', 2, -1), ('zeta', 3, 1)))
        assert r.classification == 'K-05'
        assert r.params == {'k': 1, 's': 3}

    def test_unbound(self, known_catalog):
        with pytest.raises(RelationError):
            instantiate(_template(known_catalog, 'K-05'), {template_symbol('k'): 1})

    def test_witness_binds_function_variable(self, full_catalog, prime):
        points = admissible_points(_template(full_catalog, 'C-05'), prime, count=1)
        assert points
        assert all(r.classification == 'C-05' for r in points)

    def test_admissible_points_skip_divergent(self, known_catalog, prime):
        points = admissible_points(_template(known_catalog, 'K-01'), prime)
        assert [r.params['s'] for r in points] == [2, 3, 4]
        assert all(is_convergent(r, prime) for r in points)

    def test_is_convergent(self, make_relation, prime):
        assert not is_convergent(make_relation(('mu', 1, 1), ('zeta', 1, 1)), prime)
        assert is_convergent(make_relation(('mu', 2, 1), ('zeta', 2, 1)), prime)
