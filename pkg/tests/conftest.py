import json
from pathlib import Path

import pytest

import generator
import relations
from ffpoly.polys import ModFrac, ModPoly
from funclib.expressions import ONE
from funclib.grammar import parse_expression
from relations.relation import relation_from_terms
from relations.templates import load_catalog

FIXTURES = Path(relations.__file__).resolve().parent / 'fixtures'
GENERATOR_FIXTURES = Path(generator.__file__).resolve().parent / 'fixtures'


@pytest.fixture
def prime():
    """The default modulus used throughout the suite."""
    return 997


@pytest.fixture
def make_poly(prime):
    """Factory for polynomials from coefficients, lowest degree first."""
    def _make_poly(*coeffs, p=None):
        return ModPoly(coeffs, p or prime)
    return _make_poly


@pytest.fixture
def make_frac(make_poly):
    """Factory for reduced fractions num/den given as coefficient tuples."""
    def _make_frac(num, den=(1,), p=None):
        return ModFrac.from_polys(make_poly(*num, p=p), make_poly(*den, p=p))
    return _make_frac


@pytest.fixture
def expr():
    """Parse a concrete expression from the run-config grammar."""
    return parse_expression


@pytest.fixture
def make_relation():
    """
    Factory for relations from (expression text, shift, exponent) triples;
    the text 'zeta' stands for a ζ value.
    """
    def _make_relation(*terms):
        pairs = []
        for text, shift, exp in terms:
            e = ONE if text == 'zeta' else parse_expression(text)
            pairs.append(((e, shift), exp))
        return relation_from_terms(pairs)
    return _make_relation


@pytest.fixture(scope='session')
def known_catalog():
    return load_catalog(FIXTURES / 'known.json')


@pytest.fixture(scope='session')
def full_catalog(known_catalog):
    """Known templates followed by the conjecture catalog."""
    return known_catalog + load_catalog(FIXTURES / 'conjectures.json')


@pytest.fixture
def write_config(tmp_path):
    """Factory writing a run configuration to a temporary JSON file."""
    def _write_config(factors, min_s=0, max_s=0, max_score=1, name='run.json'):
        payload = {
            'factors': [
                {'expr': text, 'min': low, 'max': high} for text, low, high in factors
            ],
            'min_s': min_s,
            'max_s': max_s,
            'max_score': max_score,
        }
        path = tmp_path / name
        path.write_text(json.dumps(payload, indent=4), encoding='utf-8')
        return path
    return _write_config


@pytest.fixture
def write_catalog(tmp_path):
    """Factory writing a catalog (raw text or template list) to a temporary file."""
    def _write_catalog(content, name='catalog.json'):
        path = tmp_path / name
        text = content if isinstance(content, str) else json.dumps({'templates': content}, indent=2)
        path.write_text(text, encoding='utf-8')
        return path
    return _write_catalog


@pytest.fixture(scope='session')
def lambda_tau_config():
    """The λ·τ·σ' run whose report is pinned in test_discover_relations."""
    return GENERATOR_FIXTURES / 'lambda_tau_sigmaprime.json'


@pytest.fixture
def phi_zeta_config():
    return GENERATOR_FIXTURES / 'phi_zeta.json'
