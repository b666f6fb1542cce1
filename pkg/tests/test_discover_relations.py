import json
import time
from io import StringIO

import pytest
from django.core.management import call_command
from django.core.management.base import CommandError

from funclib.expressions import expr_rep
from pseudolinear.reps import rfraction_family

pytestmark = pytest.mark.e2e

KNOWN_LINES = [
    "[D-25] L(λ σ', 3) = (ζ(2) ζ(6)) / ζ(3)",
    "[D-25] L(λ σ', 4) = (ζ(3) ζ(8)) / ζ(4)",
    "[D-25] L(λ σ', 5) = (ζ(4) ζ(10)) / ζ(5)",
    "[D-42] L(λ σ'^2, 4) = (ζ(3)^2 ζ(8)) / (ζ(2) ζ(6))",
    "[D-42] L(λ σ'^2, 5) = (ζ(4)^2 ζ(6) ζ(10)) / (ζ(3) ζ(5) ζ(8))",
    "[D-42] L(λ σ'^2, 6) = (ζ(5)^2 ζ(8) ζ(12)) / (ζ(4) ζ(6) ζ(10))",
    "[D-53] L(λ, 2) = ζ(4) / ζ(2)",
    "[D-53] L(λ, 3) = ζ(6) / ζ(3)",
    "[D-53] L(λ, 4) = ζ(8) / ζ(4)",
]

LAMBDA_TAU = [
    "L(λ τ, 4) = ζ(8)^2 / ζ(4)^2",
    "L(λ τ, 5) = ζ(10)^2 / ζ(5)^2",
    "L(λ τ, 6) = ζ(12)^2 / ζ(6)^2",
]

LAMBDA_TAU_SIGMAPRIME = [
    "L(λ τ σ', 5) = (ζ(4)^2 ζ(9) ζ(10)^2) / (ζ(5)^2 ζ(18))",
    "L(λ τ σ', 6) = (ζ(5)^2 ζ(11) ζ(12)^2) / (ζ(6)^2 ζ(22))",
    "L(λ τ σ', 7) = (ζ(6)^2 ζ(13) ζ(14)^2) / (ζ(7)^2 ζ(26))",
]

GOLDEN = KNOWN_LINES + [f'[!!!!] {line}' for line in LAMBDA_TAU + LAMBDA_TAU_SIGMAPRIME]


def run(config, **options):
    """Run discover_relations and return (stdout lines, stderr text)."""
    out, err = StringIO(), StringIO()
    options.setdefault('threads', 1)
    call_command('discover_relations', config=str(config), stdout=out, stderr=err, **options)
    return out.getvalue().splitlines(), err.getvalue()


@pytest.fixture(scope='module')
def golden_run(lambda_tau_config):
    """One default run of the λ·τ·σ' config shared by the report checks."""
    return run(lambda_tau_config)


class TestDiscoverRelations:
    """Test the discovery command end to end."""

    def test_lambda_tau_sigmaprime_report(self, golden_run):
        lines, _ = golden_run
        assert lines == GOLDEN

    @pytest.mark.slow
    def test_reference_run_is_fast(self, lambda_tau_config):
        expr_rep.cache_clear()
        rfraction_family.cache_clear()
        started = time.perf_counter()
        lines, _ = run(lambda_tau_config, no_summary=True)
        assert time.perf_counter() - started < 10
        assert lines == GOLDEN

    def test_with_conjectures(self, lambda_tau_config):
        lines, _ = run(lambda_tau_config, with_conjectures=True)
        assert lines == (
            KNOWN_LINES
            + [f'[C-22] {line}' for line in LAMBDA_TAU]
            + [f'[C-25] {line}' for line in LAMBDA_TAU_SIGMAPRIME]
        )

    @pytest.mark.slow
    def test_threaded_run_matches(self, lambda_tau_config):
        lines, _ = run(lambda_tau_config, threads=4)
        assert lines == GOLDEN

    @pytest.mark.slow
    def test_cross_check_prime(self, lambda_tau_config):
        lines, err = run(lambda_tau_config, cross_check_prime=1009)
        assert lines == GOLDEN
        assert 'did not survive' not in err

    @pytest.mark.slow
    def test_other_prime(self, lambda_tau_config):
        lines, _ = run(lambda_tau_config, prime=1009)
        assert lines == GOLDEN

    def test_show_trivial(self, lambda_tau_config):
        """ζ anchors are independent, so no trivial relation appears."""
        lines, err = run(lambda_tau_config, show_trivial=True)
        assert lines == GOLDEN
        assert 'trivial suppressed' in err

    def test_latex(self, lambda_tau_config):
        lines, _ = run(lambda_tau_config, fmt='latex')
        assert len(lines) == len(GOLDEN)
        assert lines[0].startswith('D-25 & $L(')
        assert lines[-1].startswith('!!!! & $')
        assert all(line.endswith('\\\\') for line in lines)
        assert r'\frac{' in lines[0]

    def test_json(self, lambda_tau_config):
        lines, err = run(lambda_tau_config, fmt='json')
        payload = json.loads('\n'.join(lines))
        assert [item['text'] for item in payload] == [line.split('] ', 1)[1] for line in GOLDEN]
        assert payload[0]['id'] == 'D-25'
        assert payload[0]['category'] == 'known'
        assert payload[-1]['id'] is None
        assert payload[-1]['terms'][0] == {
            'expr': 'lambda*tau*sigmaprime:1', 'display': "λ τ σ'", 'shift': 7, 'exp': 1,
        }
        assert all(item['verified'] is None for item in payload)
        assert err == ''

    def test_summary_goes_to_stderr(self, golden_run):
        _, err = golden_run
        assert 'R-fractions' in err
        assert 'basis size' in err
        assert 'completed in' in err

    def test_dump_debug_without_summary(self, tmp_path, lambda_tau_config):
        path = tmp_path / 'debug.json'
        _, err = run(lambda_tau_config, no_summary=True, dump_debug=str(path))
        assert err == ''
        payload = json.loads(path.read_text(encoding='utf-8'))
        assert payload['prime'] == 997
        assert payload['rows']
        assert all(row['label'].startswith('L(') for row in payload['rows'])


class TestVerifiedRuns:
    """Test --verify on the φ family."""

    def test_verified(self, phi_zeta_config):
        lines, err = run(phi_zeta_config, verify=True, verify_n=10 ** 5, verify_tol=1e-4)
        assert len(lines) == 2
        assert 'L(φ, 3) = ζ(2) / ζ(3)  verified (res=' in lines[0]
        assert 'L(φ, 4) = ζ(3) / ζ(4)  verified (res=' in lines[1]
        assert 'All 2 relations verified' in err

    def test_euler_check(self, phi_zeta_config):
        lines, _ = run(phi_zeta_config, verify=True, verify_n=10 ** 5, euler_check=True)
        assert all('verified' in line for line in lines)

    def test_failure_exits_with_code_two(self, phi_zeta_config):
        with pytest.raises(CommandError) as excinfo:
            run(phi_zeta_config, verify=True, verify_n=10, verify_tol=1e-12)
        assert excinfo.value.returncode == 2
        assert 'failed verification' in str(excinfo.value)


class TestCommandErrors:
    """Test that bad input ends the command with a readable error."""

    def test_malformed_config(self, tmp_path):
        path = tmp_path / 'broken.json'
        path.write_text('{\n  "factors": [\n', encoding='utf-8')
        with pytest.raises(CommandError, match='line'):
            run(path)

    def test_missing_config(self, tmp_path):
        with pytest.raises(CommandError):
            run(tmp_path / 'missing.json')

    @pytest.mark.parametrize('prime', [4, 3, 1000])
    def test_bad_prime(self, lambda_tau_config, prime):
        with pytest.raises(CommandError, match='not a usable prime'):
            run(lambda_tau_config, prime=prime)

    def test_bad_cross_check_prime(self, lambda_tau_config):
        with pytest.raises(CommandError, match='not a usable prime'):
            run(lambda_tau_config, cross_check_prime=1000)

    def test_bad_catalog(self, lambda_tau_config, write_catalog):
        path = write_catalog('{"templates": [\n  {"id": "X-01"}\n]}')
        with pytest.raises(CommandError):
            run(lambda_tau_config, catalogs=[str(path)])

    def test_zero_threads(self, lambda_tau_config):
        with pytest.raises(CommandError, match='threads'):
            run(lambda_tau_config, threads=0)
