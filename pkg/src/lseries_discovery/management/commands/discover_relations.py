from django.core.management.base import BaseCommand, CommandError

from generator.config import load_config
from generator.exceptions import GeneratorError
from lseries_discovery.conf import lseries_setting
from lseries_discovery.exceptions import RunError
from lseries_discovery.pipeline import FORMATS, RunConfig, report_lines, run_pipeline, summary_table
from relations.exceptions import RelationError


class Command(BaseCommand):
    help = 'Discover multiplicative relations between L-functions of a configured family'

    def add_arguments(self, parser):
        parser.add_argument('--config', required=True, help='JSON run configuration')
        parser.add_argument('--prime', type=int, help='Prime modulus for F_p(X) arithmetic')
        parser.add_argument('--threads', type=int, help='Worker threads/processes')
        parser.add_argument('--format', dest='fmt', choices=FORMATS, default='shell', help='Report format')
        parser.add_argument(
            '--catalog',
            action='append',
            dest='catalogs',
            help='Relation catalog (repeatable); defaults to the known catalog',
        )
        parser.add_argument(
            '--with-conjectures',
            action='store_true',
            help='Also classify against the shipped conjecture catalog',
        )
        parser.add_argument('--verify', action='store_true', help='Check every relation numerically')
        parser.add_argument('--verify-n', type=int, help='Dirichlet series cutoff for --verify')
        parser.add_argument('--verify-tol', type=float, help='Residual threshold for --verify')
        parser.add_argument(
            '--euler-check',
            action='store_true',
            help='Cross-check every L-value against a truncated Euler product',
        )
        parser.add_argument('--show-trivial', action='store_true', help='Keep relations between ζ values only')
        parser.add_argument('--dump-debug', help='Write the basis and composition matrix to this JSON file')
        parser.add_argument(
            '--cross-check-prime',
            type=int,
            help='Second prime; only relations found under both primes are reported',
        )
        parser.add_argument('--no-summary', action='store_true', help='Omit the summary table')

    def handle(self, *args, **options):
        catalogs = options.get('catalogs') or list(lseries_setting('CATALOGS'))
        if options.get('with_conjectures'):
            catalogs.append(lseries_setting('CONJECTURE_CATALOG'))

        try:
            cfg = RunConfig(
                gen=load_config(options['config']),
                prime=options.get('prime'),
                threads=options.get('threads'),
                fmt=options.get('fmt', 'shell'),
                catalogs=catalogs,
                verify=options.get('verify', False),
                verify_n=options.get('verify_n'),
                verify_tol=options.get('verify_tol'),
                euler_check=options.get('euler_check', False),
                show_trivial=options.get('show_trivial', False),
                dump_debug=options.get('dump_debug'),
                cross_check_prime=options.get('cross_check_prime'),
            )
            result = run_pipeline(cfg)
        except (GeneratorError, RelationError, RunError) as exc:
            raise CommandError(str(exc)) from exc

        for line in report_lines(result):
            self.stdout.write(line)

        if not options.get('no_summary') and cfg.fmt != 'json':
            self.stderr.write(summary_table(result).to_string())
            self.stderr.write(f"completed in {result.timings['total']:.2f} seconds")

        if result.dropped:
            self.stderr.write(self.style.WARNING(
                f'{len(result.dropped)} relations did not survive the cross-check mod {cfg.cross_check_prime}'
            ))
        if result.failed:
            raise CommandError(f'{len(result.failed)} relations failed verification', returncode=2)
        if cfg.verify:
            self.stderr.write(self.style.SUCCESS(f'All {len(result.relations)} relations verified'))
