import logging

import pandas as pd
from django.core.management.base import BaseCommand, CommandError

from lseries_discovery.conf import lseries_setting
from lseries_discovery.pipeline import load_catalogs
from relations.exceptions import RelationError
from relations.render import render_line
from relations.templates import admissible_points, classify
from verifier.checks import verify_all

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = 'Instantiate catalog templates at their smallest admissible points and verify them numerically'

    def add_arguments(self, parser):
        parser.add_argument(
            '--catalog',
            action='append',
            dest='catalogs',
            help='Catalog to sweep (repeatable); defaults to the known and conjecture catalogs',
        )
        parser.add_argument('--template', action='append', dest='templates', help='Only sweep these template ids')
        parser.add_argument('--points', type=int, default=3, help='Parameter points per template')
        parser.add_argument('--prime', type=int, help='Prime used for convergence bounds')
        parser.add_argument('--threads', type=int, help='Worker processes')
        parser.add_argument('--verify-n', type=int, help='Dirichlet series cutoff')
        parser.add_argument('--verify-tol', type=float, help='Residual threshold')

    def handle(self, *args, **options):
        paths = options.get('catalogs') or (
            list(lseries_setting('CATALOGS')) + [lseries_setting('CONJECTURE_CATALOG')]
        )
        p = options.get('prime') or lseries_setting('PRIME')
        N = options.get('verify_n') or lseries_setting('VERIFY_N')
        tol = options.get('verify_tol') or lseries_setting('VERIFY_TOL')
        threads = options.get('threads') or lseries_setting('THREADS')

        try:
            catalog = load_catalogs(paths)
        except RelationError as exc:
            raise CommandError(str(exc)) from exc
        wanted = set(options.get('templates') or ())
        templates = [t for t in catalog if not wanted or t.id in wanted]
        if wanted - {t.id for t in templates}:
            raise CommandError(f"unknown template ids: {', '.join(sorted(wanted - {t.id for t in templates}))}")

        instances = []
        for template in templates:
            points = admissible_points(template, p, options['points'])
            if not points:
                self.stderr.write(self.style.WARNING(f'{template.id}: no admissible parameter point'))
            for relation in points:
                recognized = classify(relation, catalog)
                if recognized.classification != template.id:
                    logger.warning(
                        "%s instance %s is classified as %s; flagged for catalog review",
                        template.id, relation.params, recognized.classification,
                    )
                instances.append(relation)

        reports = verify_all(instances, N, tol, p, jobs=threads)
        rows = []
        for relation, report in zip(instances, reports):
            self.stdout.write(f"{render_line(relation)}  {report.line()}")
            rows.append({'template': relation.classification, 'status': report.status})

        if rows:
            table = pd.DataFrame(rows).value_counts().unstack(fill_value=0)
            self.stderr.write(table.to_string())
        failed = [report for report in reports if not report.passed]
        if failed:
            raise CommandError(f'{len(failed)} of {len(reports)} instances failed verification', returncode=2)
        self.stderr.write(self.style.SUCCESS(f'All {len(reports)} instances verified'))
