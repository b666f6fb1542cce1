"""
End-to-end discovery run.

generate R-fractions -> add ζ anchors -> refine the holding basis ->
decompose into the composition matrix -> left kernel -> relations ->
classify -> (verify) -> report.
"""
import json
import logging
import time
from dataclasses import dataclass, field

import pandas as pd
from joblib import Parallel, delayed
from sympy import isprime

from generator.engine import enumerate_entries, zeta_anchors
from relations.relation import relation_from_kernel
from relations.render import relation_to_dict, render_line
from relations.templates import classify, load_catalog
from sieve.basis import basis_sort, build_basis
from sieve.debug import dump_debug
from sieve.kernel import kernel_relations
from sieve.matrix import build_matrix, remap_columns, tally_usage
from verifier.checks import FAIL, verify_all

from .conf import lseries_setting
from .exceptions import RunError

logger = logging.getLogger(__name__)

FORMATS = ('shell', 'latex', 'json')


@dataclass
class RunConfig:
    gen: object
    prime: int = None
    threads: int = None
    fmt: str = 'shell'
    catalogs: list = None
    verify: bool = False
    verify_n: int = None
    verify_tol: float = None
    euler_check: bool = False
    show_trivial: bool = False
    dump_debug: str = None
    cross_check_prime: int = None

    def __post_init__(self):
        if self.prime is None:
            self.prime = lseries_setting('PRIME')
        if self.threads is None:
            self.threads = lseries_setting('THREADS')
        if self.catalogs is None:
            self.catalogs = list(lseries_setting('CATALOGS'))
        if self.verify_n is None:
            self.verify_n = lseries_setting('VERIFY_N')
        if self.verify_tol is None:
            self.verify_tol = lseries_setting('VERIFY_TOL')
        for p in filter(None, (self.prime, self.cross_check_prime)):
            if p < 5 or not isprime(p):
                raise RunError(f"{p} is not a usable prime modulus")
        if self.threads < 1:
            raise RunError("threads must be at least 1")
        if self.fmt not in FORMATS:
            raise RunError(f"unknown format {self.fmt!r}, expected one of {', '.join(FORMATS)}")


@dataclass
class Discovery:
    entries: list
    anchors: list
    basis: object
    matrix: object
    relations: list


@dataclass
class RunResult:
    config: RunConfig
    discovery: Discovery
    relations: list
    trivial: int = 0
    reports: list = field(default_factory=list)
    dropped: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    @property
    def failed(self):
        return [report for report in self.reports if report is not None and report.status == FAIL]


def discover(gen, p, threads=1, debug_path=None):
    """
    Generation through kernel extraction for one prime.

    Returns:
        Discovery: entries, anchors, sorted basis, matrix over it and the raw
        (unclassified) relations, trivial ones included
    """
    entries = enumerate_entries(
        gen, p,
        margin=lseries_setting('REPEATED_POLE_MARGIN'),
        cache_size=lseries_setting('REP_CACHE_SIZE'),
        spot_checks=lseries_setting('SPOT_CHECKS'),
        window_factor=lseries_setting('PROBE_WINDOW_FACTOR'),
    )
    anchors = zeta_anchors(entries, p)
    rows = entries + anchors
    labels = [row.label for row in rows]

    polys = [poly for row in rows for poly in (row.fraction.num, row.fraction.den)]
    basis = build_basis(polys, p, threads)
    matrix = build_matrix([row.fraction for row in rows], basis, threads, labels)
    tally_usage(basis, matrix)
    ordered = basis_sort(basis)
    matrix = remap_columns(matrix, basis, ordered)
    if debug_path:
        dump_debug(debug_path, ordered, matrix, [f"L({expr}, {shift})" for expr, shift in labels])

    first = len(entries)
    order = list(range(first, len(rows))) + sorted(range(first), key=lambda i: entries[i].score)
    vectors = kernel_relations(matrix, order)
    relations = [r for r in (relation_from_kernel(v, labels) for v in vectors) if r is not None]
    logger.info(
        "p=%d: %d R-fractions, %d anchors, basis of %d, %d relations",
        p, len(entries), len(anchors), len(ordered), len(relations),
    )
    return Discovery(entries, anchors, ordered, matrix, relations)


def load_catalogs(paths):
    catalog = []
    for path in paths:
        catalog.extend(load_catalog(path))
    return catalog


def _sort_key(r, positions):
    known = r.classification is not None
    return (not known, positions.get(r.classification, len(positions)), r.key())


def run_pipeline(cfg):
    """
    Execute a full run.

    Raises:
        CatalogError: a catalog cannot be loaded
        GeneratorConsistencyError: incremental and fresh R-fractions disagree
    """
    timings = {}
    started = time.perf_counter()
    catalog = load_catalogs(cfg.catalogs)

    found = discover(cfg.gen, cfg.prime, cfg.threads, cfg.dump_debug)
    timings['discovery'] = time.perf_counter() - started
    relations = found.relations

    dropped = []
    if cfg.cross_check_prime:
        other = {r.terms for r in discover(cfg.gen, cfg.cross_check_prime, cfg.threads).relations}
        dropped = [r for r in relations if r.terms not in other]
        for r in dropped:
            logger.warning("dropping relation not found mod %d: %s", cfg.cross_check_prime, render_line(r))
        relations = [r for r in relations if r.terms in other]

    trivial = sum(1 for r in relations if r.is_trivial())
    if not cfg.show_trivial:
        relations = [r for r in relations if not r.is_trivial()]

    mark = time.perf_counter()
    if cfg.threads > 1 and len(relations) > 1:
        relations = Parallel(n_jobs=cfg.threads, backend='threading')(
            delayed(classify)(r, catalog) for r in relations
        )
    else:
        relations = [classify(r, catalog) for r in relations]
    positions = {}
    for index, template in enumerate(catalog):
        positions.setdefault(template.id, index)
    relations.sort(key=lambda r: _sort_key(r, positions))
    timings['classification'] = time.perf_counter() - mark

    reports = [None] * len(relations)
    if cfg.verify:
        mark = time.perf_counter()
        reports = verify_all(
            relations, cfg.verify_n, cfg.verify_tol, cfg.prime, jobs=cfg.threads,
            euler_bound=lseries_setting('EULER_PRIME_BOUND') if cfg.euler_check else None,
            euler_tol=lseries_setting('EULER_TOL'),
            max_denominator=lseries_setting('CONSTANT_MAX_DENOMINATOR'),
        )
        timings['verification'] = time.perf_counter() - mark

    timings['total'] = time.perf_counter() - started
    for stage, seconds in timings.items():
        logger.info("%s took %.2fs", stage, seconds)
    return RunResult(cfg, found, relations, trivial, reports, dropped, timings)


def report_lines(result):
    """Relation lines of the report in the configured format."""
    fmt = result.config.fmt
    if fmt == 'json':
        payload = []
        for r, report in zip(result.relations, result.reports):
            item = relation_to_dict(r)
            item['verified'] = None if report is None else report.passed
            item['residual'] = None if report is None else report.residual
            payload.append(item)
        return [json.dumps(payload, indent=2, ensure_ascii=False)]
    lines = []
    for r, report in zip(result.relations, result.reports):
        line = render_line(r, fmt)
        if report is not None:
            line = f"{line} % {report.line()}" if fmt == 'latex' else f"{line}  {report.line()}"
        lines.append(line)
    return lines


def summary_table(result):
    """One-column table of run sizes and the per-category breakdown."""
    categories = [r.category for r in result.relations]
    rows = {
        'R-fractions': len(result.discovery.entries),
        'ζ anchors': len(result.discovery.anchors),
        'basis size': len(result.discovery.basis),
        'relations': len(result.relations),
        'trivial suppressed': 0 if result.config.show_trivial else result.trivial,
        'Known': categories.count('known'),
        'Unknown': categories.count('unknown'),
        'New': categories.count('new'),
    }
    if result.config.cross_check_prime:
        rows['dropped (cross-prime)'] = len(result.dropped)
    if result.config.verify:
        rows['verification failures'] = len(result.failed)
    return pd.DataFrame({'count': pd.Series(rows)})
