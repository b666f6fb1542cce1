"""
Django settings for the lseries_discovery project.

The project has no database, URLs or middleware: it exists to host the
discovery apps and their management commands. Everything tunable lives in
the LSERIES dict below; each key can be overridden from the environment.
"""
import os
from pathlib import Path

BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = os.environ.get('DJANGO_SECRET_KEY', 'lseries-discovery-local')

DEBUG = os.environ.get('DJANGO_DEBUG', 'False') == 'True'

ALLOWED_HOSTS = []

INSTALLED_APPS = [
    'lseries_discovery',
    'ffpoly',
    'pseudolinear',
    'funclib',
    'generator',
    'sieve',
    'relations',
    'verifier',
]

DATABASES = {}

USE_TZ = True


def _env_list(name, default):
    value = os.environ.get(name)
    return [item for item in value.split(os.pathsep) if item] if value else default


LSERIES = {
    'PRIME': int(os.environ.get('LSERIES_PRIME', 997)),
    'THREADS': int(os.environ.get('LSERIES_THREADS', os.cpu_count() or 1)),
    'VERIFY_N': int(os.environ.get('LSERIES_VERIFY_N', 10 ** 6)),
    'VERIFY_TOL': float(os.environ.get('LSERIES_VERIFY_TOL', 1e-4)),
    'EULER_PRIME_BOUND': int(os.environ.get('LSERIES_EULER_PRIME_BOUND', 10 ** 4)),
    'EULER_TOL': float(os.environ.get('LSERIES_EULER_TOL', 1e-3)),
    'PROBE_WINDOW_FACTOR': int(os.environ.get('LSERIES_PROBE_WINDOW_FACTOR', 4)),
    'REP_CACHE_SIZE': int(os.environ.get('LSERIES_REP_CACHE_SIZE', 64)),
    'SPOT_CHECKS': int(os.environ.get('LSERIES_SPOT_CHECKS', 10)),
    'REPEATED_POLE_MARGIN': os.environ.get('LSERIES_REPEATED_POLE_MARGIN', 'True') == 'True',
    'CONSTANT_MAX_DENOMINATOR': int(os.environ.get('LSERIES_CONSTANT_MAX_DENOMINATOR', 100)),
    'CATALOGS': _env_list('LSERIES_CATALOGS', [str(BASE_DIR / 'relations' / 'fixtures' / 'known.json')]),
    'CONJECTURE_CATALOG': os.environ.get(
        'LSERIES_CONJECTURE_CATALOG', str(BASE_DIR / 'relations' / 'fixtures' / 'conjectures.json'),
    ),
}

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {'format': '%(levelname)s %(name)s: %(message)s'},
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'plain',
        },
    },
    'loggers': {
        app: {
            'handlers': ['console'],
            'level': os.environ.get('LSERIES_LOG_LEVEL', 'WARNING'),
            'propagate': True,
        }
        for app in INSTALLED_APPS
    },
}
