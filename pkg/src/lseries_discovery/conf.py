from django.conf import settings

DEFAULTS = {
    'PRIME': 997,
    'THREADS': 1,
    'VERIFY_N': 10 ** 6,
    'VERIFY_TOL': 1e-4,
    'EULER_PRIME_BOUND': 10 ** 4,
    'EULER_TOL': 1e-3,
    'PROBE_WINDOW_FACTOR': 4,
    'REP_CACHE_SIZE': 64,
    'SPOT_CHECKS': 10,
    'REPEATED_POLE_MARGIN': True,
    'CONSTANT_MAX_DENOMINATOR': 100,
    'CATALOGS': [],
    'CONJECTURE_CATALOG': None,
}


def lseries_setting(name):
    """Value of ``settings.LSERIES[name]``, falling back to the built-in default."""
    if name not in DEFAULTS:
        raise KeyError(f"unknown LSERIES setting {name!r}")
    return getattr(settings, 'LSERIES', {}).get(name, DEFAULTS[name])
