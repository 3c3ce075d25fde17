"""Settings lookups with defaults, for code that also runs without Django configured."""
from django.conf import settings
from django.core.exceptions import ImproperlyConfigured

DEFAULTS = {
    'HYBRIDSIM_STEP_LIMIT': 10**6,
    'HYBRIDSIM_WORKERS': 1,
    'HYBRIDSIM_DEFAULT_NOISE': (0.002, 0.02, 0.02),
    'HYBRIDSIM_GRID_SIZE': 2001,
    'HYBRIDSIM_HISTOGRAM_BINS': 100,
}


def get_setting(name):
    try:
        return getattr(settings, name, DEFAULTS[name])
    except ImproperlyConfigured:
        return DEFAULTS[name]
