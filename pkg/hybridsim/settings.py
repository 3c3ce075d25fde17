import os
import os.path

# Django settings for the hybridsim project.

PROJECT_PATH = os.path.dirname(os.path.abspath(__file__))

# env var is returned as a string
if os.environ.get('DJANGO_DEBUG', 'False') == 'True':
    DEBUG = True
else:
    DEBUG = False

ALLOWED_HOSTS = []

# No models anywhere; commands and tests run without a database.
DATABASES = {}

TIME_ZONE = 'UTC'
LANGUAGE_CODE = 'en-us'
USE_I18N = False
USE_TZ = True

# Only used by Django internals; nothing here is signed.
SECRET_KEY = os.environ.get('DJANGO_SECRET_KEY', 'hybridsim-local-key')

DEFAULT_AUTO_FIELD = 'django.db.models.AutoField'

INSTALLED_APPS = (
    # My apps
    'hybrid',
    'simulator',
    'algorithms',
    'estimation',
)

TEST_RUNNER = 'hybridsim.test_runner.HybridTestRunner'


# --- Simulator settings ---

# Instruction budget per shot; guards against programs that never return.
HYBRIDSIM_STEP_LIMIT = int(os.environ.get('HYBRIDSIM_STEP_LIMIT', 10**6))

# Worker processes used by run_shots when a command doesn't say otherwise.
HYBRIDSIM_WORKERS = int(os.environ.get('HYBRIDSIM_WORKERS', 1))

# (p_gate1, p_gate2, p_readout) used by --noise default.
HYBRIDSIM_DEFAULT_NOISE = (0.002, 0.02, 0.02)

# Posterior grid and histogram defaults.
HYBRIDSIM_GRID_SIZE = 2001
HYBRIDSIM_HISTOGRAM_BINS = 100


# --- Logging ---

LOG_LEVEL = os.environ.get('HYBRIDSIM_LOG_LEVEL', 'INFO')
LOG_FILE = os.environ.get('HYBRIDSIM_LOG_FILE')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'simple': {
            'format': '%(levelname)s %(name)s: %(message)s',
        },
        'verbose': {
            'format': '%(asctime)s %(levelname)s %(name)s %(process)d: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'level': 'DEBUG',
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
    },
    'loggers': {
        app: {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        }
        for app in ('hybrid', 'simulator', 'algorithms', 'estimation')
    },
}

if LOG_FILE:
    LOGGING['handlers']['file'] = {
        'level': 'DEBUG',
        'class': 'logging.FileHandler',
        'filename': LOG_FILE,
        'formatter': 'verbose',
    }
    for logger in LOGGING['loggers'].values():
        logger['handlers'].append('file')
