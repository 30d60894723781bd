"""
Django settings for the hullcert project.

Every numerical default lives in ``core.constants``; the values below only
override them from the environment (or an optional ``.env`` file) and are
resolved by the management commands, never by the geometry modules.
"""

from pathlib import Path
import environ
import os

from core.constants import (
    DEFAULT_TOLERANCE,
    DEMO_SAMPLES,
    DEMO_VERTICES,
    DENOMINATOR_LIMIT,
    RETRY_LIMIT,
    SHRINK_LIMIT,
)

# Initialize environment variables
env = environ.Env(
    DEBUG=(bool, False),
    SECRET_KEY=(str, ''),
    HULLCERT_MODE=(str, 'rational'),
    HULLCERT_TOLERANCE=(float, DEFAULT_TOLERANCE),
    HULLCERT_RETRY_LIMIT=(int, RETRY_LIMIT),
    HULLCERT_SHRINK_LIMIT=(int, SHRINK_LIMIT),
    HULLCERT_RECORD_RUNS=(bool, False),
    HULLCERT_DEMO_N=(int, DEMO_VERTICES),
    HULLCERT_DEMO_M=(int, DEMO_SAMPLES),
    HULLCERT_DENOMINATOR_LIMIT=(int, DENOMINATOR_LIMIT),
    CELERY_TASK_ALWAYS_EAGER=(bool, True),
)

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Read .env file if it exists
env_file = os.path.join(BASE_DIR, '.env')
if os.path.exists(env_file):
    environ.Env.read_env(env_file)

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = env('SECRET_KEY', default='django-insecure-hullcert-local-runs-only')

DEBUG = env('DEBUG')

ALLOWED_HOSTS = []

# Application definition
INSTALLED_APPS = [
    'django.contrib.auth',
    'django.contrib.contenttypes',

    # Third party apps
    'rest_framework',

    # Local apps
    'core',
]

# Database configuration: the run ledger only
DATABASES = {
    'default': env.db('DATABASE_URL', default=f"sqlite:///{BASE_DIR / 'db.sqlite3'}"),
}

# Internationalization
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = True
USE_TZ = True

# Geometry run configuration
HULLCERT = {
    'MODE': env('HULLCERT_MODE'),
    'TOLERANCE': env('HULLCERT_TOLERANCE'),
    'RETRY_LIMIT': env('HULLCERT_RETRY_LIMIT'),
    'SHRINK_LIMIT': env('HULLCERT_SHRINK_LIMIT'),
    'OUTPUT_DIR': env('HULLCERT_OUTPUT_DIR', default=str(BASE_DIR / 'artifacts')),
    'RECORD_RUNS': env('HULLCERT_RECORD_RUNS'),
    'DEMO_N': env('HULLCERT_DEMO_N'),
    'DEMO_M': env('HULLCERT_DEMO_M'),
    'DENOMINATOR_LIMIT': env('HULLCERT_DENOMINATOR_LIMIT'),
}

# Celery configuration
REDIS_URL = env('REDIS_URL', default='redis://localhost:6379/0')
CELERY_BROKER_URL = REDIS_URL
CELERY_RESULT_BACKEND = REDIS_URL
CELERY_ACCEPT_CONTENT = ['json']
CELERY_TASK_SERIALIZER = 'json'
CELERY_RESULT_SERIALIZER = 'json'
CELERY_TIMEZONE = TIME_ZONE
CELERY_TASK_TRACK_STARTED = True
CELERY_TASK_TIME_LIMIT = 30 * 60
CELERY_WORKER_PREFETCH_MULTIPLIER = 1
# Local runs and tests execute demo rows in-process
CELERY_TASK_ALWAYS_EAGER = env('CELERY_TASK_ALWAYS_EAGER')
CELERY_TASK_EAGER_PROPAGATES = True

# Logging configuration
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {process:d} {thread:d} {message}',
            'style': '{',
        },
        'simple': {
            'format': '{levelname} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
        'file': {
            'class': 'logging.FileHandler',
            'filename': BASE_DIR / 'logs' / 'hullcert.log',
            'formatter': 'verbose',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': env('LOG_LEVEL', default='INFO'),
    },
    'loggers': {
        'django': {
            'handlers': ['console', 'file'] if not DEBUG else ['console'],
            'level': env('LOG_LEVEL', default='INFO'),
            'propagate': False,
        },
        'core': {
            'handlers': ['console', 'file'] if not DEBUG else ['console'],
            'level': 'DEBUG',
            'propagate': False,
        },
    },
}

# Create logs directory
os.makedirs(BASE_DIR / 'logs', exist_ok=True)

# Default primary key field type
DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'
