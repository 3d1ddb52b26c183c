"""
Django test settings for BundleCalc project.
"""
from .base import *

DEBUG = False

ALLOWED_HOSTS = ['testserver', 'localhost']

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': ':memory:',
    }
}

# Run tasks inline
CELERY_TASK_ALWAYS_EAGER = True
CELERY_TASK_EAGER_PROPAGATES = True
CELERY_BROKER_URL = 'memory://'
CELERY_RESULT_BACKEND = 'cache+memory://'

BUNDLECALC_MU_VALUE = ''
BUNDLECALC_QUOTIENT_MODE = 'envelope'
BUNDLECALC_PACK_DIRS = []

LOGGING['loggers']['apps']['level'] = 'WARNING'
