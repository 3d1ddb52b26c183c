"""
Django production settings for BundleCalc project.
"""
from .base import *

DEBUG = False

# Security settings
# The platform terminates HTTPS at the edge
SECURE_SSL_REDIRECT = False
SECURE_PROXY_SSL_HEADER = ('HTTP_X_FORWARDED_PROTO', 'https')
SECURE_HSTS_SECONDS = 31536000
SECURE_HSTS_INCLUDE_SUBDOMAINS = True
SECURE_CONTENT_TYPE_NOSNIFF = True
X_FRAME_OPTIONS = 'DENY'

# Allowed hosts from environment
ALLOWED_HOSTS = env.list('ALLOWED_HOSTS', default=['localhost'])

# Production runs stay quieter than development
LOGGING['loggers']['apps']['level'] = env('BUNDLECALC_LOG_LEVEL', default='INFO')
