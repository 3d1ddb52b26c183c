"""
URL configuration for BundleCalc project.
"""
from django.urls import path, include
from django.http import JsonResponse


def health_check(request):
    """Health check endpoint."""
    return JsonResponse({'status': 'healthy'})


urlpatterns = [
    # Health check
    path('health/', health_check, name='health_check'),

    # API
    path('api/', include('apps.scenarios.api_urls')),
]
