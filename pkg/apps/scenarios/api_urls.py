from django.urls import path
from . import views

urlpatterns = [
    path('scenarios/', views.ScenarioListAPIView.as_view(), name='api_scenario_list'),
    path('scenarios/<str:scenario_id>/', views.ScenarioDetailAPIView.as_view(), name='api_scenario_detail'),
    path('suites/<str:name>/', views.SuiteAPIView.as_view(), name='api_suite'),
]
