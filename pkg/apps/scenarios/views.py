"""
Read-only API over the scenario registry and the verification suites.
"""
import logging

from rest_framework import status
from rest_framework.exceptions import NotFound
from rest_framework.response import Response
from rest_framework.views import APIView

from apps.algebra.exceptions import BundleCalcError, UnknownScenarioError
from apps.scenarios.serializers import QuantitySerializer, ScenarioQuerySerializer, SuiteQuerySerializer
from apps.scenarios.services.config import ScenarioConfig
from apps.scenarios.services.registry import SCENARIOS, available_scenarios, run_scenario
from apps.scenarios.services.reporter import ScenarioReporter, SuiteReporter
from apps.scenarios.services.suites import SUITES, run_suite

logger = logging.getLogger(__name__)


def _query(request) -> dict:
    data = request.query_params.dict()
    if 'lambda' in data:
        data['lam'] = data.pop('lambda')
    return data


class ScenarioListAPIView(APIView):
    """List the registered scenarios."""

    def get(self, request):
        return Response(available_scenarios())


class ScenarioDetailAPIView(APIView):
    """Run one scenario and return its report."""

    def get(self, request, scenario_id):
        if scenario_id not in SCENARIOS:
            raise NotFound(str(UnknownScenarioError(scenario_id)))
        serializer = ScenarioQuerySerializer(data=_query(request))
        serializer.is_valid(raise_exception=True)
        try:
            config = ScenarioConfig.from_options(scenario_id, **serializer.validated_data)
            result = run_scenario(config)
        except BundleCalcError as exc:
            logger.warning(f'Scenario {scenario_id} rejected: {exc}')
            return Response({'error': str(exc)}, status=status.HTTP_400_BAD_REQUEST)
        summary = ScenarioReporter(result).generate_summary()
        summary['quantities'] = QuantitySerializer(result.quantities, many=True).data
        return Response(summary)


class SuiteAPIView(APIView):
    """Run one verification suite and return its counts and failures."""

    def get(self, request, name):
        if name not in SUITES:
            raise NotFound(f'unknown suite {name!r}')
        serializer = SuiteQuerySerializer(data=_query(request))
        serializer.is_valid(raise_exception=True)
        try:
            config = ScenarioConfig.from_options(**serializer.validated_data)
            report = run_suite(name, config)
        except BundleCalcError as exc:
            logger.warning(f'Suite {name} rejected: {exc}')
            return Response({'error': str(exc)}, status=status.HTTP_400_BAD_REQUEST)
        return Response(SuiteReporter(name, report).generate_summary(include_checks=False))
