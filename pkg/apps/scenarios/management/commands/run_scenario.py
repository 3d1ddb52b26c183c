"""
Run a scenario and print every computed quantity next to its target.
"""
import logging

from django.core.management.base import BaseCommand

from apps.algebra.exceptions import BundleCalcError
from apps.scenarios.services.config import ScenarioConfig
from apps.scenarios.services.registry import run_scenario
from apps.scenarios.services.reporter import ScenarioReporter

from ._options import CONFIGURATION_ERROR, VERIFICATION_FAILED, add_config_arguments, fail

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = 'Run a scenario (hopf-3d, hopf-4dplus, hopf-classical, line-bundle, trivial-default, ...)'

    def add_arguments(self, parser):
        parser.add_argument('scenario')
        add_config_arguments(parser)

    def handle(self, *args, **options):
        try:
            config = ScenarioConfig.from_options(**options)
            result = run_scenario(config)
        except BundleCalcError as exc:
            logger.error(f'Scenario {options["scenario"]} did not run: {exc}')
            fail(self, str(exc), CONFIGURATION_ERROR)
        self.stdout.write(ScenarioReporter(result).render(config.output), ending='')
        if not result.passed:
            fail(self, f'scenario {config.scenario} failed', VERIFICATION_FAILED)
