"""
Run a verification suite over the built-in packs.
"""
import logging

from django.core.management.base import BaseCommand

from apps.algebra.exceptions import BundleCalcError
from apps.scenarios.services.config import ScenarioConfig
from apps.scenarios.services.reporter import SuiteReporter
from apps.scenarios.services.suites import SUITES, run_suite

from ._options import CONFIGURATION_ERROR, VERIFICATION_FAILED, add_config_arguments, fail

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = 'Run the invariant batteries of one suite: axioms, calculus, graded, bundle, connection or all'

    def add_arguments(self, parser):
        parser.add_argument('--suite', choices=list(SUITES), default='all')
        add_config_arguments(parser)

    def handle(self, *args, **options):
        suite = options['suite']
        try:
            config = ScenarioConfig.from_options(**options)
            report = run_suite(suite, config)
        except BundleCalcError as exc:
            logger.error(f'Suite {suite} did not run: {exc}')
            fail(self, str(exc), CONFIGURATION_ERROR)
        self.stdout.write(SuiteReporter(suite, report).render(config.output), ending='')
        if not report.passed:
            fail(self, f'suite {suite}: {len(report.failures)} checks failed', VERIFICATION_FAILED)
