"""
Write relation tables, base forms or curvature of a scenario's bundle as JSON.
"""
from django.core.management.base import BaseCommand

from apps.algebra.exceptions import BundleCalcError
from apps.scenarios.services.config import ScenarioConfig
from apps.scenarios.services.exports import EXPORT_KINDS, write_export

from ._options import CONFIGURATION_ERROR, add_config_arguments, fail


class Command(BaseCommand):
    help = 'Export relations, omegaM or curvature for a scenario bundle'

    def add_arguments(self, parser):
        parser.add_argument('kind', choices=EXPORT_KINDS)
        parser.add_argument('scenario')
        parser.add_argument('--output-file', help='Target path; defaults to BUNDLECALC_EXPORT_DIR')
        parser.add_argument('--degree', type=int, default=0, help='Form degree of the omegaM export')
        add_config_arguments(parser)

    def handle(self, *args, **options):
        try:
            config = ScenarioConfig.from_options(**options)
            path = write_export(options['kind'], config, options.get('output_file'))
        except (BundleCalcError, OSError) as exc:
            fail(self, str(exc), CONFIGURATION_ERROR)
        self.stdout.write(self.style.SUCCESS(f'Wrote {options["kind"]} export to {path}'))
